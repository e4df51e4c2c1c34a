// Copyright 2026 The ppgedit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPGEDIT_PPG_H_
#define PPGEDIT_PPG_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppgedit/error.h"
#include "ppgedit/matrix.h"

namespace ppgedit {

inline constexpr double kRowSumTolerance = 1e-4;
inline constexpr double kDefaultFramePeriod = 0.01;

// Ordered, duplicate-free list of phoneme symbols. The column order of a
// PPG follows the inventory order.
class PhonemeInventory {
 public:
  PhonemeInventory() = default;
  // Throws kInvalidInventory on empty or duplicate labels.
  explicit PhonemeInventory(std::vector<std::string> labels);

  // 29 Finnish phoneme symbols followed by SPN, SIL and eps.
  static PhonemeInventory finnish();

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }

  std::optional<std::size_t> find(std::string_view label) const;
  // Throws kUnknownPhoneme.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }

  friend bool operator==(const PhonemeInventory&, const PhonemeInventory&) = default;

 private:
  std::vector<std::string> labels_;
};

struct Violation {
  ErrorCode kind;
  std::size_t row = 0;
  std::size_t col = 0;  // meaningful for entry-level violations only
  double value = 0.0;   // offending entry or row sum

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ErrorCode kind) const;
  std::string to_string() const;
};

// Thrown when a PPG fails validation; carries the full report.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

// Phonetic posteriorgram: T frames by P phonemes, each row a categorical
// distribution over the inventory. Instances are always valid.
class Ppg {
 public:
  enum class Renormalize { kNo, kYes };

  // Validates (optionally dividing each row by its sum first) and throws
  // ValidationError when any invariant fails.
  static Ppg create(Matrix matrix, PhonemeInventory inventory,
                    double frame_period = kDefaultFramePeriod,
                    Renormalize renormalize = Renormalize::kNo);

  std::size_t num_frames() const { return matrix_.rows(); }
  std::size_t num_phonemes() const { return matrix_.cols(); }
  double frame_period() const { return frame_period_; }
  double duration() const { return frame_period_ * num_frames(); }

  const Matrix& matrix() const { return matrix_; }
  const PhonemeInventory& inventory() const { return inventory_; }
  std::span<const double> frame(std::size_t t) const { return matrix_.row(t); }
  double operator()(std::size_t t, std::size_t p) const { return matrix_(t, p); }

  // Frames [begin, end) as a PPG over the same inventory.
  Ppg slice(std::size_t begin, std::size_t end) const;

  friend bool operator==(const Ppg&, const Ppg&) = default;

 private:
  Ppg(Matrix matrix, PhonemeInventory inventory, double frame_period)
      : matrix_(std::move(matrix)),
        inventory_(std::move(inventory)),
        frame_period_(frame_period) {}

  Matrix matrix_;
  PhonemeInventory inventory_;
  double frame_period_ = kDefaultFramePeriod;
};

struct ValidatedPpg {
  std::optional<Ppg> ppg;
  ValidationReport report;
};

// Checks every invariant and reports each violated row or entry.
ValidatedPpg validate_ppg(const Matrix& matrix, const PhonemeInventory& inventory,
                          double frame_period = kDefaultFramePeriod);

// Maximal run of frames sharing the same argmax label; [start, end).
struct Segment {
  std::size_t label = 0;  // inventory index
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

// Argmax over a frame; ties go to the lowest index.
std::size_t argmax(std::span<const double> frame);

std::vector<std::size_t> argmax_labels(const Ppg& ppg);

// Run-length merge of the per-frame argmax labels. Covers [0, T).
std::vector<Segment> argmax_segments(const Ppg& ppg);
std::vector<Segment> run_length_segments(const std::vector<std::size_t>& labels);

// Output row i copies input row floor((i + 0.5) * N / M), clamped to N - 1.
Matrix upsample_nearest(const Matrix& seq, std::size_t target_len);
std::size_t nearest_source_index(std::size_t i, std::size_t source_len,
                                 std::size_t target_len);

}  // namespace ppgedit

#endif  // PPGEDIT_PPG_H_
