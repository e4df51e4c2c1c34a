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

#include "ppgedit/ppg.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace ppgedit {

PhonemeInventory::PhonemeInventory(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty())
    throw Error(ErrorCode::kInvalidInventory, "inventory has no labels");
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (label.empty())
      throw Error(ErrorCode::kInvalidInventory, "empty phoneme label");
    if (!seen.insert(label).second)
      throw Error(ErrorCode::kInvalidInventory, "duplicate phoneme label '" + label + "'");
  }
}

PhonemeInventory PhonemeInventory::finnish() {
  return PhonemeInventory({
      "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k",
      "l", "m", "n", "ng", "o", "p", "q", "r", "s", "t", "u",
      "v", "w", "x", "y", "z", "ä", "ö",
      "SPN", "SIL", "eps",
  });
}

std::optional<std::size_t> PhonemeInventory::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t PhonemeInventory::index_of(std::string_view label) const {
  if (auto idx = find(label)) return *idx;
  throw Error(ErrorCode::kUnknownPhoneme,
              "phoneme '" + std::string(label) + "' not in inventory");
}

bool ValidationReport::has(ErrorCode kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  os.precision(9);
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    if (i) os << "; ";
    os << error_code_name(v.kind);
    switch (v.kind) {
      case ErrorCode::kNonStochasticRow:
        os << " at row " << v.row << " (sum " << v.value << ")";
        break;
      case ErrorCode::kNegativeEntry:
      case ErrorCode::kNonFiniteEntry:
        os << " at (" << v.row << ", " << v.col << ") = " << v.value;
        break;
      case ErrorCode::kDimensionMismatch:
        os << " (matrix has " << v.col << " columns, inventory " << v.value << ")";
        break;
      default:
        break;
    }
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error(report.violations.empty() ? ErrorCode::kParseError
                                      : report.violations.front().kind,
            report.to_string()),
      report_(std::move(report)) {}

namespace {

ValidationReport check_matrix(const Matrix& matrix, std::size_t inventory_size,
                              double frame_period) {
  ValidationReport report;
  auto& violations = report.violations;
  if (matrix.rows() == 0 || matrix.cols() == 0) {
    violations.push_back({ErrorCode::kEmptyMatrix});
    return report;
  }
  if (matrix.cols() != inventory_size)
    violations.push_back({ErrorCode::kDimensionMismatch, 0, matrix.cols(),
                          static_cast<double>(inventory_size)});
  if (!(frame_period > 0.0) || !std::isfinite(frame_period))
    violations.push_back({ErrorCode::kInvalidParameter, 0, 0, frame_period});
  for (std::size_t t = 0; t < matrix.rows(); ++t) {
    double sum = 0.0;
    bool finite = true;
    for (std::size_t p = 0; p < matrix.cols(); ++p) {
      const double v = matrix(t, p);
      if (!std::isfinite(v)) {
        violations.push_back({ErrorCode::kNonFiniteEntry, t, p, v});
        finite = false;
      } else if (v < 0.0) {
        violations.push_back({ErrorCode::kNegativeEntry, t, p, v});
      }
      sum += v;
    }
    if (finite && std::abs(sum - 1.0) > kRowSumTolerance)
      violations.push_back({ErrorCode::kNonStochasticRow, t, 0, sum});
  }
  return report;
}

}  // namespace

ValidatedPpg validate_ppg(const Matrix& matrix, const PhonemeInventory& inventory,
                          double frame_period) {
  ValidatedPpg out;
  out.report = check_matrix(matrix, inventory.size(), frame_period);
  if (out.report.ok()) out.ppg = Ppg::create(matrix, inventory, frame_period);
  return out;
}

Ppg Ppg::create(Matrix matrix, PhonemeInventory inventory, double frame_period,
                Renormalize renormalize) {
  if (renormalize == Renormalize::kYes) {
    for (std::size_t t = 0; t < matrix.rows(); ++t) {
      auto row = matrix.row(t);
      double sum = 0.0;
      for (double v : row) sum += v;
      if (sum > 0.0 && std::isfinite(sum))
        for (double& v : row) v /= sum;
    }
  }
  auto report = check_matrix(matrix, inventory.size(), frame_period);
  if (!report.ok()) throw ValidationError(std::move(report));
  return Ppg(std::move(matrix), std::move(inventory), frame_period);
}

Ppg Ppg::slice(std::size_t begin, std::size_t end) const {
  if (begin >= end)
    throw Error(ErrorCode::kEmptyRegion, "empty frame slice");
  return Ppg(matrix_.slice_rows(begin, end), inventory_, frame_period_);
}

std::size_t argmax(std::span<const double> frame) {
  std::size_t best = 0;
  for (std::size_t p = 1; p < frame.size(); ++p)
    if (frame[p] > frame[best]) best = p;
  return best;
}

std::vector<std::size_t> argmax_labels(const Ppg& ppg) {
  std::vector<std::size_t> labels(ppg.num_frames());
  for (std::size_t t = 0; t < labels.size(); ++t) labels[t] = argmax(ppg.frame(t));
  return labels;
}

std::vector<Segment> run_length_segments(const std::vector<std::size_t>& labels) {
  std::vector<Segment> segments;
  for (std::size_t t = 0; t < labels.size(); ++t) {
    if (!segments.empty() && segments.back().label == labels[t]) {
      segments.back().end = t + 1;
    } else {
      segments.push_back({labels[t], t, t + 1});
    }
  }
  return segments;
}

std::vector<Segment> argmax_segments(const Ppg& ppg) {
  return run_length_segments(argmax_labels(ppg));
}

std::size_t nearest_source_index(std::size_t i, std::size_t source_len,
                                 std::size_t target_len) {
  // floor((i + 0.5) * N / M) in exact integer arithmetic.
  const std::size_t idx = ((2 * i + 1) * source_len) / (2 * target_len);
  return std::min(idx, source_len - 1);
}

Matrix upsample_nearest(const Matrix& seq, std::size_t target_len) {
  if (seq.rows() == 0)
    throw Error(ErrorCode::kEmptyInput, "cannot upsample an empty sequence");
  if (target_len == 0)
    throw Error(ErrorCode::kEmptyInput, "target length must be positive");
  Matrix out(target_len, seq.cols());
  for (std::size_t i = 0; i < target_len; ++i) {
    const auto src = seq.row(nearest_source_index(i, seq.rows(), target_len));
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace ppgedit
