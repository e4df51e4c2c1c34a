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

#ifndef PPGEDIT_EDIT_H_
#define PPGEDIT_EDIT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ppgedit/ppg.h"

namespace ppgedit {

// Half-open frame interval [start, end).
struct FrameRegion {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool empty() const { return end <= start; }
  friend bool operator==(const FrameRegion&, const FrameRegion&) = default;
};

// Source phoneme -> substitutions commonly produced by L2 speakers.
class EditTable {
 public:
  using Rules = std::map<std::string, std::vector<std::string>>;

  EditTable() = default;
  // Throws kInvalidEditTable on empty target lists or self-mappings.
  explicit EditTable(Rules rules);

  // ä->{a,e}, ö->{o}, y->{u,e}, r->{l,w}, a->{ä}, o->{ö}
  static EditTable finnish_l2();

  const Rules& rules() const { return rules_; }
  bool has_source(const std::string& label) const { return rules_.contains(label); }
  const std::vector<std::string>& targets(const std::string& source) const;

  // Throws kInvalidEditTable naming the first symbol missing from `inventory`.
  void check_against(const PhonemeInventory& inventory) const;

  std::string to_json() const;
  static EditTable from_json(const std::string& text);

  friend bool operator==(const EditTable&, const EditTable&) = default;

 private:
  Rules rules_;
};

struct EditRecord {
  std::string source;
  std::string target;
  FrameRegion region;
  std::uint64_t seed = 0;
  std::size_t segment_index = 0;

  std::string to_json() const;
  static EditRecord from_json(const std::string& text);

  friend bool operator==(const EditRecord&, const EditRecord&) = default;
};

// Moves all probability mass of `source` onto `target` inside `region`.
Ppg replace_phoneme_mass(const Ppg& ppg, FrameRegion region, const std::string& source,
                         const std::string& target);

// Picks one editable argmax run uniformly, then one of its targets uniformly.
// The region is the whole run, so long vowels are edited as a unit.
EditRecord select_random_edit(const Ppg& ppg, const EditTable& table, std::uint64_t seed);

struct EditResult {
  Ppg ppg;
  FrameRegion region;
};

EditResult apply_edit(const Ppg& ppg, const EditRecord& record);

EditTable load_edit_table(const std::filesystem::path& path);
EditRecord load_edit_record(const std::filesystem::path& path);
void save_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace ppgedit

#endif  // PPGEDIT_EDIT_H_
