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

#include "ppgedit/edit.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ppgedit/random.h"

namespace ppgedit {

using nlohmann::json;
using nlohmann::ordered_json;

EditTable::EditTable(Rules rules) : rules_(std::move(rules)) {
  for (const auto& [source, targets] : rules_) {
    if (source.empty())
      throw Error(ErrorCode::kInvalidEditTable, "empty source symbol");
    if (targets.empty())
      throw Error(ErrorCode::kInvalidEditTable, "source '" + source + "' has no targets");
    for (const auto& target : targets)
      if (target == source)
        throw Error(ErrorCode::kInvalidEditTable, "rule maps '" + source + "' to itself");
  }
}

EditTable EditTable::finnish_l2() {
  return EditTable({
      {"ä", {"a", "e"}},
      {"ö", {"o"}},
      {"y", {"u", "e"}},
      {"r", {"l", "w"}},
      {"a", {"ä"}},
      {"o", {"ö"}},
  });
}

const std::vector<std::string>& EditTable::targets(const std::string& source) const {
  auto it = rules_.find(source);
  if (it == rules_.end())
    throw Error(ErrorCode::kUnknownPhoneme, "'" + source + "' is not an edit source");
  return it->second;
}

void EditTable::check_against(const PhonemeInventory& inventory) const {
  for (const auto& [source, targets] : rules_) {
    if (!inventory.contains(source))
      throw Error(ErrorCode::kInvalidEditTable,
                  "source '" + source + "' not in phoneme inventory");
    for (const auto& target : targets)
      if (!inventory.contains(target))
        throw Error(ErrorCode::kInvalidEditTable,
                    "target '" + target + "' not in phoneme inventory");
  }
}

std::string EditTable::to_json() const {
  json j = json::object();
  for (const auto& [source, targets] : rules_) j[source] = targets;
  return j.dump(2) + "\n";
}

EditTable EditTable::from_json(const std::string& text) {
  Rules rules;
  try {
    const json j = json::parse(text);
    if (!j.is_object())
      throw Error(ErrorCode::kParseError, "edit table must be a JSON object");
    for (const auto& [source, targets] : j.items()) {
      if (!targets.is_array())
        throw Error(ErrorCode::kParseError, "targets of '" + source + "' must be an array");
      rules[source] = targets.get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("edit table: ") + e.what());
  }
  return EditTable(std::move(rules));
}

std::string EditRecord::to_json() const {
  ordered_json j;
  j["source"] = source;
  j["target"] = target;
  j["region"] = {{"start", region.start}, {"end", region.end}};
  j["seed"] = seed;
  j["segment_index"] = segment_index;
  return j.dump(2) + "\n";
}

EditRecord EditRecord::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    EditRecord r;
    r.source = j.at("source").get<std::string>();
    r.target = j.at("target").get<std::string>();
    r.region.start = j.at("region").at("start").get<std::size_t>();
    r.region.end = j.at("region").at("end").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.segment_index = j.at("segment_index").get<std::size_t>();
    if (r.region.empty())
      throw Error(ErrorCode::kParseError, "edit record: region must be non-empty");
    if (r.source == r.target)
      throw Error(ErrorCode::kParseError, "edit record: source and target coincide");
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("edit record: ") + e.what());
  }
}

Ppg replace_phoneme_mass(const Ppg& ppg, FrameRegion region, const std::string& source,
                         const std::string& target) {
  if (region.empty() || region.end > ppg.num_frames())
    throw Error(ErrorCode::kOutOfBounds,
                "region [" + std::to_string(region.start) + ", " +
                    std::to_string(region.end) + ") invalid for " +
                    std::to_string(ppg.num_frames()) + " frames");
  const std::size_t src = ppg.inventory().index_of(source);
  const std::size_t tgt = ppg.inventory().index_of(target);
  if (src == tgt)
    throw Error(ErrorCode::kSameSourceTarget, "source and target are both '" + source + "'");

  Matrix edited = ppg.matrix();
  for (std::size_t t = region.start; t < region.end; ++t) {
    edited(t, tgt) += edited(t, src);
    edited(t, src) = 0.0;
  }
  return Ppg::create(std::move(edited), ppg.inventory(), ppg.frame_period());
}

EditRecord select_random_edit(const Ppg& ppg, const EditTable& table, std::uint64_t seed) {
  table.check_against(ppg.inventory());
  const auto segments = argmax_segments(ppg);
  std::vector<std::size_t> editable;
  for (std::size_t i = 0; i < segments.size(); ++i)
    if (table.has_source(ppg.inventory().label(segments[i].label))) editable.push_back(i);

  if (editable.empty()) {
    std::string sources;
    for (const auto& [source, _] : table.rules())
      sources += (sources.empty() ? "" : ", ") + source;
    throw Error(ErrorCode::kNoEditablePhoneme,
                "no argmax segment is labelled with an edit source (" + sources + ")");
  }

  Rng rng(seed);
  const std::size_t segment_index = editable[rng.uniform_index(editable.size())];
  const Segment& segment = segments[segment_index];
  const std::string& source = ppg.inventory().label(segment.label);
  const auto& targets = table.targets(source);
  const std::string& target = targets[rng.uniform_index(targets.size())];

  return EditRecord{source, target, {segment.start, segment.end}, seed, segment_index};
}

EditResult apply_edit(const Ppg& ppg, const EditRecord& record) {
  return {replace_phoneme_mass(ppg, record.region, record.source, record.target),
          record.region};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

EditTable load_edit_table(const std::filesystem::path& path) {
  return EditTable::from_json(read_text(path));
}

EditRecord load_edit_record(const std::filesystem::path& path) {
  return EditRecord::from_json(read_text(path));
}

}  // namespace ppgedit
