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

#ifndef PPGEDIT_PPG_IO_H_
#define PPGEDIT_PPG_IO_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "ppgedit/ppg.h"

namespace ppgedit {

// Binary layout, all integers and floats little-endian:
//   "PPG1" | u32 version=1 | u32 T | u32 P | f64 frame_period |
//   P x (u32 byte length, UTF-8 label) | T*P f32 row-major values.
// Values are stored as f32, so writing narrows to single precision.
inline constexpr char kPpgMagic[4] = {'P', 'P', 'G', '1'};
inline constexpr std::uint32_t kPpgVersion = 1;

void write_ppg_binary(const Ppg& ppg, std::ostream& os);
Ppg read_ppg_binary(std::istream& is);

// CSV: header row of phoneme labels, then one row of probabilities per
// frame. The frame period is not part of the CSV and is supplied by the
// caller. Doubles are written in shortest round-trip form.
void write_ppg_csv(const Ppg& ppg, std::ostream& os);
Ppg read_ppg_csv(std::istream& is, double frame_period = kDefaultFramePeriod);

enum class PpgFormat { kBinary, kCsv };

// Picks the format from the leading magic bytes; both readers validate.
Ppg load_ppg(const std::filesystem::path& path,
             double csv_frame_period = kDefaultFramePeriod);
void save_ppg(const Ppg& ppg, const std::filesystem::path& path, PpgFormat format);
// Binary for ".ppg"/".bin", CSV otherwise.
PpgFormat format_for_path(const std::filesystem::path& path);

// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace ppgedit

#endif  // PPGEDIT_PPG_IO_H_
