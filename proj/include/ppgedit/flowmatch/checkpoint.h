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

#ifndef PPGEDIT_FLOWMATCH_CHECKPOINT_H_
#define PPGEDIT_FLOWMATCH_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "ppgedit/flowmatch/mlp.h"

namespace ppgedit::flowmatch {

// Little-endian layout:
//   "VFM1" | u32 version | u32 data_dim | u32 num_classes | u32 cond_dim |
//   u32 time_frequencies | u32 activation | u32 H | H x u32 hidden width |
//   u64 parameter count | f32 parameters (flat order of Mlp::parameters()).
// Parameters are narrowed to f32; a loaded model holds the rounded values.
inline constexpr char kCheckpointMagic[4] = {'V', 'F', 'M', '1'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const Mlp& model, std::ostream& os);
// Throws kParseError on a bad header and kCheckpointVersionMismatch on an
// unknown version.
Mlp load_checkpoint(std::istream& is);

void save_checkpoint(const Mlp& model, const std::filesystem::path& path);
Mlp load_checkpoint(const std::filesystem::path& path);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_CHECKPOINT_H_
