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

#include "ppgedit/flowmatch/guidance.h"

#include <string>

#include "ppgedit/error.h"
#include "ppgedit/flowmatch/schedule.h"

namespace ppgedit::flowmatch {

void GuidanceConfig::validate() const {
  if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "guidance strength must be >= 0");
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "need at least one sampling step");
  if (!(s >= kSwayMin && s <= kSwayMax))
    throw Error(ErrorCode::kCoefficientOutOfRange, "sway coefficient out of range");
}

std::vector<double> cfg_field(std::span<const double> v_cond,
                              std::span<const double> v_uncond, double w) {
  if (v_cond.size() != v_uncond.size())
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(v_cond.size()) + " vs " + std::to_string(v_uncond.size()));
  if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "guidance strength must be >= 0");
  std::vector<double> out(v_cond.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = v_cond[i] + w * (v_cond[i] - v_uncond[i]);
  return out;
}

}  // namespace ppgedit::flowmatch
