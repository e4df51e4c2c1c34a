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

#ifndef PPGEDIT_FLOWMATCH_GUIDANCE_H_
#define PPGEDIT_FLOWMATCH_GUIDANCE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace ppgedit::flowmatch {

struct GuidanceConfig {
  double w = 3.0;      // guidance strength
  double s = -1.0;     // sway coefficient
  std::size_t n = 32;  // sampling steps

  // Throws kInvalidParameter / kCoefficientOutOfRange.
  void validate() const;
};

// v_cond + w * (v_cond - v_uncond).
std::vector<double> cfg_field(std::span<const double> v_cond,
                              std::span<const double> v_uncond, double w);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_GUIDANCE_H_
