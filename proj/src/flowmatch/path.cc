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

#include "ppgedit/flowmatch/path.h"

#include <string>

#include "ppgedit/error.h"

namespace ppgedit::flowmatch {
namespace {

void check_dims(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

}  // namespace

std::vector<double> ot_interpolate(std::span<const double> x0, std::span<const double> x1,
                                   double t) {
  check_dims(x0, x1);
  if (!(t >= 0.0 && t <= 1.0))
    throw Error(ErrorCode::kInvalidParameter, "t must lie in [0, 1]");
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t * x1[i] + (1.0 - t) * x0[i];
  return out;
}

std::vector<double> ot_target(std::span<const double> x0, std::span<const double> x1) {
  check_dims(x0, x1);
  std::vector<double> out(x0.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x0[i] - x1[i];
  return out;
}

}  // namespace ppgedit::flowmatch
