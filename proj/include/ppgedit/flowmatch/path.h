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

#ifndef PPGEDIT_FLOWMATCH_PATH_H_
#define PPGEDIT_FLOWMATCH_PATH_H_

#include <span>
#include <vector>

namespace ppgedit::flowmatch {

// Time convention used throughout the flow-matching code: t = 1 is the
// Gaussian prior (noise, x1) and t = 0 is the data (x0). Sampling therefore
// integrates from t = 1 down to t = 0. Most reference implementations use
// the opposite orientation.

// t * x1 + (1 - t) * x0.
std::vector<double> ot_interpolate(std::span<const double> x0, std::span<const double> x1,
                                   double t);

// Regression target of the OT path, x0 - x1. It is the negated time
// derivative of ot_interpolate.
std::vector<double> ot_target(std::span<const double> x0, std::span<const double> x1);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_PATH_H_
