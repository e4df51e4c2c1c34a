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

#ifndef PPGEDIT_FLOWMATCH_SAMPLER_H_
#define PPGEDIT_FLOWMATCH_SAMPLER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ppgedit/flowmatch/schedule.h"
#include "ppgedit/flowmatch/vector_field.h"

namespace ppgedit::flowmatch {

// Explicit Euler from t = 1 to t = 0:
//   x <- x + (t_i - t_{i+1}) * v(x, t_i, c)
// with the field taken at the left endpoint t_i. When w > 0 and a
// condition is given, v is the guided field v_c + w (v_c - v_null), with
// both branches evaluated at the same state.
RowMatrix euler_sample_batch(const VectorField& field, const SamplerSchedule& schedule,
                             RowMatrix x_init, std::span<const Condition> conditions,
                             double w);

std::vector<double> euler_sample(const VectorField& field, const SamplerSchedule& schedule,
                                 std::span<const double> x_init, Condition condition,
                                 double w);

// Draws x_init ~ N(0, I) for each condition from `seed`, then integrates.
RowMatrix sample_from_prior(const VectorField& field, const SamplerSchedule& schedule,
                            std::span<const Condition> conditions, double w,
                            std::uint64_t seed);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_SAMPLER_H_
