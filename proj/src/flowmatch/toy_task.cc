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

#include "ppgedit/flowmatch/toy_task.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "ppgedit/error.h"

namespace ppgedit::flowmatch {

GaussianRingTask::GaussianRingTask(std::size_t modes, double radius, double stddev)
    : modes_(modes), radius_(radius), stddev_(stddev) {
  if (modes == 0 || !(radius > 0.0) || !(stddev >= 0.0))
    throw Error(ErrorCode::kInvalidParameter, "invalid ring task parameters");
}

std::array<double, 2> GaussianRingTask::centre(std::size_t mode) const {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mode) /
                       static_cast<double>(modes_);
  return {radius_ * std::cos(angle), radius_ * std::sin(angle)};
}

CfmBatch GaussianRingTask::sample(std::size_t batch, Rng& rng) const {
  CfmBatch out;
  out.x0.resize(static_cast<Eigen::Index>(batch), 2);
  out.conditions.resize(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    const std::size_t mode = rng.uniform_index(modes_);
    const auto c = centre(mode);
    out.conditions[b] = static_cast<int>(mode);
    out.x0(b, 0) = c[0] + stddev_ * rng.normal();
    out.x0(b, 1) = c[1] + stddev_ * rng.normal();
  }
  return out;
}

int GaussianRingTask::classify(std::span<const double> x) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < modes_; ++m) {
    const auto c = centre(m);
    const double d2 = (x[0] - c[0]) * (x[0] - c[0]) + (x[1] - c[1]) * (x[1] - c[1]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(m);
    }
  }
  return best;
}

}  // namespace ppgedit::flowmatch
