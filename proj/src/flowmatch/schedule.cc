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

#include "ppgedit/flowmatch/schedule.h"

#include <cmath>
#include <ostream>
#include <string>

#include "ppgedit/error.h"
#include "ppgedit/ppg_io.h"

namespace ppgedit::flowmatch {

double f_sway(double u, double s) {
  return u + s * (std::cos(std::numbers::pi / 2.0 * u) - 1.0 + u);
}

SamplerSchedule SamplerSchedule::sway(std::size_t steps, double s) {
  if (steps == 0) throw Error(ErrorCode::kInvalidParameter, "schedule needs n >= 1 steps");
  if (!(s >= kSwayMin && s <= kSwayMax))
    throw Error(ErrorCode::kCoefficientOutOfRange,
                "sway coefficient " + format_double(s) + " outside [-1, " +
                    format_double(kSwayMax) + "]");
  std::vector<double> times(steps + 1);
  // f_sway(0) = 0 and f_sway(1) = 1 exactly; cos(pi/2) is not exactly 0 in
  // floating point, so the endpoints are pinned.
  times.front() = 1.0;
  times.back() = 0.0;
  for (std::size_t i = 1; i < steps; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(steps);
    times[i] = 1.0 - f_sway(u, s);
  }
  return from_times(std::move(times), s);
}

SamplerSchedule SamplerSchedule::from_times(std::vector<double> times, double s) {
  if (times.size() < 2 || times.front() != 1.0 || times.back() != 0.0)
    throw Error(ErrorCode::kInvalidSchedule, "schedule must start at 1 and end at 0");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] > times[i + 1]))
      throw Error(ErrorCode::kInvalidSchedule,
                  "schedule not strictly decreasing at step " + std::to_string(i));
  return SamplerSchedule(std::move(times), s);
}

void SamplerSchedule::write_csv(std::ostream& os) const {
  os << "i,u,t\n";
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(steps());
    os << i << ',' << format_double(u) << ',' << format_double(times_[i]) << '\n';
  }
}

}  // namespace ppgedit::flowmatch
