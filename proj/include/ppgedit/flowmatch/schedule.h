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

#ifndef PPGEDIT_FLOWMATCH_SCHEDULE_H_
#define PPGEDIT_FLOWMATCH_SCHEDULE_H_

#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <vector>

namespace ppgedit::flowmatch {

// Admissible sway coefficients are [-1, 2 / (pi - 2)]; outside that range
// f_sway stops being monotone on [0, 1].
inline constexpr double kSwayMin = -1.0;
inline constexpr double kSwayMax = 2.0 / (std::numbers::pi - 2.0);

// u + s * (cos(pi/2 * u) - 1 + u)
double f_sway(double u, double s);

// Diffusion times t_0 = 1 > t_1 > ... > t_n = 0 with t_i = 1 - f_sway(i/n; s).
// For s < 0 the early (noisy) steps are the small ones.
class SamplerSchedule {
 public:
  // Throws kCoefficientOutOfRange or kInvalidParameter (n == 0).
  static SamplerSchedule sway(std::size_t steps, double s);
  static SamplerSchedule uniform(std::size_t steps) { return sway(steps, 0.0); }
  // Throws kInvalidSchedule unless the times run strictly from 1 down to 0.
  static SamplerSchedule from_times(std::vector<double> times, double s = 0.0);

  std::size_t steps() const { return times_.size() - 1; }
  double sway_coefficient() const { return sway_; }
  const std::vector<double>& times() const { return times_; }
  double step_size(std::size_t i) const { return times_[i] - times_[i + 1]; }

  // CSV "i,u,t" with a header row.
  void write_csv(std::ostream& os) const;

 private:
  SamplerSchedule(std::vector<double> times, double s)
      : times_(std::move(times)), sway_(s) {}

  std::vector<double> times_;
  double sway_ = 0.0;
};

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_SCHEDULE_H_
