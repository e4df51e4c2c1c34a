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

#include "ppgedit/flowmatch/sampler.h"

#include "ppgedit/error.h"
#include "ppgedit/random.h"

namespace ppgedit::flowmatch {

RowMatrix euler_sample_batch(const VectorField& field, const SamplerSchedule& schedule,
                             RowMatrix x, std::span<const Condition> conditions, double w) {
  if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "guidance strength must be >= 0");
  if (static_cast<std::size_t>(x.cols()) != field.dim() ||
      conditions.size() != static_cast<std::size_t>(x.rows()))
    throw Error(ErrorCode::kDimensionMismatch, "sampler inputs disagree with the field");
  // SamplerSchedule can only be built valid, so the times need no re-check.
  const auto& times = schedule.times();

  const auto batch = x.rows();
  std::vector<Condition> null_conditions(static_cast<std::size_t>(batch));
  std::vector<Eigen::Index> guided;
  for (Eigen::Index b = 0; b < batch; ++b)
    if (w > 0.0 && conditions[b]) guided.push_back(b);

  Eigen::VectorXd t(batch);
  for (std::size_t i = 0; i < schedule.steps(); ++i) {
    t.setConstant(times[i]);
    RowMatrix v = field.evaluate(x, t, conditions);
    if (!guided.empty()) {
      const RowMatrix v_null = field.evaluate(x, t, null_conditions);
      for (Eigen::Index b : guided) v.row(b) += w * (v.row(b) - v_null.row(b));
    }
    x += schedule.step_size(i) * v;
  }
  return x;
}

std::vector<double> euler_sample(const VectorField& field, const SamplerSchedule& schedule,
                                 std::span<const double> x_init, Condition condition,
                                 double w) {
  RowMatrix x(1, static_cast<Eigen::Index>(x_init.size()));
  for (std::size_t i = 0; i < x_init.size(); ++i) x(0, i) = x_init[i];
  const Condition conds[1] = {condition};
  const RowMatrix out = euler_sample_batch(field, schedule, std::move(x), conds, w);
  return std::vector<double>(out.data(), out.data() + out.size());
}

RowMatrix sample_from_prior(const VectorField& field, const SamplerSchedule& schedule,
                            std::span<const Condition> conditions, double w,
                            std::uint64_t seed) {
  Rng rng(seed);
  RowMatrix x(static_cast<Eigen::Index>(conditions.size()),
              static_cast<Eigen::Index>(field.dim()));
  for (Eigen::Index b = 0; b < x.rows(); ++b)
    for (Eigen::Index i = 0; i < x.cols(); ++i) x(b, i) = rng.normal();
  return euler_sample_batch(field, schedule, std::move(x), conditions, w);
}

}  // namespace ppgedit::flowmatch
