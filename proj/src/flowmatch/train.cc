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

#include "ppgedit/flowmatch/train.h"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "ppgedit/error.h"
#include "ppgedit/ppg_io.h"

namespace ppgedit::flowmatch {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finaliser
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void TrainConfig::validate() const {
  model.validate();
  if (batch_size == 0) throw Error(ErrorCode::kInvalidConfig, "batch_size must be positive");
  if (updates == 0) throw Error(ErrorCode::kInvalidConfig, "updates must be positive");
  if (!(lr_max > 0.0) || !(lr_min >= 0.0) || lr_min > lr_max)
    throw Error(ErrorCode::kInvalidConfig, "need 0 <= lr_min <= lr_max, lr_max > 0");
  if (!(p_uncon >= 0.0 && p_uncon <= 1.0))
    throw Error(ErrorCode::kInvalidConfig, "p_uncon must lie in [0, 1]");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0) || !(epsilon > 0.0))
    throw Error(ErrorCode::kInvalidConfig, "invalid Adam hyperparameters");
}

double learning_rate(const TrainConfig& config, std::size_t update) {
  if (update < config.warmup)
    return config.lr_max * static_cast<double>(update + 1) /
           static_cast<double>(config.warmup);
  const std::size_t decay_steps = config.updates > config.warmup
                                      ? config.updates - config.warmup
                                      : 1;
  const double progress =
      std::min(1.0, static_cast<double>(update - config.warmup) /
                        static_cast<double>(decay_steps));
  return config.lr_min + 0.5 * (config.lr_max - config.lr_min) *
                             (1.0 + std::cos(std::numbers::pi * progress));
}

TrainResult train_toy(const TrainConfig& config, const ToyTask& task) {
  config.validate();
  if (config.model.data_dim != task.dim() || config.model.num_classes != task.num_classes())
    throw Error(ErrorCode::kInvalidConfig, "model shape does not match the toy task");

  TrainResult result{Mlp(config.model, mix_seed(config.seed, 0)), {}, 0};
  Mlp& model = result.model;
  auto& params = model.parameters();
  std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);
  Rng data_rng(mix_seed(config.seed, 1));
  result.losses.reserve(config.updates);

  for (std::size_t step = 0; step < config.updates; ++step) {
    const CfmBatch batch = task.sample(config.batch_size, data_rng);
    const CfmDraw draw = draw_cfm_noise(config.batch_size, task.dim(), config.p_uncon,
                                        config.dropout, mix_seed(config.seed, 2 + step));
    if (draw.dropped.front()) ++result.dropped_batches;
    const CfmLossGrad lg = cfm_loss_and_grad(model, batch, draw);
    if (!std::isfinite(lg.loss))
      throw Error(ErrorCode::kDivergedTraining,
                  "loss became " + format_double(lg.loss) + " at update " +
                      std::to_string(step));
    result.losses.push_back(lg.loss);

    const double lr = learning_rate(config, step);
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(step + 1));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(step + 1));
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double g = lg.grad[k];
      m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * g;
      v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * g * g;
      params[k] -= lr * (m[k] / bc1) / (std::sqrt(v[k] / bc2) + config.epsilon);
    }
  }
  return result;
}

void write_loss_csv(const std::vector<double>& losses, std::ostream& os) {
  os << "update_index,loss\n";
  for (std::size_t i = 0; i < losses.size(); ++i)
    os << i << ',' << format_double(losses[i]) << '\n';
}

}  // namespace ppgedit::flowmatch
