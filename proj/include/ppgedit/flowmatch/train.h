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

#ifndef PPGEDIT_FLOWMATCH_TRAIN_H_
#define PPGEDIT_FLOWMATCH_TRAIN_H_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ppgedit/flowmatch/cfm_loss.h"
#include "ppgedit/flowmatch/mlp.h"
#include "ppgedit/flowmatch/toy_task.h"

namespace ppgedit::flowmatch {

// Adam with linear warmup to lr_max, then cosine decay to lr_min.
struct TrainConfig {
  MlpConfig model;
  std::size_t batch_size = 256;
  std::size_t updates = 3000;
  double lr_max = 2e-3;
  double lr_min = 1e-5;
  std::size_t warmup = 200;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double p_uncon = 0.1;
  DropoutGranularity dropout = DropoutGranularity::kPerBatch;
  std::uint64_t seed = 0;

  // Throws kInvalidConfig.
  void validate() const;
};

double learning_rate(const TrainConfig& config, std::size_t update);

struct TrainResult {
  Mlp model;
  std::vector<double> losses;  // one entry per update
  std::size_t dropped_batches = 0;
};

// Deterministic given config.seed. Throws kDivergedTraining on a
// non-finite loss.
TrainResult train_toy(const TrainConfig& config, const ToyTask& task);

// CSV "update_index,loss".
void write_loss_csv(const std::vector<double>& losses, std::ostream& os);

// 64-bit mix used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_TRAIN_H_
