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

#ifndef PPGEDIT_FLOWMATCH_CFM_LOSS_H_
#define PPGEDIT_FLOWMATCH_CFM_LOSS_H_

#include <cstdint>
#include <vector>

#include "ppgedit/flowmatch/mlp.h"
#include "ppgedit/flowmatch/vector_field.h"

namespace ppgedit::flowmatch {

// Data samples x0 (B x D) and their class conditions.
struct CfmBatch {
  RowMatrix x0;
  std::vector<int> conditions;

  std::size_t size() const { return static_cast<std::size_t>(x0.rows()); }
};

enum class DropoutGranularity { kPerBatch, kPerItem };

// Randomness of one loss evaluation: diffusion times, prior samples, and
// which items see the null condition.
struct CfmDraw {
  Eigen::VectorXd t;
  RowMatrix x1;
  std::vector<bool> dropped;
};

// t ~ U[0, 1] and x1 ~ N(0, I) per item. With kPerBatch a single coin with
// probability p_uncon drops the condition for the whole batch.
CfmDraw draw_cfm_noise(std::size_t batch, std::size_t dim, double p_uncon,
                       DropoutGranularity granularity, std::uint64_t seed);

// Noisy inputs x_t = t x1 + (1 - t) x0 and targets x0 - x1 for a draw.
struct CfmInputs {
  RowMatrix xt;
  RowMatrix target;
  std::vector<Condition> conditions;
};
CfmInputs make_cfm_inputs(const CfmBatch& batch, const CfmDraw& draw);

// Batch mean of || v(x_t, t, c) - (x0 - x1) ||^2.
double cfm_loss(const VectorField& model, const CfmBatch& batch, const CfmDraw& draw);
double cfm_loss(const VectorField& model, const CfmBatch& batch, std::uint64_t noise_seed,
                double p_uncon = 0.1,
                DropoutGranularity granularity = DropoutGranularity::kPerBatch);

struct CfmLossGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

CfmLossGrad cfm_loss_and_grad(const Mlp& model, const CfmBatch& batch, const CfmDraw& draw);

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_CFM_LOSS_H_
