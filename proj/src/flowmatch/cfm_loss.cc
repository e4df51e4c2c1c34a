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

#include "ppgedit/flowmatch/cfm_loss.h"

#include "ppgedit/error.h"
#include "ppgedit/random.h"

namespace ppgedit::flowmatch {

CfmDraw draw_cfm_noise(std::size_t batch, std::size_t dim, double p_uncon,
                       DropoutGranularity granularity, std::uint64_t seed) {
  if (batch == 0) throw Error(ErrorCode::kEmptyBatch, "empty batch");
  if (!(p_uncon >= 0.0 && p_uncon <= 1.0))
    throw Error(ErrorCode::kInvalidConfig, "p_uncon must lie in [0, 1]");
  Rng rng(seed);
  CfmDraw draw;
  draw.t.resize(static_cast<Eigen::Index>(batch));
  draw.x1.resize(static_cast<Eigen::Index>(batch), static_cast<Eigen::Index>(dim));
  draw.dropped.assign(batch, false);
  if (granularity == DropoutGranularity::kPerBatch) {
    // p_uncon == 0 must never drop, whatever the draw.
    const bool drop = p_uncon > 0.0 && rng.bernoulli(p_uncon);
    draw.dropped.assign(batch, drop);
  }
  for (std::size_t b = 0; b < batch; ++b) {
    draw.t(b) = rng.uniform();
    for (std::size_t i = 0; i < dim; ++i) draw.x1(b, i) = rng.normal();
    if (granularity == DropoutGranularity::kPerItem)
      draw.dropped[b] = p_uncon > 0.0 && rng.bernoulli(p_uncon);
  }
  return draw;
}

CfmInputs make_cfm_inputs(const CfmBatch& batch, const CfmDraw& draw) {
  const auto n = batch.x0.rows();
  if (n == 0) throw Error(ErrorCode::kEmptyBatch, "empty batch");
  if (draw.x1.rows() != n || draw.x1.cols() != batch.x0.cols() || draw.t.size() != n ||
      batch.conditions.size() != static_cast<std::size_t>(n) ||
      draw.dropped.size() != static_cast<std::size_t>(n))
    throw Error(ErrorCode::kDimensionMismatch, "batch and noise draw disagree in shape");
  CfmInputs in;
  in.xt.resize(n, batch.x0.cols());
  for (Eigen::Index b = 0; b < n; ++b)
    in.xt.row(b) = draw.t(b) * draw.x1.row(b) + (1.0 - draw.t(b)) * batch.x0.row(b);
  in.target = batch.x0 - draw.x1;
  in.conditions.resize(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < in.conditions.size(); ++b)
    in.conditions[b] = draw.dropped[b] ? Condition{} : Condition{batch.conditions[b]};
  return in;
}

double cfm_loss(const VectorField& model, const CfmBatch& batch, const CfmDraw& draw) {
  const CfmInputs in = make_cfm_inputs(batch, draw);
  const RowMatrix v = model.evaluate(in.xt, draw.t, in.conditions);
  return (v - in.target).rowwise().squaredNorm().mean();
}

double cfm_loss(const VectorField& model, const CfmBatch& batch, std::uint64_t noise_seed,
                double p_uncon, DropoutGranularity granularity) {
  const auto draw = draw_cfm_noise(batch.size(), static_cast<std::size_t>(batch.x0.cols()),
                                   p_uncon, granularity, noise_seed);
  return cfm_loss(model, batch, draw);
}

CfmLossGrad cfm_loss_and_grad(const Mlp& model, const CfmBatch& batch, const CfmDraw& draw) {
  const CfmInputs in = make_cfm_inputs(batch, draw);
  CfmLossGrad out;
  const double scale = 2.0 / static_cast<double>(batch.size());
  out.grad = model.forward_backward(in.xt, draw.t, in.conditions, [&](const RowMatrix& v) {
    const RowMatrix residual = v - in.target;
    out.loss = residual.rowwise().squaredNorm().mean();
    return RowMatrix(scale * residual);
  });
  return out;
}

}  // namespace ppgedit::flowmatch
