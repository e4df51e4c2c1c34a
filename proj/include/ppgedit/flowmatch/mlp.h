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

#ifndef PPGEDIT_FLOWMATCH_MLP_H_
#define PPGEDIT_FLOWMATCH_MLP_H_

#include <cstdint>
#include <vector>

#include "ppgedit/flowmatch/vector_field.h"

namespace ppgedit::flowmatch {

enum class Activation : std::uint32_t { kSilu = 0, kTanh = 1 };

struct MlpConfig {
  std::uint32_t data_dim = 2;
  std::uint32_t num_classes = 8;
  std::uint32_t cond_dim = 8;         // width of the condition embedding
  std::uint32_t time_frequencies = 4;  // sin/cos pairs at pi * 2^k
  std::vector<std::uint32_t> hidden = {128, 128, 128};
  Activation activation = Activation::kSilu;

  std::size_t input_width() const { return data_dim + 1 + 2 * time_frequencies + cond_dim; }
  // Throws kInvalidConfig.
  void validate() const;

  friend bool operator==(const MlpConfig&, const MlpConfig&) = default;
};

// Feed-forward vector field. The input row is [x, t, sin/cos time features,
// condition embedding]; the embedding is a learned row per class, or the
// learned null row when the condition is absent. All parameters live in one
// flat vector: per layer W (out x in, row-major) then b, then the class
// embedding table, then the null embedding.
class Mlp : public VectorField {
 public:
  // Weights ~ N(0, 1/fan_in), zero biases, embeddings ~ N(0, 1).
  Mlp(MlpConfig config, std::uint64_t seed);
  Mlp(MlpConfig config, std::vector<double> parameters);

  const MlpConfig& config() const { return config_; }
  std::size_t dim() const override { return config_.data_dim; }
  std::size_t num_parameters() const { return params_.size(); }

  const std::vector<double>& parameters() const { return params_; }
  std::vector<double>& parameters() { return params_; }

  std::size_t embedding_offset() const { return embedding_offset_; }
  std::size_t null_embedding_offset() const {
    return embedding_offset_ + std::size_t{config_.num_classes} * config_.cond_dim;
  }

  RowMatrix evaluate(const RowMatrix& x, const Eigen::VectorXd& t,
                     std::span<const Condition> conditions) const override;

  // Gradient of sum_b <d_out_b, v(x_b, t_b, c_b)> with respect to the flat
  // parameter vector, i.e. a vector-Jacobian product.
  std::vector<double> backward(const RowMatrix& x, const Eigen::VectorXd& t,
                               std::span<const Condition> conditions,
                               const RowMatrix& d_out) const;

  // Single pass returning the output and the vector-Jacobian product for
  // the d_out produced by `loss_grad(output)`.
  template <typename LossGrad>
  std::vector<double> forward_backward(const RowMatrix& x, const Eigen::VectorXd& t,
                                       std::span<const Condition> conditions,
                                       LossGrad&& loss_grad) const;

 private:
  struct Layer {
    std::size_t in = 0, out = 0, weight_offset = 0, bias_offset = 0;
  };
  struct Cache {
    std::vector<RowMatrix> inputs;  // input to each layer
    std::vector<RowMatrix> pre;     // pre-activations of hidden layers
    RowMatrix output;
  };

  void build_layout();
  RowMatrix features(const RowMatrix& x, const Eigen::VectorXd& t,
                     std::span<const Condition> conditions) const;
  void forward(const RowMatrix& x, const Eigen::VectorXd& t,
               std::span<const Condition> conditions, Cache& cache) const;
  std::vector<double> backprop(const Cache& cache, std::span<const Condition> conditions,
                               const RowMatrix& d_out) const;
  std::size_t embedding_row(Condition condition) const;

  MlpConfig config_;
  std::vector<Layer> layers_;
  std::size_t embedding_offset_ = 0;
  std::vector<double> params_;
};

template <typename LossGrad>
std::vector<double> Mlp::forward_backward(const RowMatrix& x, const Eigen::VectorXd& t,
                                          std::span<const Condition> conditions,
                                          LossGrad&& loss_grad) const {
  Cache cache;
  forward(x, t, conditions, cache);
  const RowMatrix d_out = loss_grad(cache.output);
  return backprop(cache, conditions, d_out);
}

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_MLP_H_
