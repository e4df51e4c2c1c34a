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

#include "ppgedit/flowmatch/mlp.h"

#include <cmath>
#include <numbers>
#include <string>

#include "ppgedit/error.h"
#include "ppgedit/random.h"

namespace ppgedit::flowmatch {
namespace {

using ConstWeights = Eigen::Map<const RowMatrix>;
using ConstBias = Eigen::Map<const Eigen::RowVectorXd>;

double activate(double z, Activation a) {
  switch (a) {
    case Activation::kTanh: return std::tanh(z);
    case Activation::kSilu: break;
  }
  return z / (1.0 + std::exp(-z));
}

double activate_grad(double z, Activation a) {
  switch (a) {
    case Activation::kTanh: {
      const double th = std::tanh(z);
      return 1.0 - th * th;
    }
    case Activation::kSilu: break;
  }
  const double sig = 1.0 / (1.0 + std::exp(-z));
  return sig * (1.0 + z * (1.0 - sig));
}

}  // namespace

void MlpConfig::validate() const {
  if (data_dim == 0) throw Error(ErrorCode::kInvalidConfig, "data_dim must be positive");
  if (num_classes == 0) throw Error(ErrorCode::kInvalidConfig, "num_classes must be positive");
  if (cond_dim == 0) throw Error(ErrorCode::kInvalidConfig, "cond_dim must be positive");
  for (auto w : hidden)
    if (w == 0) throw Error(ErrorCode::kInvalidConfig, "hidden widths must be positive");
  if (activation != Activation::kSilu && activation != Activation::kTanh)
    throw Error(ErrorCode::kInvalidConfig, "unknown activation");
}

Mlp::Mlp(MlpConfig config, std::uint64_t seed) : config_(std::move(config)) {
  build_layout();
  Rng rng(seed);
  for (const auto& layer : layers_) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(layer.in));
    for (std::size_t k = 0; k < layer.in * layer.out; ++k)
      params_[layer.weight_offset + k] = scale * rng.normal();
  }
  for (std::size_t k = embedding_offset_; k < params_.size(); ++k) params_[k] = rng.normal();
}

Mlp::Mlp(MlpConfig config, std::vector<double> parameters) : config_(std::move(config)) {
  build_layout();
  if (parameters.size() != params_.size())
    throw Error(ErrorCode::kInvalidConfig,
                "expected " + std::to_string(params_.size()) + " parameters, got " +
                    std::to_string(parameters.size()));
  params_ = std::move(parameters);
}

void Mlp::build_layout() {
  config_.validate();
  std::size_t offset = 0;
  std::size_t in = config_.input_width();
  std::vector<std::size_t> widths(config_.hidden.begin(), config_.hidden.end());
  widths.push_back(config_.data_dim);
  for (std::size_t out : widths) {
    Layer layer{in, out, offset, offset + in * out};
    offset = layer.bias_offset + out;
    layers_.push_back(layer);
    in = out;
  }
  embedding_offset_ = offset;
  offset += (std::size_t{config_.num_classes} + 1) * config_.cond_dim;
  params_.assign(offset, 0.0);
}

std::size_t Mlp::embedding_row(Condition condition) const {
  if (!condition) return config_.num_classes;
  if (*condition < 0 || static_cast<std::uint32_t>(*condition) >= config_.num_classes)
    throw Error(ErrorCode::kInvalidParameter,
                "condition " + std::to_string(*condition) + " outside [0, " +
                    std::to_string(config_.num_classes) + ")");
  return static_cast<std::size_t>(*condition);
}

RowMatrix Mlp::features(const RowMatrix& x, const Eigen::VectorXd& t,
                        std::span<const Condition> conditions) const {
  const Eigen::Index batch = x.rows();
  if (static_cast<std::size_t>(x.cols()) != config_.data_dim || t.size() != batch ||
      conditions.size() != static_cast<std::size_t>(batch))
    throw Error(ErrorCode::kDimensionMismatch, "batch shapes disagree with the model");

  const std::size_t d = config_.data_dim;
  const std::size_t k_freq = config_.time_frequencies;
  const std::size_t e = config_.cond_dim;
  RowMatrix in(batch, config_.input_width());
  for (Eigen::Index b = 0; b < batch; ++b) {
    in.row(b).head(d) = x.row(b);
    in(b, d) = t(b);
    for (std::size_t k = 0; k < k_freq; ++k) {
      const double freq = std::numbers::pi * static_cast<double>(1u << k);
      in(b, d + 1 + 2 * k) = std::sin(freq * t(b));
      in(b, d + 2 + 2 * k) = std::cos(freq * t(b));
    }
    const double* emb = params_.data() + embedding_offset_ + embedding_row(conditions[b]) * e;
    for (std::size_t j = 0; j < e; ++j) in(b, d + 1 + 2 * k_freq + j) = emb[j];
  }
  return in;
}

void Mlp::forward(const RowMatrix& x, const Eigen::VectorXd& t,
                  std::span<const Condition> conditions, Cache& cache) const {
  cache.inputs.clear();
  cache.pre.clear();
  RowMatrix h = features(x, t, conditions);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    ConstWeights w(params_.data() + layer.weight_offset, layer.out, layer.in);
    ConstBias bias(params_.data() + layer.bias_offset, layer.out);
    RowMatrix z = h * w.transpose();
    z.rowwise() += bias;
    cache.inputs.push_back(std::move(h));
    if (l + 1 == layers_.size()) {
      cache.output = std::move(z);
      break;
    }
    h = z.unaryExpr([a = config_.activation](double v) { return activate(v, a); });
    cache.pre.push_back(std::move(z));
  }
}

std::vector<double> Mlp::backprop(const Cache& cache, std::span<const Condition> conditions,
                                  const RowMatrix& d_out) const {
  std::vector<double> grad(params_.size(), 0.0);
  RowMatrix delta = d_out;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const Layer& layer = layers_[l];
    if (l + 1 < layers_.size()) {
      delta.array() *= cache.pre[l]
                           .unaryExpr([a = config_.activation](double v) {
                             return activate_grad(v, a);
                           })
                           .array();
    }
    Eigen::Map<RowMatrix> dw(grad.data() + layer.weight_offset, layer.out, layer.in);
    Eigen::Map<Eigen::RowVectorXd> db(grad.data() + layer.bias_offset, layer.out);
    dw.noalias() = delta.transpose() * cache.inputs[l];
    db = delta.colwise().sum();
    ConstWeights w(params_.data() + layer.weight_offset, layer.out, layer.in);
    RowMatrix d_in = delta * w;
    delta = std::move(d_in);
  }
  // delta now holds the gradient with respect to the input features.
  const std::size_t emb_col = config_.data_dim + 1 + 2 * config_.time_frequencies;
  const std::size_t e = config_.cond_dim;
  for (std::size_t b = 0; b < conditions.size(); ++b) {
    double* g = grad.data() + embedding_offset_ + embedding_row(conditions[b]) * e;
    for (std::size_t j = 0; j < e; ++j) g[j] += delta(b, emb_col + j);
  }
  return grad;
}

RowMatrix Mlp::evaluate(const RowMatrix& x, const Eigen::VectorXd& t,
                        std::span<const Condition> conditions) const {
  Cache cache;
  forward(x, t, conditions, cache);
  return std::move(cache.output);
}

std::vector<double> Mlp::backward(const RowMatrix& x, const Eigen::VectorXd& t,
                                  std::span<const Condition> conditions,
                                  const RowMatrix& d_out) const {
  Cache cache;
  forward(x, t, conditions, cache);
  return backprop(cache, conditions, d_out);
}

}  // namespace ppgedit::flowmatch
