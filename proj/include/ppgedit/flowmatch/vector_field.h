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

#ifndef PPGEDIT_FLOWMATCH_VECTOR_FIELD_H_
#define PPGEDIT_FLOWMATCH_VECTOR_FIELD_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ppgedit::flowmatch {

// Batches are row-per-item: B x D.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Class index of the conditioning input; nullopt is the null condition.
using Condition = std::optional<int>;

// v_t(x; c). Evaluation must be deterministic and side-effect free.
class VectorField {
 public:
  virtual ~VectorField() = default;

  virtual std::size_t dim() const = 0;
  virtual RowMatrix evaluate(const RowMatrix& x, const Eigen::VectorXd& t,
                             std::span<const Condition> conditions) const = 0;

  std::vector<double> evaluate_one(std::span<const double> x, double t,
                                   Condition condition) const;
};

// Adapts a per-item callable; used for analytic fields in tests and oracles.
class LambdaField : public VectorField {
 public:
  using Fn = std::function<std::vector<double>(std::span<const double> x, double t,
                                               Condition condition)>;

  LambdaField(std::size_t dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  std::size_t dim() const override { return dim_; }
  RowMatrix evaluate(const RowMatrix& x, const Eigen::VectorXd& t,
                     std::span<const Condition> conditions) const override;

 private:
  std::size_t dim_;
  Fn fn_;
};

}  // namespace ppgedit::flowmatch

#endif  // PPGEDIT_FLOWMATCH_VECTOR_FIELD_H_
