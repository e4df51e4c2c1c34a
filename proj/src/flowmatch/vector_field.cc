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

#include "ppgedit/flowmatch/vector_field.h"

#include <string>

#include "ppgedit/error.h"

namespace ppgedit::flowmatch {

std::vector<double> VectorField::evaluate_one(std::span<const double> x, double t,
                                              Condition condition) const {
  if (x.size() != dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "state has " + std::to_string(x.size()) + " dims, field " +
                    std::to_string(dim()));
  RowMatrix xb(1, x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xb(0, i) = x[i];
  Eigen::VectorXd tb(1);
  tb(0) = t;
  const Condition conds[1] = {condition};
  const RowMatrix v = evaluate(xb, tb, conds);
  return std::vector<double>(v.data(), v.data() + v.size());
}

RowMatrix LambdaField::evaluate(const RowMatrix& x, const Eigen::VectorXd& t,
                                std::span<const Condition> conditions) const {
  RowMatrix out(x.rows(), x.cols());
  for (Eigen::Index b = 0; b < x.rows(); ++b) {
    const std::span<const double> row(x.row(b).data(), static_cast<std::size_t>(x.cols()));
    const auto v = fn_(row, t(b), conditions[b]);
    if (v.size() != dim_)
      throw Error(ErrorCode::kDimensionMismatch, "field returned wrong dimension");
    for (std::size_t i = 0; i < dim_; ++i) out(b, i) = v[i];
  }
  return out;
}

}  // namespace ppgedit::flowmatch
