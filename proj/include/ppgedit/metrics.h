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

#ifndef PPGEDIT_METRICS_H_
#define PPGEDIT_METRICS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ppgedit/matrix.h"
#include "ppgedit/ppg.h"

namespace ppgedit {

// Jensen-Shannon distance with base-2 logarithms, so the result lies in
// [0, 1]. Throws kInvalidDistribution unless both inputs are non-negative
// and sum to 1 within kRowSumTolerance.
double jsd(std::span<const double> p, std::span<const double> q);

struct DtwResult {
  double cost = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

using CellCost = std::function<double(std::size_t i, std::size_t j)>;

// Unconstrained DTW over an m x n grid of cell costs with steps (1,0),
// (0,1), (1,1) and no step weights. Equal-cost predecessors resolve as
// diagonal, then (i-1, j), then (i, j-1).
DtwResult dtw(std::size_t m, std::size_t n, const CellCost& cost);

using FrameCost = std::function<double(std::span<const double>, std::span<const double>)>;

// DTW between the rows of two frame sequences.
DtwResult dtw(const Matrix& a, const Matrix& b, const FrameCost& cost);

struct PacResult {
  double pac = 0.0;
  double dtw_cost = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
};

// Length-normalised DTW cost with JSD frame cost between the edited region
// (m frames) and the matching region of a re-extracted PPG (n frames).
// Normalisation is by m only, so the score is not symmetric.
PacResult pac_detail(const Ppg& edited_region, const Ppg& syn_region);
double pac(const Ppg& edited_region, const Ppg& syn_region);

// Mean over voiced frames of |1200 log2(a / b)|.
double pitch_mae_cents(std::span<const double> f0_a, std::span<const double> f0_b,
                       const std::vector<bool>& voiced_mask);

}  // namespace ppgedit

#endif  // PPGEDIT_METRICS_H_
