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

#include "ppgedit/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ppgedit {
namespace {

void check_distribution(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::kInvalidDistribution,
                  std::string(name) + " has a negative or non-finite entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance)
    throw Error(ErrorCode::kInvalidDistribution,
                std::string(name) + " sums to " + std::to_string(sum));
}

// One KL(p || m) term with 0 log 0 = 0.
inline double kl_term(double p, double m) {
  return p > 0.0 ? p * std::log2(p / m) : 0.0;
}

}  // namespace

double jsd(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw Error(ErrorCode::kInvalidDistribution,
                "distributions have different supports (" + std::to_string(p.size()) +
                    " vs " + std::to_string(q.size()) + ")");
  check_distribution(p, "p");
  check_distribution(q, "q");
  double kl_p = 0.0, kl_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    kl_p += kl_term(p[i], m);
    kl_q += kl_term(q[i], m);
  }
  const double divergence = 0.5 * (kl_p + kl_q);
  return std::clamp(std::sqrt(std::max(divergence, 0.0)), 0.0, 1.0);
}

DtwResult dtw(std::size_t m, std::size_t n, const CellCost& cost) {
  if (m == 0 || n == 0)
    throw Error(ErrorCode::kEmptySequence, "DTW needs two non-empty sequences");

  enum Step : unsigned char { kStart, kDiag, kUp, kLeft };
  std::vector<double> acc(m * n);
  std::vector<Step> from(m * n, kStart);
  auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cost(i, j);
      if (i == 0 && j == 0) {
        acc[0] = c;
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      Step step = kStart;
      if (i > 0 && j > 0) {
        best = acc[at(i - 1, j - 1)];
        step = kDiag;
      }
      if (i > 0 && acc[at(i - 1, j)] < best) {
        best = acc[at(i - 1, j)];
        step = kUp;
      }
      if (j > 0 && acc[at(i, j - 1)] < best) {
        best = acc[at(i, j - 1)];
        step = kLeft;
      }
      acc[at(i, j)] = best + c;
      from[at(i, j)] = step;
    }
  }

  DtwResult result;
  result.cost = acc[at(m - 1, n - 1)];
  std::size_t i = m - 1, j = n - 1;
  result.path.emplace_back(i, j);
  while (i != 0 || j != 0) {
    switch (from[at(i, j)]) {
      case kDiag: --i; --j; break;
      case kUp: --i; break;
      case kLeft: --j; break;
      case kStart: break;
    }
    result.path.emplace_back(i, j);
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

DtwResult dtw(const Matrix& a, const Matrix& b, const FrameCost& cost) {
  return dtw(a.rows(), b.rows(),
             [&](std::size_t i, std::size_t j) { return cost(a.row(i), b.row(j)); });
}

PacResult pac_detail(const Ppg& edited_region, const Ppg& syn_region) {
  if (edited_region.inventory() != syn_region.inventory())
    throw Error(ErrorCode::kInventoryMismatch,
                "edited and synthesized PPGs use different phoneme inventories");
  if (edited_region.num_frames() == 0 || syn_region.num_frames() == 0)
    throw Error(ErrorCode::kEmptyRegion, "PAC regions must be non-empty");
  const auto aligned = dtw(edited_region.matrix(), syn_region.matrix(),
                           [](auto p, auto q) { return jsd(p, q); });
  PacResult r;
  r.m = edited_region.num_frames();
  r.n = syn_region.num_frames();
  r.dtw_cost = aligned.cost;
  r.pac = aligned.cost / static_cast<double>(r.m);
  return r;
}

double pac(const Ppg& edited_region, const Ppg& syn_region) {
  return pac_detail(edited_region, syn_region).pac;
}

double pitch_mae_cents(std::span<const double> f0_a, std::span<const double> f0_b,
                       const std::vector<bool>& voiced_mask) {
  if (f0_a.size() != f0_b.size() || f0_a.size() != voiced_mask.size())
    throw Error(ErrorCode::kLengthMismatch, "pitch tracks and mask differ in length");
  double total = 0.0;
  std::size_t voiced = 0;
  for (std::size_t t = 0; t < f0_a.size(); ++t) {
    if (!voiced_mask[t]) continue;
    if (!(f0_a[t] > 0.0) || !(f0_b[t] > 0.0))
      throw Error(ErrorCode::kNonPositivePitch,
                  "non-positive pitch on voiced frame " + std::to_string(t));
    total += std::abs(1200.0 * std::log2(f0_a[t] / f0_b[t]));
    ++voiced;
  }
  if (voiced == 0) throw Error(ErrorCode::kNoVoicedFrames, "no voiced frames");
  return total / static_cast<double>(voiced);
}

}  // namespace ppgedit
