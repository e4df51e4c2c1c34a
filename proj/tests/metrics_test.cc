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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "ppgedit/metrics.h"
#include "test_util.h"

namespace ppgedit {
namespace {

using testing::random_stochastic;

// Exhaustive minimum over monotone paths, summing costs in path order like
// the dynamic programme does.
double brute_force_dtw(std::size_t m, std::size_t n, const CellCost& cost) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                    double acc) {
    if (i == m - 1 && j == n - 1) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < m && j + 1 < n) walk(i + 1, j + 1, acc + cost(i + 1, j + 1));
    if (i + 1 < m) walk(i + 1, j, acc + cost(i + 1, j));
    if (j + 1 < n) walk(i, j + 1, acc + cost(i, j + 1));
  };
  walk(0, 0, cost(0, 0));
  return best;
}

Ppg one_hot_frames(const PhonemeInventory& inv, const std::vector<std::string>& labels) {
  Matrix m(labels.size(), inv.size());
  for (std::size_t t = 0; t < labels.size(); ++t) m(t, inv.index_of(labels[t])) = 1.0;
  return Ppg::create(std::move(m), inv);
}

TEST(Jsd, HighPrecisionOracleValues) {
  const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0};
  EXPECT_NEAR(jsd(p, q), 0.5579230452841438812, 1e-15);
  const std::vector<double> a{0.2, 0.3, 0.5}, b{0.5, 0.4, 0.1};
  EXPECT_NEAR(jsd(a, b), 0.39758172354270118223, 1e-15);
}

TEST(Jsd, DisjointOneHotsAreAtDistanceOne) {
  const std::vector<double> p{1, 0, 0}, q{0, 0, 1};
  EXPECT_DOUBLE_EQ(jsd(p, q), 1.0);
  EXPECT_EQ(jsd(p, p), 0.0);
}

TEST(Jsd, RejectsNonDistributions) {
  const std::vector<double> ok{0.5, 0.5}, neg{1.5, -0.5}, short_sum{0.5, 0.4}, three{0.2, 0.3, 0.5};
  EXPECT_THROW(jsd(ok, neg), Error);
  EXPECT_THROW(jsd(short_sum, ok), Error);
  EXPECT_THROW(jsd(ok, three), Error);
}

TEST(Jsd, MetricAxiomsOnRandomTriples) {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t k = 2 + rng.uniform_index(31);
    const Matrix m = random_stochastic(3, k, rng);
    const auto p = m.row(0), q = m.row(1), r = m.row(2);
    const double pq = jsd(p, q), qp = jsd(q, p), pr = jsd(p, r), qr = jsd(q, r);
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
    EXPECT_EQ(pq, qp);
    EXPECT_NEAR(jsd(p, p), 0.0, 1e-9);
    EXPECT_LE(pr, pq + qr + 1e-9);
  }
}

TEST(Dtw, IdenticalSequencesTakeTheDiagonal) {
  Rng rng(1);
  const Matrix a = random_stochastic(5, 4, rng);
  const auto r = dtw(a, a, [](auto x, auto y) { return jsd(x, y); });
  EXPECT_EQ(r.cost, 0.0);
  ASSERT_EQ(r.path.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.path[i], std::make_pair(i, i));
}

TEST(Dtw, MatchesBruteForceExactly) {
  Rng rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + rng.uniform_index(6), n = 1 + rng.uniform_index(6);
    Matrix costs(m, n);
    for (auto& c : costs.data()) c = rng.uniform();
    const CellCost cell = [&](std::size_t i, std::size_t j) { return costs(i, j); };
    const auto r = dtw(m, n, cell);
    EXPECT_EQ(r.cost, brute_force_dtw(m, n, cell)) << m << "x" << n;
    // The reported path is monotone, complete and carries the cost.
    ASSERT_FALSE(r.path.empty());
    EXPECT_EQ(r.path.front(), (std::pair<std::size_t, std::size_t>{0, 0}));
    EXPECT_EQ(r.path.back(), std::make_pair(m - 1, n - 1));
    double along = 0.0;
    for (std::size_t s = 0; s < r.path.size(); ++s) {
      along += costs(r.path[s].first, r.path[s].second);
      if (s > 0) {
        const auto di = r.path[s].first - r.path[s - 1].first;
        const auto dj = r.path[s].second - r.path[s - 1].second;
        EXPECT_TRUE(di <= 1 && dj <= 1 && di + dj >= 1);
      }
    }
    EXPECT_EQ(along, r.cost);
  }
}

TEST(Dtw, TiesPreferDiagonalThenUpThenLeft) {
  const auto zero = [](std::size_t, std::size_t) { return 0.0; };
  const auto r = dtw(3, 2, zero);
  const std::vector<std::pair<std::size_t, std::size_t>> expected{{0, 0}, {1, 0}, {2, 1}};
  // Backtracking from (2,1): diagonal to (1,0), then up to (0,0).
  EXPECT_EQ(r.path, expected);
  const auto wide = dtw(2, 3, zero);
  const std::vector<std::pair<std::size_t, std::size_t>> expected_wide{{0, 0}, {0, 1}, {1, 2}};
  EXPECT_EQ(wide.path, expected_wide);
}

TEST(Dtw, SymmetricCostIsSymmetric) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_stochastic(1 + rng.uniform_index(8), 5, rng);
    const Matrix b = random_stochastic(1 + rng.uniform_index(8), 5, rng);
    const FrameCost cost = [](auto x, auto y) { return jsd(x, y); };
    EXPECT_NEAR(dtw(a, b, cost).cost, dtw(b, a, cost).cost, 1e-12);
  }
}

TEST(Dtw, EmptySequenceIsAnError) {
  EXPECT_THROW(dtw(0, 3, [](std::size_t, std::size_t) { return 0.0; }), Error);
}

TEST(Pac, Fixtures) {
  const PhonemeInventory inv({"a", "e", "i"});
  const Ppg aa = one_hot_frames(inv, {"a", "a"});
  EXPECT_EQ(pac(aa, aa), 0.0);

  const auto r = pac_detail(aa, one_hot_frames(inv, {"e"}));
  EXPECT_EQ(r.dtw_cost, 2.0);
  EXPECT_EQ(r.pac, 1.0);
  EXPECT_EQ(r.m, 2u);
  EXPECT_EQ(r.n, 1u);

  EXPECT_EQ(pac(one_hot_frames(inv, {"a"}), one_hot_frames(inv, {"a", "a", "a"})), 0.0);
}

TEST(Pac, NormalisesByEditedLengthOnly) {
  const PhonemeInventory inv({"a", "e"});
  const Ppg two_a = one_hot_frames(inv, {"a", "a"});
  const Ppg one_e = one_hot_frames(inv, {"e"});
  EXPECT_EQ(pac(two_a, one_e), 1.0);
  EXPECT_EQ(pac(one_e, two_a), 2.0);
}

TEST(Pac, DuplicatingIdenticalFramesKeepsZero) {
  Rng rng(8);
  const PhonemeInventory inv({"a", "b", "c", "d"});
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix x = random_stochastic(1 + rng.uniform_index(6), 4, rng);
    std::vector<std::vector<double>> dup;
    for (std::size_t t = 0; t < x.rows(); ++t) {
      const std::size_t copies = 1 + rng.uniform_index(3);
      for (std::size_t c = 0; c < copies; ++c) dup.emplace_back(x.row(t).begin(), x.row(t).end());
    }
    EXPECT_EQ(pac(Ppg::create(x, inv), Ppg::create(Matrix::from_rows(dup), inv)), 0.0);
  }
}

TEST(Pac, RegressionOnFixedFixture) {
  // High-precision value from exhaustive path enumeration; guards against
  // drift in the DTW or JSD code.
  const PhonemeInventory inv({"a", "b", "c"});
  const Ppg edited = Ppg::create(Matrix{{0.8, 0.1, 0.1}, {0.6, 0.3, 0.1}, {0.2, 0.7, 0.1}}, inv);
  const Ppg syn = Ppg::create(Matrix{{0.7, 0.2, 0.1}, {0.1, 0.8, 0.1}}, inv);
  const auto r = pac_detail(edited, syn);
  EXPECT_EQ(r.m, 3u);
  EXPECT_EQ(r.n, 2u);
  EXPECT_NEAR(r.dtw_cost, 0.34237001608816167118, 1e-12);
  EXPECT_NEAR(r.pac, 0.11412333869605389039, 1e-12);
}

TEST(Pac, Errors) {
  const Ppg a = one_hot_frames(PhonemeInventory({"a", "b"}), {"a"});
  const Ppg b = one_hot_frames(PhonemeInventory({"a", "c"}), {"a"});
  try {
    pac(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInventoryMismatch);
  }
}

TEST(PitchMae, CentsIdentities) {
  const std::vector<double> b{100, 200, 0, 150};
  const std::vector<bool> mask{true, true, false, true};
  EXPECT_EQ(pitch_mae_cents(b, b, mask), 0.0);
  std::vector<double> octave = b, semitone = b;
  for (auto& v : octave) v *= 2.0;
  for (auto& v : semitone) v *= std::pow(2.0, 1.0 / 12.0);
  EXPECT_NEAR(pitch_mae_cents(octave, b, mask), 1200.0, 1e-9);
  EXPECT_NEAR(pitch_mae_cents(semitone, b, mask), 100.0, 1e-9);
}

TEST(PitchMae, Errors) {
  const std::vector<double> a{100, 120}, b{100, 0};
  auto code = [](auto x, auto y, std::vector<bool> mask) {
    try {
      pitch_mae_cents(x, y, mask);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidParameter;
  };
  EXPECT_EQ(code(a, b, {true, true}), ErrorCode::kNonPositivePitch);
  EXPECT_EQ(code(a, b, {false, false}), ErrorCode::kNoVoicedFrames);
  EXPECT_EQ(code(a, std::vector<double>{100}, {true, true}), ErrorCode::kLengthMismatch);
}

}  // namespace
}  // namespace ppgedit
