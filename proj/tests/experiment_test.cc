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

#include <nlohmann/json.hpp>
#include <sstream>

#include "ppgedit/error.h"
#include "ppgedit/experiment.h"

namespace ppgedit {
namespace {

const PhonemeInventory& finnish() {
  static const PhonemeInventory inv = PhonemeInventory::finnish();
  return inv;
}

Ppg runs(const std::vector<std::pair<std::string, std::size_t>>& layout) {
  std::size_t frames = 0;
  for (const auto& [_, n] : layout) frames += n;
  Matrix m(frames, finnish().size());
  std::size_t t = 0;
  for (const auto& [label, n] : layout)
    for (std::size_t k = 0; k < n; ++k) m(t++, finnish().index_of(label)) = 1.0;
  return Ppg::create(std::move(m), finnish());
}

TEST(RandomPpg, AlwaysEditableAndValid) {
  const auto table = EditTable::finnish_l2();
  const RandomPpgOptions opts;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const Ppg ppg = random_ppg(finnish(), table, rng);
    EXPECT_GE(ppg.num_frames(), opts.min_segments * opts.min_duration);
    EXPECT_LE(ppg.num_frames(), opts.max_segments * opts.max_duration);
    EXPECT_NO_THROW(select_random_edit(ppg, table, seed));
    for (std::size_t t = 0; t < ppg.num_frames(); ++t) {
      double sum = 0.0;
      for (std::size_t p = 0; p < finnish().size(); ++p) sum += ppg(t, p);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(Surrogate, NoNoiseNoWarpIsIdentity) {
  Rng rng(5);
  const Ppg ppg = random_ppg(finnish(), EditTable::finnish_l2(), rng);
  Rng srng(9);
  EXPECT_EQ(surrogate_synthesis(ppg, {0.0, 0.0, 4}, srng), ppg);
}

TEST(Surrogate, WarpChangesLengthWithinBounds) {
  Rng rng(6);
  const Ppg ppg = random_ppg(finnish(), EditTable::finnish_l2(), rng);
  bool changed = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng srng(seed);
    const Ppg out = surrogate_synthesis(ppg, {0.3, 0.2, 4}, srng);
    const double ratio = static_cast<double>(out.num_frames()) / ppg.num_frames();
    EXPECT_GE(ratio, 0.8 - 0.05);
    EXPECT_LE(ratio, 1.2 + 0.05);
    changed |= out.num_frames() != ppg.num_frames();
  }
  EXPECT_TRUE(changed);
}

TEST(Surrogate, SameSeedSameOutput) {
  Rng rng(7);
  const Ppg ppg = random_ppg(finnish(), EditTable::finnish_l2(), rng);
  Rng a(3), b(3);
  EXPECT_EQ(surrogate_synthesis(ppg, {}, a), surrogate_synthesis(ppg, {}, b));
}

TEST(Surrogate, RejectsBadOptions) {
  const Ppg ppg = runs({{"a", 3}});
  Rng rng(0);
  EXPECT_THROW(surrogate_synthesis(ppg, {1.5, 0.1, 4}, rng), Error);
  EXPECT_THROW(surrogate_synthesis(ppg, {0.1, 1.0, 4}, rng), Error);
}

TEST(FindRegion, IdentityMapsOntoItself) {
  const Ppg syn = runs({{"SIL", 2}, {"t", 2}, {"a", 3}, {"l", 2}, {"SIL", 3}});
  EXPECT_EQ(find_region(syn, {4, 7}, 12), (FrameRegion{4, 7}));
}

TEST(FindRegion, SnapsToNearbyRunEdges) {
  // Twice as long: the image of [4, 7) is [8, 14); the "a" run is [8, 15).
  const Ppg syn = runs({{"SIL", 4}, {"t", 4}, {"a", 7}, {"l", 4}, {"SIL", 5}});
  EXPECT_EQ(find_region(syn, {4, 7}, 12), (FrameRegion{8, 15}));
}

TEST(FindRegion, DoesNotSnapFarEdges) {
  // The image [4, 7) sits inside a long "a" run whose edges are 4 frames away.
  const Ppg syn = runs({{"t", 1}, {"a", 10}, {"t", 1}});
  EXPECT_EQ(find_region(syn, {4, 7}, 12), (FrameRegion{4, 7}));
}

TEST(FindRegion, StaysInBounds) {
  const Ppg syn = runs({{"a", 3}, {"t", 2}});
  const auto r = find_region(syn, {8, 10}, 10);
  EXPECT_LT(r.start, r.end);
  EXPECT_LE(r.end, 5u);
}

TEST(PacExperiment, ZeroNoiseZeroWarpGivesZeroFollowPac) {
  const auto e = run_pac_experiment(100, 0, finnish(), EditTable::finnish_l2(), {0.0, 0.0, 4});
  for (const auto& t : e.trials) {
    EXPECT_EQ(t.follow.pac, 0.0) << "seed " << t.seed;
    EXPECT_GT(t.ignore.pac, 0.0) << "seed " << t.seed;
  }
  EXPECT_EQ(e.discrimination(), 1.0);
}

TEST(PacExperiment, JobCountDoesNotChangeResults) {
  const auto table = EditTable::finnish_l2();
  const auto one = run_pac_experiment(24, 50, finnish(), table, {}, 1);
  const auto three = run_pac_experiment(24, 50, finnish(), table, {}, 3);
  std::ostringstream a, b;
  write_experiment_csv(one, a);
  write_experiment_csv(three, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(one.trials[3].seed, 53u);
}

TEST(PacExperiment, CsvHasOneRowPerSeed) {
  const auto e = run_pac_experiment(10, 0, finnish(), EditTable::finnish_l2(), {});
  std::ostringstream os;
  write_experiment_csv(e, os);
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 11);
  EXPECT_EQ(s.substr(0, s.find('\n')),
            "seed,source,target,region_start,region_end,m,n_follow,n_ignore,pac_follow,"
            "pac_ignore,follow_better");
  EXPECT_THROW(run_pac_experiment(0, 0, finnish(), EditTable::finnish_l2(), {}), Error);
}

TEST(PacExperiment, ReportFormats) {
  const auto e = run_pac_experiment(3, 7, finnish(), EditTable::finnish_l2(), {});
  const auto entries = pac_report_entries(e);
  ASSERT_EQ(entries.size(), 6u);
  EXPECT_EQ(entries[0].pair_id, "seed7-follow");
  EXPECT_EQ(entries[1].pair_id, "seed7-ignore");

  const auto j = nlohmann::json::parse(pac_report_json(entries));
  ASSERT_EQ(j.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(j[i]["pair_id"], entries[i].pair_id);
    EXPECT_EQ(j[i]["pac"].get<double>(), entries[i].result.pac);
    EXPECT_EQ(j[i]["m"].get<std::size_t>(), entries[i].result.m);
    EXPECT_EQ(j[i]["n"].get<std::size_t>(), entries[i].result.n);
    EXPECT_EQ(j[i]["dtw_cost"].get<double>(), entries[i].result.dtw_cost);
  }

  std::ostringstream csv;
  write_pac_report_csv(entries, csv);
  const std::string s = csv.str();
  EXPECT_EQ(s.substr(0, s.find('\n')), "pair_id,pac,m,n,dtw_cost");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
}

TEST(PacExperiment, DefaultsDiscriminate) {
  const auto e = run_pac_experiment(100, 0, finnish(), EditTable::finnish_l2(), {});
  EXPECT_GE(e.discrimination(), 0.95);
}

}  // namespace
}  // namespace ppgedit
