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

#ifndef PPGEDIT_EXPERIMENT_H_
#define PPGEDIT_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ppgedit/edit.h"
#include "ppgedit/metrics.h"
#include "ppgedit/ppg.h"
#include "ppgedit/random.h"

namespace ppgedit {

// Synthetic PPGs: runs of a dominant phoneme with soft posteriors.
struct RandomPpgOptions {
  std::size_t min_segments = 6;
  std::size_t max_segments = 12;
  std::size_t min_duration = 3;
  std::size_t max_duration = 10;
  double min_peak = 0.55;  // dominant-class mass range per frame
  double max_peak = 0.9;
  double editable_bias = 0.4;  // probability a segment label is drawn from the table sources
  double frame_period = kDefaultFramePeriod;
};

// Always contains at least one segment labelled with an edit source.
Ppg random_ppg(const PhonemeInventory& inventory, const EditTable& table, Rng& rng,
               const RandomPpgOptions& options = {});

// Stand-in for "synthesize speech, then re-extract its PPG": a monotone
// piecewise-linear time warp followed by mixing each frame with a
// symmetric Dirichlet draw. The warp is a global length change of up to
// +-warp plus local tempo jitter: each of the knots + 1 pieces gets a
// relative duration 1 +- warp/2. warp = 0 leaves timing untouched.
struct SurrogateOptions {
  double noise = 0.3;  // Dirichlet mixing weight in [0, 1]
  double warp = 0.2;   // in [0, 1)
  std::size_t knots = 4;
};

Ppg surrogate_synthesis(const Ppg& ppg, const SurrogateOptions& options, Rng& rng);

// Maps `edited_region` of a PPG with `edited_frames` frames onto `syn` in
// proportion to time, then snaps each edge of that image to the nearest
// boundary of a run of the image's majority argmax label, if one lies
// strictly within 2 frames; other edges stay put.
FrameRegion find_region(const Ppg& syn, FrameRegion edited_region, std::size_t edited_frames);

struct PacTrial {
  std::uint64_t seed = 0;
  EditRecord record;
  PacResult follow;  // surrogate of the edited PPG
  PacResult ignore;  // surrogate of the unedited PPG
  bool follow_better() const { return follow.pac < ignore.pac; }
};

// One seeded trial: random PPG, random edit, paired surrogates (same warp
// and noise draws), PAC of each against the edited region.
PacTrial run_pac_trial(std::uint64_t seed, const PhonemeInventory& inventory,
                       const EditTable& table, const SurrogateOptions& surrogate,
                       const RandomPpgOptions& ppg_options = {});

struct PacExperiment {
  std::vector<PacTrial> trials;
  double discrimination() const;  // fraction of trials with follow_better()
};

// Seeds base_seed, base_seed + 1, ...; results are in seed order whatever
// the job count.
PacExperiment run_pac_experiment(std::size_t num_seeds, std::uint64_t base_seed,
                                 const PhonemeInventory& inventory, const EditTable& table,
                                 const SurrogateOptions& surrogate, unsigned jobs = 1,
                                 const RandomPpgOptions& ppg_options = {});

void write_experiment_csv(const PacExperiment& experiment, std::ostream& os);

struct PacReportEntry {
  std::string pair_id;
  PacResult result;
};

// JSON array of {pair_id, pac, m, n, dtw_cost}, and the same as CSV.
std::string pac_report_json(const std::vector<PacReportEntry>& entries);
void write_pac_report_csv(const std::vector<PacReportEntry>& entries, std::ostream& os);
std::vector<PacReportEntry> pac_report_entries(const PacExperiment& experiment);

}  // namespace ppgedit

#endif  // PPGEDIT_EXPERIMENT_H_
