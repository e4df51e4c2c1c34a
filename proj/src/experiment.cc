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

#include "ppgedit/experiment.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "ppgedit/flowmatch/train.h"
#include "ppgedit/ppg_io.h"

namespace ppgedit {
namespace {

// An image edge moves to a run boundary strictly closer than this many
// frames. Shorter than any segment random_ppg emits by default, so a
// correctly placed edge never swallows a neighbouring run.
constexpr double kSnapFrames = 2.0;

// Local tempo jitter of the surrogate warp, relative to the global stretch.
constexpr double kJitterFraction = 0.5;

}  // namespace

Ppg random_ppg(const PhonemeInventory& inventory, const EditTable& table, Rng& rng,
               const RandomPpgOptions& options) {
  table.check_against(inventory);
  if (inventory.size() < 2 || options.min_segments == 0 ||
      options.min_segments > options.max_segments || options.min_duration == 0 ||
      options.min_duration > options.max_duration || !(options.min_peak > 0.0) ||
      options.min_peak > options.max_peak || options.max_peak > 1.0)
    throw Error(ErrorCode::kInvalidParameter, "invalid random PPG options");

  std::vector<std::size_t> sources;
  for (const auto& [source, _] : table.rules()) sources.push_back(inventory.index_of(source));
  if (sources.empty()) throw Error(ErrorCode::kInvalidParameter, "edit table is empty");

  const std::size_t phonemes = inventory.size();
  for (;;) {
    const std::size_t num_segments =
        options.min_segments +
        rng.uniform_index(options.max_segments - options.min_segments + 1);
    std::vector<std::size_t> labels;
    std::vector<std::size_t> durations;
    bool editable = false;
    for (std::size_t s = 0; s < num_segments; ++s) {
      std::size_t label;
      do {
        label = rng.bernoulli(options.editable_bias) ? sources[rng.uniform_index(sources.size())]
                                                     : rng.uniform_index(phonemes);
      } while (!labels.empty() && label == labels.back());
      editable |= table.has_source(inventory.label(label));
      labels.push_back(label);
      durations.push_back(options.min_duration +
                          rng.uniform_index(options.max_duration - options.min_duration + 1));
    }
    if (!editable) continue;

    std::size_t frames = 0;
    for (auto d : durations) frames += d;
    Matrix matrix(frames, phonemes);
    std::vector<double> alpha(phonemes - 1, 0.3), rest(phonemes - 1);
    std::size_t t = 0;
    for (std::size_t s = 0; s < num_segments; ++s) {
      for (std::size_t k = 0; k < durations[s]; ++k, ++t) {
        const double peak = rng.uniform(options.min_peak, options.max_peak);
        rng.dirichlet(alpha, rest);
        auto row = matrix.row(t);
        for (std::size_t p = 0, r = 0; p < phonemes; ++p)
          row[p] = p == labels[s] ? peak : (1.0 - peak) * rest[r++];
      }
    }
    return Ppg::create(std::move(matrix), inventory, options.frame_period,
                       Ppg::Renormalize::kYes);
  }
}

Ppg surrogate_synthesis(const Ppg& ppg, const SurrogateOptions& options, Rng& rng) {
  if (!(options.noise >= 0.0 && options.noise <= 1.0) ||
      !(options.warp >= 0.0 && options.warp < 1.0))
    throw Error(ErrorCode::kInvalidParameter, "noise must be in [0, 1] and warp in [0, 1)");

  const std::size_t frames = ppg.num_frames();
  const double stretch = rng.uniform(-options.warp, options.warp);
  const auto out_frames = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(static_cast<double>(frames) * (1.0 + stretch))));

  // Monotone piecewise-linear map from output time to source time.
  const std::size_t pieces = options.knots + 1;
  std::vector<double> x(pieces + 1), y(pieces + 1, 0.0);
  for (std::size_t k = 0; k <= pieces; ++k)
    x[k] = static_cast<double>(k) / static_cast<double>(pieces);
  for (std::size_t k = 0; k < pieces; ++k)
    y[k + 1] = y[k] + 1.0 + kJitterFraction * options.warp * rng.uniform(-1.0, 1.0);
  for (double& v : y) v /= y.back();
  y.back() = 1.0;

  const std::size_t phonemes = ppg.num_phonemes();
  Matrix out(out_frames, phonemes);
  std::vector<double> ones(phonemes, 1.0), noise(phonemes);
  for (std::size_t j = 0; j < out_frames; ++j) {
    const double u = (static_cast<double>(j) + 0.5) / static_cast<double>(out_frames);
    std::size_t k = std::min(pieces - 1, static_cast<std::size_t>(u * pieces));
    while (k > 0 && u < x[k]) --k;
    while (k + 1 < pieces && u >= x[k + 1]) ++k;
    const double pos = y[k] + (u - x[k]) / (x[k + 1] - x[k]) * (y[k + 1] - y[k]);
    const auto src = std::min(frames - 1, static_cast<std::size_t>(
                                              std::max(0.0, std::floor(pos * frames))));
    auto row = out.row(j);
    const auto in = ppg.frame(src);
    std::copy(in.begin(), in.end(), row.begin());
    if (options.noise > 0.0) {
      rng.dirichlet(ones, noise);
      for (std::size_t p = 0; p < phonemes; ++p)
        row[p] = (1.0 - options.noise) * row[p] + options.noise * noise[p];
    }
  }
  // Copied rows are already stochastic; only mixed ones need renormalising.
  return Ppg::create(std::move(out), ppg.inventory(), ppg.frame_period(),
                     options.noise > 0.0 ? Ppg::Renormalize::kYes : Ppg::Renormalize::kNo);
}

FrameRegion find_region(const Ppg& syn, FrameRegion edited_region, std::size_t edited_frames) {
  if (edited_region.empty() || edited_region.end > edited_frames)
    throw Error(ErrorCode::kOutOfBounds, "edited region outside the edited PPG");
  const std::size_t frames = syn.num_frames();
  const double scale = static_cast<double>(frames) / static_cast<double>(edited_frames);
  const double lo = static_cast<double>(edited_region.start) * scale;
  const double hi = static_cast<double>(edited_region.end) * scale;

  const auto labels = argmax_labels(syn);
  auto clamp_frame = [frames](double v) {
    return static_cast<std::size_t>(std::clamp(v, 0.0, static_cast<double>(frames)));
  };
  const std::size_t first = std::min(frames - 1, clamp_frame(std::floor(lo)));
  const std::size_t last = std::max(first + 1, clamp_frame(std::ceil(hi)));

  // Majority label inside the image; ties go to the lower phoneme index.
  std::vector<std::size_t> counts(syn.num_phonemes(), 0);
  for (std::size_t t = first; t < last; ++t) ++counts[labels[t]];
  const auto dominant = static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());

  // Each image edge moves to the nearest edge of a dominant-label run when
  // that is strictly closer than kSnapFrames; otherwise it stays put.
  auto within = [](std::size_t b, double edge) {
    return std::abs(static_cast<double>(b) - edge) < kSnapFrames;
  };
  std::size_t start = clamp_frame(std::round(lo));
  {
    std::size_t b = first;
    if (labels[b] == dominant) {
      while (b > 0 && labels[b - 1] == dominant) --b;
    } else {
      while (b < frames && labels[b] != dominant) ++b;
    }
    if (b < frames && within(b, lo)) start = b;
  }
  std::size_t end = clamp_frame(std::round(hi));
  {
    std::size_t b = last;  // candidate run end, exclusive
    if (labels[b - 1] == dominant) {
      while (b < frames && labels[b] == dominant) ++b;
    } else {
      while (b > 0 && labels[b - 1] != dominant) --b;
    }
    if (b > 0 && within(b, hi)) end = b;
  }
  if (end <= start) {
    start = first;
    end = last;
  }
  if (start >= end || end > frames)
    throw Error(ErrorCode::kRegionNotFound, "no synthesized region matches the edit");
  return {start, end};
}

PacTrial run_pac_trial(std::uint64_t seed, const PhonemeInventory& inventory,
                       const EditTable& table, const SurrogateOptions& surrogate,
                       const RandomPpgOptions& ppg_options) {
  using flowmatch::mix_seed;
  PacTrial trial;
  trial.seed = seed;
  Rng ppg_rng(mix_seed(seed, 0));
  const Ppg original = random_ppg(inventory, table, ppg_rng, ppg_options);
  trial.record = select_random_edit(original, table, mix_seed(seed, 1));
  const auto [edited, region] = apply_edit(original, trial.record);
  const Ppg edited_region = edited.slice(region.start, region.end);

  // Both surrogates see identical warp and noise draws.
  Rng follow_rng(mix_seed(seed, 2));
  Rng ignore_rng(mix_seed(seed, 2));
  const Ppg follow = surrogate_synthesis(edited, surrogate, follow_rng);
  const Ppg ignore = surrogate_synthesis(original, surrogate, ignore_rng);

  const auto follow_region = find_region(follow, region, edited.num_frames());
  const auto ignore_region = find_region(ignore, region, edited.num_frames());
  trial.follow = pac_detail(edited_region, follow.slice(follow_region.start, follow_region.end));
  trial.ignore = pac_detail(edited_region, ignore.slice(ignore_region.start, ignore_region.end));
  return trial;
}

double PacExperiment::discrimination() const {
  if (trials.empty()) return 0.0;
  const auto wins = std::count_if(trials.begin(), trials.end(),
                                  [](const PacTrial& t) { return t.follow_better(); });
  return static_cast<double>(wins) / static_cast<double>(trials.size());
}

PacExperiment run_pac_experiment(std::size_t num_seeds, std::uint64_t base_seed,
                                 const PhonemeInventory& inventory, const EditTable& table,
                                 const SurrogateOptions& surrogate, unsigned jobs,
                                 const RandomPpgOptions& ppg_options) {
  if (num_seeds == 0) throw Error(ErrorCode::kInvalidParameter, "need at least one seed");
  PacExperiment experiment;
  experiment.trials.resize(num_seeds);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(num_seeds)));

  // Each worker owns a strided subset of slots; no shared mutable state.
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < num_seeds; i += jobs)
        experiment.trials[i] =
            run_pac_trial(base_seed + i, inventory, table, surrogate, ppg_options);
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return experiment;
}

void write_experiment_csv(const PacExperiment& experiment, std::ostream& os) {
  os << "seed,source,target,region_start,region_end,m,n_follow,n_ignore,pac_follow,"
        "pac_ignore,follow_better\n";
  for (const auto& t : experiment.trials) {
    os << t.seed << ',' << t.record.source << ',' << t.record.target << ','
       << t.record.region.start << ',' << t.record.region.end << ',' << t.follow.m << ','
       << t.follow.n << ',' << t.ignore.n << ',' << format_double(t.follow.pac) << ','
       << format_double(t.ignore.pac) << ',' << (t.follow_better() ? 1 : 0) << '\n';
  }
}

std::string pac_report_json(const std::vector<PacReportEntry>& entries) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["pair_id"] = e.pair_id;
    j["pac"] = e.result.pac;
    j["m"] = e.result.m;
    j["n"] = e.result.n;
    j["dtw_cost"] = e.result.dtw_cost;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_pac_report_csv(const std::vector<PacReportEntry>& entries, std::ostream& os) {
  os << "pair_id,pac,m,n,dtw_cost\n";
  for (const auto& e : entries)
    os << e.pair_id << ',' << format_double(e.result.pac) << ',' << e.result.m << ','
       << e.result.n << ',' << format_double(e.result.dtw_cost) << '\n';
}

std::vector<PacReportEntry> pac_report_entries(const PacExperiment& experiment) {
  std::vector<PacReportEntry> entries;
  for (const auto& t : experiment.trials) {
    entries.push_back({"seed" + std::to_string(t.seed) + "-follow", t.follow});
    entries.push_back({"seed" + std::to_string(t.seed) + "-ignore", t.ignore});
  }
  return entries;
}

}  // namespace ppgedit
