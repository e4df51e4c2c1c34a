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

#include "ppgedit/cli.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppgedit/edit.h"
#include "ppgedit/experiment.h"
#include "ppgedit/flowmatch/checkpoint.h"
#include "ppgedit/flowmatch/guidance.h"
#include "ppgedit/flowmatch/sampler.h"
#include "ppgedit/flowmatch/schedule.h"
#include "ppgedit/flowmatch/toy_task.h"
#include "ppgedit/flowmatch/train.h"
#include "ppgedit/metrics.h"
#include "ppgedit/ppg_io.h"

namespace ppgedit::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoEditablePhoneme:
    case ErrorCode::kRegionNotFound:
    case ErrorCode::kNoVoicedFrames:
    case ErrorCode::kDivergedTraining:
      return kExitDomainError;
    default:
      return kExitInputError;
  }
}

namespace {

namespace fm = flowmatch;
using ordered_json = nlohmann::ordered_json;

template <typename T>
struct is_vector : std::false_type {};
template <typename T>
struct is_vector<std::vector<T>> : std::true_type {};

// "--p-uncon" -> "p_uncon"; positionals keep their name.
std::string config_key(const std::string& name) {
  std::string key = name.substr(name.find_first_not_of('-'));
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

// A flag or positional whose value may also come from the --config file.
// Values given on the command line win.
struct Binding {
  std::string key;
  CLI::Option* option = nullptr;
  bool required = false;
  bool from_config = false;
  std::function<void(const nlohmann::json&)> load;
  std::function<ordered_json()> dump;

  bool given() const { return option->count() > 0 || from_config; }
};

class Bindings {
 public:
  template <typename T>
  void add(CLI::App* app, const std::string& name, T& value, const std::string& help,
           bool required = false) {
    CLI::Option* option = app->add_option(name, value, help)->capture_default_str();
    if constexpr (is_vector<T>::value) option->delimiter(',');
    Binding b;
    b.key = config_key(name);
    b.option = option;
    b.required = required;
    b.load = [&value](const nlohmann::json& j) { value = j.get<T>(); };
    b.dump = [&value] { return ordered_json(value); };
    by_app_[app].push_back(std::move(b));
    known_.insert(config_key(name));
  }

  std::vector<Binding>& of(CLI::App* app) { return by_app_[app]; }
  bool known(const std::string& key) const { return known_.contains(key); }

 private:
  std::map<CLI::App*, std::vector<Binding>> by_app_;
  std::set<std::string> known_;
};

void merge_config(const std::string& path, std::vector<Binding*>& active, const Bindings& all) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  if (!config.is_object())
    throw Error(ErrorCode::kInvalidConfig, path + ": top level must be a JSON object");
  for (const auto& [key, _] : config.items())
    if (!all.known(key)) throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'");
  for (Binding* b : active) {
    if (b->option->count() > 0 || !config.contains(b->key)) continue;
    try {
      b->load(config.at(b->key));
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "config key '" + b->key + "' has the wrong type");
    }
    b->from_config = true;
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot write " + path);
  return os;
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  auto os = open_output(path);
  writer(os);
  if (!os) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct Context {
  const Globals& globals;
  ordered_json resolved;
  std::ostream& out;

  // Records the resolved configuration next to a primary output file.
  void sidecar(const std::string& output) const {
    save_text(output + ".config.json", resolved.dump(2) + "\n");
  }
  std::ostream* info() const { return globals.quiet ? nullptr : &out; }
};

// ---- inspect ---------------------------------------------------------------

struct InspectArgs {
  std::string ppg;
  double frame_period = kDefaultFramePeriod;
};

void cmd_inspect(const InspectArgs& a, Context& ctx) {
  const Ppg ppg = load_ppg(a.ppg, a.frame_period);
  const auto labels = argmax_labels(ppg);
  std::vector<std::size_t> counts(ppg.num_phonemes(), 0);
  for (auto l : labels) ++counts[l];

  std::ostream& os = ctx.out;
  os << "frames: " << ppg.num_frames() << '\n'
     << "phonemes: " << ppg.num_phonemes() << '\n'
     << "frame_period: " << format_double(ppg.frame_period()) << '\n'
     << "label_frames:\n";
  for (std::size_t p = 0; p < counts.size(); ++p)
    if (counts[p] > 0) os << "  " << ppg.inventory().label(p) << ' ' << counts[p] << '\n';
  const auto segments = argmax_segments(ppg);
  os << "segments: " << segments.size() << '\n';
  for (std::size_t i = 0; i < segments.size(); ++i)
    os << "  " << i << ' ' << ppg.inventory().label(segments[i].label) << ' ' << segments[i].start << ' '
       << segments[i].end << '\n';
}

// ---- edit ------------------------------------------------------------------

struct EditArgs {
  std::string ppg;
  std::string table;  // empty: bundled table
  std::string out;
  std::string record;
  double frame_period = kDefaultFramePeriod;
};

void cmd_edit(const EditArgs& a, Context& ctx) {
  const Ppg ppg = load_ppg(a.ppg, a.frame_period);
  const EditTable table = a.table.empty() ? EditTable::finnish_l2() : load_edit_table(a.table);
  const EditRecord record = select_random_edit(ppg, table, ctx.globals.seed);
  const auto result = apply_edit(ppg, record);
  save_ppg(result.ppg, a.out, format_for_path(a.out));
  save_text(a.record, record.to_json());
  ctx.sidecar(a.out);
  if (auto* os = ctx.info())
    *os << "edited " << record.source << " -> " << record.target << " over frames ["
        << record.region.start << ", " << record.region.end << ") (segment "
        << record.segment_index << ")\n";
}

// ---- pac -------------------------------------------------------------------

struct PacArgs {
  std::string edited;
  std::string syn;
  std::string record;
  double frame_period = kDefaultFramePeriod;
};

void cmd_pac(const PacArgs& a, Context& ctx) {
  const Ppg edited = load_ppg(a.edited, a.frame_period);
  const Ppg syn = load_ppg(a.syn, a.frame_period);
  const EditRecord record = load_edit_record(a.record);
  if (edited.inventory() != syn.inventory())
    throw Error(ErrorCode::kInventoryMismatch, "edited and synthesized PPGs use different inventories");
  if (record.region.empty() || record.region.end > edited.num_frames())
    throw Error(ErrorCode::kOutOfBounds, "record region lies outside the edited PPG");
  const FrameRegion found = find_region(syn, record.region, edited.num_frames());
  const PacResult r = pac_detail(edited.slice(record.region.start, record.region.end),
                                 syn.slice(found.start, found.end));
  ordered_json j;
  j["pac"] = r.pac;
  j["m"] = r.m;
  j["n"] = r.n;
  ctx.out << j.dump() << '\n';
}

// ---- experiment-pac --------------------------------------------------------

struct ExperimentArgs {
  std::size_t seeds = 100;
  double noise = SurrogateOptions{}.noise;
  double warp = SurrogateOptions{}.warp;
  std::size_t knots = SurrogateOptions{}.knots;
  unsigned jobs = 1;
  std::string out;
  std::string report_json;
  std::string report_csv;
};

void cmd_experiment_pac(const ExperimentArgs& a, Context& ctx) {
  if (a.seeds == 0 || a.jobs == 0)
    throw Error(ErrorCode::kInvalidParameter, "--seeds and --jobs must be positive");
  SurrogateOptions surrogate;
  surrogate.noise = a.noise;
  surrogate.warp = a.warp;
  surrogate.knots = a.knots;
  const auto experiment =
      run_pac_experiment(a.seeds, ctx.globals.seed, PhonemeInventory::finnish(),
                         EditTable::finnish_l2(), surrogate, a.jobs);
  write_file(a.out, [&](std::ostream& os) { write_experiment_csv(experiment, os); });
  if (!a.report_json.empty() || !a.report_csv.empty()) {
    const auto entries = pac_report_entries(experiment);
    if (!a.report_json.empty()) save_text(a.report_json, pac_report_json(entries));
    if (!a.report_csv.empty())
      write_file(a.report_csv, [&](std::ostream& os) { write_pac_report_csv(entries, os); });
  }
  ctx.sidecar(a.out);
  const auto wins = std::count_if(experiment.trials.begin(), experiment.trials.end(),
                                  [](const PacTrial& t) { return t.follow_better(); });
  if (auto* os = ctx.info())
    *os << "discrimination " << format_double(experiment.discrimination()) << " (" << wins
        << '/' << experiment.trials.size() << " seeds)\n";
}

// ---- schedule --------------------------------------------------------------

struct ScheduleArgs {
  std::size_t steps = fm::GuidanceConfig{}.n;
  double sway = fm::GuidanceConfig{}.s;
  std::string out;  // empty: stdout
};

void cmd_schedule(const ScheduleArgs& a, Context& ctx) {
  const auto schedule = fm::SamplerSchedule::sway(a.steps, a.sway);
  if (a.out.empty()) {
    schedule.write_csv(ctx.out);
    return;
  }
  write_file(a.out, [&](std::ostream& os) { schedule.write_csv(os); });
  ctx.sidecar(a.out);
}

// ---- train-toy -------------------------------------------------------------

struct TrainArgs {
  std::string out;
  std::string loss_csv;  // empty: <out>.loss.csv
  std::size_t updates = fm::TrainConfig{}.updates;
  std::size_t batch_size = fm::TrainConfig{}.batch_size;
  std::size_t warmup = fm::TrainConfig{}.warmup;
  double lr_max = fm::TrainConfig{}.lr_max;
  double lr_min = fm::TrainConfig{}.lr_min;
  double p_uncon = fm::TrainConfig{}.p_uncon;
  std::string dropout = "per-batch";
  std::vector<std::uint32_t> hidden = fm::MlpConfig{}.hidden;
  std::uint32_t cond_dim = fm::MlpConfig{}.cond_dim;
  std::uint32_t time_frequencies = fm::MlpConfig{}.time_frequencies;
  std::string activation = "silu";
  std::size_t modes = 8;
  double radius = 4.0;
  double stddev = 0.2;
};

fm::Activation parse_activation(const std::string& name) {
  if (name == "silu") return fm::Activation::kSilu;
  if (name == "tanh") return fm::Activation::kTanh;
  throw Error(ErrorCode::kInvalidConfig, "activation must be 'silu' or 'tanh', got '" + name + "'");
}

fm::DropoutGranularity parse_dropout(const std::string& name) {
  if (name == "per-batch") return fm::DropoutGranularity::kPerBatch;
  if (name == "per-item") return fm::DropoutGranularity::kPerItem;
  throw Error(ErrorCode::kInvalidConfig,
              "dropout must be 'per-batch' or 'per-item', got '" + name + "'");
}

void cmd_train_toy(const TrainArgs& a, Context& ctx) {
  const fm::GaussianRingTask task(a.modes, a.radius, a.stddev);
  fm::TrainConfig config;
  config.model.data_dim = static_cast<std::uint32_t>(task.dim());
  config.model.num_classes = static_cast<std::uint32_t>(task.num_classes());
  config.model.cond_dim = a.cond_dim;
  config.model.time_frequencies = a.time_frequencies;
  config.model.hidden = a.hidden;
  config.model.activation = parse_activation(a.activation);
  config.batch_size = a.batch_size;
  config.updates = a.updates;
  config.warmup = a.warmup;
  config.lr_max = a.lr_max;
  config.lr_min = a.lr_min;
  config.p_uncon = a.p_uncon;
  config.dropout = parse_dropout(a.dropout);
  config.seed = ctx.globals.seed;

  const auto result = fm::train_toy(config, task);
  fm::save_checkpoint(result.model, std::filesystem::path(a.out));
  const std::string loss_path = a.loss_csv.empty() ? a.out + ".loss.csv" : a.loss_csv;
  write_file(loss_path, [&](std::ostream& os) { fm::write_loss_csv(result.losses, os); });
  ctx.sidecar(a.out);
  if (auto* os = ctx.info())
    *os << "trained " << result.losses.size() << " updates, final loss "
        << format_double(result.losses.back()) << ", " << result.dropped_batches
        << " unconditional batches\n";
}

// ---- sample ----------------------------------------------------------------

struct SampleArgs {
  std::string checkpoint;
  std::string out;
  std::size_t steps = fm::GuidanceConfig{}.n;
  double sway = fm::GuidanceConfig{}.s;
  double w = fm::GuidanceConfig{}.w;
  std::size_t count = 1000;
  double radius = 4.0;
  double stddev = 0.2;
};

void cmd_sample(const SampleArgs& a, Context& ctx) {
  const fm::Mlp model = fm::load_checkpoint(std::filesystem::path(a.checkpoint));
  if (model.config().data_dim != 2)
    throw Error(ErrorCode::kInvalidParameter, "checkpoint is not a 2-D ring model");
  const fm::GaussianRingTask task(model.config().num_classes, a.radius, a.stddev);
  fm::GuidanceConfig guidance;
  guidance.w = a.w;
  guidance.s = a.sway;
  guidance.n = a.steps;
  guidance.validate();
  if (a.count == 0) throw Error(ErrorCode::kInvalidParameter, "--count must be positive");

  const std::size_t modes = task.num_classes();
  std::vector<fm::Condition> conditions(a.count);
  for (std::size_t i = 0; i < a.count; ++i) conditions[i] = static_cast<int>(i % modes);
  const auto schedule = fm::SamplerSchedule::sway(guidance.n, guidance.s);
  const fm::RowMatrix x =
      fm::sample_from_prior(model, schedule, conditions, guidance.w, ctx.globals.seed);

  std::vector<std::size_t> hits(modes, 0), totals(modes, 0);
  std::vector<int> nearest(a.count);
  for (std::size_t i = 0; i < a.count; ++i) {
    const double point[2] = {x(static_cast<Eigen::Index>(i), 0),
                             x(static_cast<Eigen::Index>(i), 1)};
    nearest[i] = task.classify(point);
    ++totals[i % modes];
    if (nearest[i] == *conditions[i]) ++hits[i % modes];
  }

  if (!a.out.empty()) {
    write_file(a.out, [&](std::ostream& os) {
      os << "index,condition,x,y,nearest_mode,correct\n";
      for (std::size_t i = 0; i < a.count; ++i)
        os << i << ',' << *conditions[i] << ',' << format_double(x(static_cast<Eigen::Index>(i), 0))
           << ',' << format_double(x(static_cast<Eigen::Index>(i), 1)) << ',' << nearest[i]
           << ',' << (nearest[i] == *conditions[i] ? 1 : 0) << '\n';
    });
    ctx.sidecar(a.out);
  }

  if (std::ostream* os = a.out.empty() ? &ctx.out : ctx.info()) {
    std::size_t all = 0;
    for (std::size_t m = 0; m < modes; ++m) {
      all += hits[m];
      *os << "mode " << m << " accuracy "
          << format_double(static_cast<double>(hits[m]) / static_cast<double>(totals[m]))
          << " (" << hits[m] << '/' << totals[m] << ")\n";
    }
    *os << "overall accuracy "
        << format_double(static_cast<double>(all) / static_cast<double>(a.count)) << " ("
        << all << '/' << a.count << ")\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PPG editing, PAC evaluation and toy flow-matching tools", "ppgedit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  Bindings bindings;
  app.add_option("--config", globals.config, "JSON file of option values; flags override it");
  bindings.add(&app, "--seed", globals.seed, "Seed for every random draw");
  app.add_flag("--quiet,-q", globals.quiet, "Suppress informational output");

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a PPG file");
  bindings.add(inspect_cmd, "ppg", inspect.ppg, "PPG file (binary or CSV)", true);
  bindings.add(inspect_cmd, "--frame-period", inspect.frame_period, "Frame period for CSV input");

  EditArgs edit;
  auto* edit_cmd = app.add_subcommand("edit", "Apply a seeded random phoneme edit");
  bindings.add(edit_cmd, "ppg", edit.ppg, "Input PPG file", true);
  bindings.add(edit_cmd, "--table", edit.table, "Edit table JSON (default: bundled L2 table)");
  bindings.add(edit_cmd, "--out", edit.out, "Edited PPG (.ppg/.bin binary, else CSV)", true);
  bindings.add(edit_cmd, "--record", edit.record, "Edit record JSON output", true);
  bindings.add(edit_cmd, "--frame-period", edit.frame_period, "Frame period for CSV input");

  PacArgs pac;
  auto* pac_cmd = app.add_subcommand("pac", "PAC between an edited PPG and a synthesized one");
  bindings.add(pac_cmd, "edited", pac.edited, "Edited PPG", true);
  bindings.add(pac_cmd, "syn", pac.syn, "PPG extracted from synthesized speech", true);
  bindings.add(pac_cmd, "record", pac.record, "Edit record JSON", true);
  bindings.add(pac_cmd, "--frame-period", pac.frame_period, "Frame period for CSV input");

  ExperimentArgs experiment;
  auto* experiment_cmd =
      app.add_subcommand("experiment-pac", "Synthetic PAC discrimination experiment");
  bindings.add(experiment_cmd, "--seeds", experiment.seeds, "Number of trials");
  bindings.add(experiment_cmd, "--noise", experiment.noise, "Surrogate Dirichlet mixing weight");
  bindings.add(experiment_cmd, "--warp", experiment.warp, "Surrogate time-warp strength");
  bindings.add(experiment_cmd, "--knots", experiment.knots, "Interior knots of the time warp");
  bindings.add(experiment_cmd, "--jobs", experiment.jobs, "Worker threads");
  bindings.add(experiment_cmd, "--out", experiment.out, "Per-seed CSV", true);
  bindings.add(experiment_cmd, "--report-json", experiment.report_json, "PAC report (JSON)");
  bindings.add(experiment_cmd, "--report-csv", experiment.report_csv, "PAC report (CSV)");

  ScheduleArgs schedule;
  auto* schedule_cmd = app.add_subcommand("schedule", "Write a sway sampling schedule");
  bindings.add(schedule_cmd, "--steps", schedule.steps, "Number of Euler steps");
  bindings.add(schedule_cmd, "--sway", schedule.sway, "Sway coefficient s");
  bindings.add(schedule_cmd, "--out", schedule.out, "CSV output (default: stdout)");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train-toy", "Train a flow-matching model on the ring task");
  bindings.add(train_cmd, "--out", train.out, "Checkpoint output", true);
  bindings.add(train_cmd, "--loss-csv", train.loss_csv, "Loss curve (default: <out>.loss.csv)");
  bindings.add(train_cmd, "--updates", train.updates, "Optimizer updates");
  bindings.add(train_cmd, "--batch-size", train.batch_size, "Batch size");
  bindings.add(train_cmd, "--warmup", train.warmup, "Linear warmup updates");
  bindings.add(train_cmd, "--lr-max", train.lr_max, "Peak learning rate");
  bindings.add(train_cmd, "--lr-min", train.lr_min, "Final learning rate");
  bindings.add(train_cmd, "--p-uncon", train.p_uncon, "Condition dropout probability");
  bindings.add(train_cmd, "--dropout", train.dropout, "per-batch or per-item");
  bindings.add(train_cmd, "--hidden", train.hidden, "Hidden widths, comma separated");
  bindings.add(train_cmd, "--cond-dim", train.cond_dim, "Condition embedding width");
  bindings.add(train_cmd, "--time-frequencies", train.time_frequencies, "Sinusoidal time pairs");
  bindings.add(train_cmd, "--activation", train.activation, "silu or tanh");
  bindings.add(train_cmd, "--modes", train.modes, "Ring modes");
  bindings.add(train_cmd, "--radius", train.radius, "Ring radius");
  bindings.add(train_cmd, "--std", train.stddev, "Per-mode standard deviation");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a trained toy model");
  bindings.add(sample_cmd, "checkpoint", sample.checkpoint, "Checkpoint file", true);
  bindings.add(sample_cmd, "--out", sample.out, "Per-sample CSV");
  bindings.add(sample_cmd, "--steps", sample.steps, "Number of Euler steps");
  bindings.add(sample_cmd, "--sway", sample.sway, "Sway coefficient s");
  bindings.add(sample_cmd, "--w", sample.w, "Guidance strength");
  bindings.add(sample_cmd, "--count", sample.count, "Samples, cycling through the modes");
  bindings.add(sample_cmd, "--radius", sample.radius, "Ring radius");
  bindings.add(sample_cmd, "--std", sample.stddev, "Per-mode standard deviation");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {  // includes --help

    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? kExitOk : kExitInputError;
  }

  CLI::App* command = app.get_subcommands().front();
  try {
    std::vector<Binding*> active;
    for (auto& b : bindings.of(&app)) active.push_back(&b);
    for (auto& b : bindings.of(command)) active.push_back(&b);
    if (!globals.config.empty()) merge_config(globals.config, active, bindings);
    for (Binding* b : active)
      if (b->required && !b->given())
        throw Error(ErrorCode::kInvalidParameter, b->option->get_name() + " is required");

    Context ctx{globals, ordered_json::object(), out};
    ctx.resolved["command"] = command->get_name();
    for (Binding* b : active) ctx.resolved[b->key] = b->dump();

    if (command == inspect_cmd) cmd_inspect(inspect, ctx);
    else if (command == edit_cmd) cmd_edit(edit, ctx);
    else if (command == pac_cmd) cmd_pac(pac, ctx);
    else if (command == experiment_cmd) cmd_experiment_pac(experiment, ctx);
    else if (command == schedule_cmd) cmd_schedule(schedule, ctx);
    else if (command == train_cmd) cmd_train_toy(train, ctx);
    else if (command == sample_cmd) cmd_sample(sample, ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace ppgedit::cli
