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

#include "ppgedit/cli.h"
#include "ppgedit/edit.h"
#include "ppgedit/ppg_io.h"
#include "test_util.h"

namespace ppgedit::cli {
namespace {

using ppgedit::testing::data_path;
using ppgedit::testing::read_bytes;
using ppgedit::testing::scratch_dir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return data_path(name).string(); }

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

TEST(Cli, InspectSmallFixture) {
  const auto r = call({"inspect", data("small.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "frames: 3\n"
            "phonemes: 4\n"
            "frame_period: 0.01\n"
            "label_frames:\n"
            "  a 2\n"
            "  b 1\n"
            "segments: 2\n"
            "  0 a 0 2\n"
            "  1 b 2 3\n");
  EXPECT_EQ(call({"inspect", data("small.ppg")}).out, r.out);
}

TEST(Cli, InspectFailures) {
  const auto dir = scratch_dir("cli_inspect");
  save_text(dir / "bad.ppg", std::string("XXXX\0\0\0\0", 8));
  EXPECT_EQ(call({"inspect", (dir / "bad.ppg").string()}).code, kExitInputError);
  EXPECT_EQ(call({"inspect", (dir / "missing.csv").string()}).code, kExitInputError);
  EXPECT_EQ(call({"inspect"}).code, kExitInputError);
  EXPECT_EQ(call({}).code, kExitInputError);
  EXPECT_EQ(call({"frobnicate"}).code, kExitInputError);
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("experiment-pac"), std::string::npos);
}

TEST(Cli, EditIsSeededAndReproducible) {
  const auto dir = scratch_dir("cli_edit");
  const auto run_edit = [&](const std::string& tag) {
    return call({"--seed", "7", "edit", data("utterance.csv"), "--out",
                 (dir / (tag + ".ppg")).string(), "--record", (dir / (tag + ".json")).string()});
  };
  const auto first = run_edit("a");
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_NE(first.out.find("over frames [4, 7) (segment 2)"), std::string::npos) << first.out;
  ASSERT_EQ(run_edit("b").code, kExitOk);
  EXPECT_EQ(read_bytes(dir / "a.ppg"), read_bytes(dir / "b.ppg"));
  EXPECT_EQ(read_bytes(dir / "a.json"), read_bytes(dir / "b.json"));

  const auto record = load_edit_record(dir / "a.json");
  EXPECT_EQ(record.source, "ä");
  EXPECT_EQ(record.seed, 7u);

  const auto sidecar = nlohmann::json::parse(read_bytes(dir / "a.ppg.config.json"));
  EXPECT_EQ(sidecar["command"], "edit");
  EXPECT_EQ(sidecar["seed"], 7);
  EXPECT_EQ(sidecar["out"], (dir / "a.ppg").string());
}

TEST(Cli, EditWithNothingEditableIsADomainError) {
  const auto dir = scratch_dir("cli_edit_sil");
  const auto r = call({"edit", data("all_sil.csv"), "--out", (dir / "o.csv").string(),
                       "--record", (dir / "r.json").string()});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("NoEditablePhoneme"), std::string::npos) << r.err;
}

TEST(Cli, QuietSuppressesInformationalOutput) {
  const auto dir = scratch_dir("cli_quiet");
  const auto r = call({"--quiet", "edit", data("utterance.csv"), "--out",
                       (dir / "o.csv").string(), "--record", (dir / "r.json").string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, PacFixtures) {
  const auto same = call({"pac", data("pac_edited.csv"), data("pac_edited.csv"),
                          data("pac_record.json")});
  ASSERT_EQ(same.code, kExitOk) << same.err;
  EXPECT_EQ(same.out, "{\"pac\":0.0,\"m\":3,\"n\":3}\n");
  const auto ignored = call({"pac", data("pac_edited.csv"), data("pac_original.csv"),
                             data("pac_record.json")});
  ASSERT_EQ(ignored.code, kExitOk) << ignored.err;
  EXPECT_EQ(ignored.out, "{\"pac\":1.0,\"m\":3,\"n\":3}\n");
}

TEST(Cli, PacRejectsMismatchedInventories) {
  const auto r = call({"pac", data("pac_edited.csv"), data("small.csv"), data("pac_record.json")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("InventoryMismatch"), std::string::npos) << r.err;
}

TEST(Cli, ScheduleToStdout) {
  const auto r = call({"schedule", "--steps", "4", "--sway", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "i,u,t\n0,0,1\n1,0.25,0.75\n2,0.5,0.5\n3,0.75,0.25\n4,1,0\n");
}

TEST(Cli, ScheduleCoefficientRange) {
  EXPECT_EQ(call({"schedule", "--steps", "4", "--sway", "1.5"}).code, kExitOk);
  const auto r = call({"schedule", "--steps", "4", "--sway", "1.76"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("CoefficientOutOfRange"), std::string::npos) << r.err;
  EXPECT_EQ(call({"schedule", "--steps", "0"}).code, kExitInputError);
  EXPECT_EQ(call({"schedule", "--steps", "many"}).code, kExitInputError);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir("cli_config");
  save_text(dir / "cfg.json", R"({"steps": 4, "sway": 0.0, "seed": 3})");
  const std::string out = (dir / "sched.csv").string();
  const auto from_file = call({"--config", (dir / "cfg.json").string(), "schedule", "--out", out});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_EQ(lines(read_bytes(out)), 6u);
  const auto sidecar = nlohmann::json::parse(read_bytes(out + ".config.json"));
  EXPECT_EQ(sidecar["steps"], 4);
  EXPECT_EQ(sidecar["sway"], 0.0);
  EXPECT_EQ(sidecar["seed"], 3);

  const auto overridden =
      call({"--config", (dir / "cfg.json").string(), "schedule", "--steps", "2", "--out", out});
  ASSERT_EQ(overridden.code, kExitOk) << overridden.err;
  EXPECT_EQ(read_bytes(out), "i,u,t\n0,0,1\n1,0.5,0.5\n2,1,0\n");
  EXPECT_EQ(nlohmann::json::parse(read_bytes(out + ".config.json"))["steps"], 2);
}

TEST(Cli, ConfigErrors) {
  const auto dir = scratch_dir("cli_config_errors");
  save_text(dir / "unknown.json", R"({"stpes": 4})");
  save_text(dir / "type.json", R"({"steps": "four"})");
  save_text(dir / "broken.json", "{");
  for (const char* name : {"unknown.json", "type.json", "broken.json"})
    EXPECT_EQ(call({"--config", (dir / name).string(), "schedule"}).code, kExitInputError) << name;
  EXPECT_EQ(call({"--config", (dir / "absent.json").string(), "schedule"}).code, kExitInputError);
}

TEST(Cli, ConfigCanSupplyRequiredPositionals) {
  const auto dir = scratch_dir("cli_config_positional");
  nlohmann::json cfg{{"ppg", data("small.csv")}};
  save_text(dir / "cfg.json", cfg.dump());
  const auto r = call({"--config", (dir / "cfg.json").string(), "inspect"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("frames: 3"), std::string::npos);
}

TEST(Cli, ExperimentPacWritesOneRowPerSeed) {
  const auto dir = scratch_dir("cli_experiment");
  const std::string out = (dir / "runs.csv").string();
  const std::string report = (dir / "report.json").string();
  const auto r = call({"--seed", "5", "experiment-pac", "--seeds", "12", "--jobs", "2", "--out",
                       out, "--report-json", report, "--report-csv", (dir / "report.csv").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(lines(read_bytes(out)), 13u);
  EXPECT_EQ(nlohmann::json::parse(read_bytes(report)).size(), 24u);
  EXPECT_EQ(lines(read_bytes(dir / "report.csv")), 25u);
  EXPECT_NE(r.out.find("discrimination"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(out + ".config.json"));
  EXPECT_EQ(call({"experiment-pac", "--seeds", "3", "--noise", "2", "--out", out}).code,
            kExitInputError);
}

TEST(Cli, TrainThenSample) {
  const auto dir = scratch_dir("cli_train");
  const std::string ckpt = (dir / "toy.vfm").string();
  const auto trained = call({"--seed", "1", "train-toy", "--out", ckpt, "--updates", "30",
                             "--batch-size", "32", "--warmup", "5", "--hidden", "16,16"});
  ASSERT_EQ(trained.code, kExitOk) << trained.err;
  EXPECT_EQ(lines(read_bytes(ckpt + ".loss.csv")), 31u);
  const auto sidecar = nlohmann::json::parse(read_bytes(ckpt + ".config.json"));
  EXPECT_EQ(sidecar["hidden"], (std::vector<int>{16, 16}));
  EXPECT_EQ(sidecar["updates"], 30);

  const std::string samples = (dir / "samples.csv").string();
  const auto sampled = call({"sample", ckpt, "--out", samples, "--count", "16", "--steps", "4"});
  ASSERT_EQ(sampled.code, kExitOk) << sampled.err;
  const std::string csv = read_bytes(samples);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,condition,x,y,nearest_mode,correct");
  EXPECT_EQ(lines(csv), 17u);
  EXPECT_NE(sampled.out.find("overall accuracy"), std::string::npos);

  // Same seed, same samples.
  ASSERT_EQ(call({"sample", ckpt, "--out", samples + "2", "--count", "16", "--steps", "4"}).code,
            kExitOk);
  EXPECT_EQ(read_bytes(samples + "2"), csv);

  EXPECT_EQ(call({"sample", ckpt, "--sway", "3"}).code, kExitInputError);
  EXPECT_EQ(call({"sample", ckpt, "--w", "-1"}).code, kExitInputError);
  EXPECT_EQ(call({"sample", data("small.csv")}).code, kExitInputError);
}

TEST(Cli, TrainRejectsBadChoices) {
  const auto dir = scratch_dir("cli_train_bad");
  const std::string ckpt = (dir / "x.vfm").string();
  EXPECT_EQ(call({"train-toy", "--out", ckpt, "--activation", "relu"}).code, kExitInputError);
  EXPECT_EQ(call({"train-toy", "--out", ckpt, "--dropout", "sometimes"}).code, kExitInputError);
  EXPECT_EQ(call({"train-toy"}).code, kExitInputError);
}

TEST(Cli, ExitCodeClassification) {
  EXPECT_EQ(exit_code_for(ErrorCode::kNoEditablePhoneme), kExitDomainError);
  EXPECT_EQ(exit_code_for(ErrorCode::kRegionNotFound), kExitDomainError);
  EXPECT_EQ(exit_code_for(ErrorCode::kNoVoicedFrames), kExitDomainError);
  EXPECT_EQ(exit_code_for(ErrorCode::kDivergedTraining), kExitDomainError);
  EXPECT_EQ(exit_code_for(ErrorCode::kParseError), kExitInputError);
  EXPECT_EQ(exit_code_for(ErrorCode::kCoefficientOutOfRange), kExitInputError);
}

}  // namespace
}  // namespace ppgedit::cli
