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

#include "ppgedit/features.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ppgedit/ppg_io.h"

namespace ppgedit {
namespace {

std::vector<std::string> read_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    out.push_back(field);
  }
  return out;
}

void expect_header(std::istream& is, const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(is, line) || read_csv_row(line) != expected)
    throw Error(ErrorCode::kParseError, "unexpected CSV header: '" + line + "'");
}

long parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v))
    throw Error(ErrorCode::kParseError, "not an integer: '" + s + "'");
  return static_cast<long>(v);
}

}  // namespace

void PitchTrack::validate() const {
  if (f0.size() != periodicity.size())
    throw Error(ErrorCode::kLengthMismatch, "f0 and periodicity differ in length");
  for (std::size_t t = 0; t < f0.size(); ++t) {
    if (!(f0[t] >= 0.0) || !std::isfinite(f0[t]))
      throw Error(ErrorCode::kInvalidParameter,
                  "negative or non-finite f0 at frame " + std::to_string(t));
    if (!(periodicity[t] > 0.0 && periodicity[t] <= 1.0))
      throw Error(ErrorCode::kInvalidParameter,
                  "periodicity outside (0, 1] at frame " + std::to_string(t));
  }
}

std::vector<double> normalize_log_pitch(const PitchTrack& track) {
  std::vector<double> out(track.f0.size(), 0.0);
  double sum = 0.0;
  std::size_t voiced = 0;
  for (std::size_t t = 0; t < track.f0.size(); ++t) {
    if (track.f0[t] > 0.0) {
      out[t] = std::log(track.f0[t]);
      sum += out[t];
      ++voiced;
    }
  }
  if (voiced == 0) throw Error(ErrorCode::kNoVoicedFrames, "pitch track has no voiced frames");

  const double mean = sum / static_cast<double>(voiced);
  double sq = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t)
    if (track.f0[t] > 0.0) sq += (out[t] - mean) * (out[t] - mean);
  const double stddev = std::max(std::sqrt(sq / static_cast<double>(voiced)), kPitchStdFloor);

  for (std::size_t t = 0; t < out.size(); ++t)
    out[t] = track.f0[t] > 0.0 ? (out[t] - mean) / stddev : 0.0;
  return out;
}

int quantize_pitch_value(double value, int bins, double clip) {
  const double v = std::clamp(value, -clip, clip);
  const int bin = static_cast<int>(std::floor((v + clip) / (2.0 * clip) * bins));
  return std::clamp(bin, 0, bins - 1);
}

std::vector<int> quantize_pitch(const std::vector<double>& normalized, int bins, double clip) {
  if (bins <= 0 || !(clip > 0.0))
    throw Error(ErrorCode::kInvalidParameter, "bins and clip must be positive");
  std::vector<int> out(normalized.size());
  std::transform(normalized.begin(), normalized.end(), out.begin(),
                 [=](double v) { return quantize_pitch_value(v, bins, clip); });
  return out;
}

PitchConditioning assemble_conditioning(const PitchTrack& track) {
  track.validate();
  PitchConditioning cond;
  cond.normalized = normalize_log_pitch(track);
  cond.bins = quantize_pitch(cond.normalized);
  cond.soft_vuv.resize(track.size());
  std::transform(track.periodicity.begin(), track.periodicity.end(),
                 cond.soft_vuv.begin(), [](double p) { return std::log(p); });
  return cond;
}

void write_pitch_track_csv(const PitchTrack& track, std::ostream& os) {
  os << "frame,f0_hz,periodicity\n";
  for (std::size_t t = 0; t < track.size(); ++t)
    os << t << ',' << format_double(track.f0[t]) << ','
       << format_double(track.periodicity[t]) << '\n';
}

PitchTrack read_pitch_track_csv(std::istream& is, double frame_period) {
  expect_header(is, {"frame", "f0_hz", "periodicity"});
  PitchTrack track;
  track.frame_period = frame_period;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto row = read_csv_row(line);
    if (row.size() != 3)
      throw Error(ErrorCode::kParseError, "pitch CSV row needs 3 fields: '" + line + "'");
    if (parse_int(row[0]) != static_cast<long>(track.size()))
      throw Error(ErrorCode::kParseError, "frame indices must be 0, 1, 2, ...");
    track.f0.push_back(parse_double(row[1]));
    track.periodicity.push_back(parse_double(row[2]));
  }
  track.validate();
  return track;
}

void write_conditioning_csv(const PitchConditioning& cond, std::ostream& os) {
  os << "frame,bin,normalized,soft_vuv\n";
  for (std::size_t t = 0; t < cond.size(); ++t)
    os << t << ',' << cond.bins[t] << ',' << format_double(cond.normalized[t]) << ','
       << format_double(cond.soft_vuv[t]) << '\n';
}

PitchConditioning read_conditioning_csv(std::istream& is) {
  expect_header(is, {"frame", "bin", "normalized", "soft_vuv"});
  PitchConditioning cond;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    const auto row = read_csv_row(line);
    if (row.size() != 4)
      throw Error(ErrorCode::kParseError, "conditioning CSV row needs 4 fields");
    if (parse_int(row[0]) != static_cast<long>(cond.size()))
      throw Error(ErrorCode::kParseError, "frame indices must be 0, 1, 2, ...");
    const long bin = parse_int(row[1]);
    if (bin < 0 || bin >= kPitchBins)
      throw Error(ErrorCode::kParseError, "bin out of range: " + row[1]);
    cond.bins.push_back(static_cast<int>(bin));
    cond.normalized.push_back(parse_double(row[2]));
    cond.soft_vuv.push_back(parse_double(row[3]));
  }
  return cond;
}

}  // namespace ppgedit
