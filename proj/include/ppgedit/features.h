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

#ifndef PPGEDIT_FEATURES_H_
#define PPGEDIT_FEATURES_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "ppgedit/ppg.h"

namespace ppgedit {

inline constexpr int kPitchBins = 256;
inline constexpr double kPitchClip = 4.0;
inline constexpr double kPitchStdFloor = 1e-6;

// Per-frame F0 (0 on unvoiced frames) and periodicity in (0, 1].
struct PitchTrack {
  std::vector<double> f0;
  std::vector<double> periodicity;
  double frame_period = kDefaultFramePeriod;

  std::size_t size() const { return f0.size(); }
  // Throws kLengthMismatch / kInvalidParameter.
  void validate() const;
};

struct PitchConditioning {
  std::vector<int> bins;
  std::vector<double> normalized;
  std::vector<double> soft_vuv;

  std::size_t size() const { return bins.size(); }
};

// Utterance-level standardisation of log F0 over voiced frames; unvoiced
// frames map to 0 and do not enter the statistics.
std::vector<double> normalize_log_pitch(const PitchTrack& track);

// Uniform bins over [-clip, clip].
int quantize_pitch_value(double value, int bins = kPitchBins, double clip = kPitchClip);
std::vector<int> quantize_pitch(const std::vector<double>& normalized,
                                int bins = kPitchBins, double clip = kPitchClip);

// Bins, standardised values and log periodicity (the soft V/UV flag).
PitchConditioning assemble_conditioning(const PitchTrack& track);

// CSV "frame,f0_hz,periodicity" with a header row.
void write_pitch_track_csv(const PitchTrack& track, std::ostream& os);
PitchTrack read_pitch_track_csv(std::istream& is,
                                double frame_period = kDefaultFramePeriod);

// CSV "frame,bin,normalized,soft_vuv" with a header row.
void write_conditioning_csv(const PitchConditioning& cond, std::ostream& os);
PitchConditioning read_conditioning_csv(std::istream& is);

}  // namespace ppgedit

#endif  // PPGEDIT_FEATURES_H_
