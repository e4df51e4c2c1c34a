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

#ifndef PPGEDIT_ERROR_H_
#define PPGEDIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppgedit {

enum class ErrorCode {
  // PPG model
  kEmptyMatrix,
  kDimensionMismatch,
  kNonStochasticRow,
  kNegativeEntry,
  kNonFiniteEntry,
  kEmptyInput,
  kInvalidInventory,
  // Editing
  kOutOfBounds,
  kUnknownPhoneme,
  kSameSourceTarget,
  kNoEditablePhoneme,
  kInvalidEditTable,
  // Metrics
  kInvalidDistribution,
  kEmptySequence,
  kInventoryMismatch,
  kEmptyRegion,
  kRegionNotFound,
  kNoVoicedFrames,
  kNonPositivePitch,
  kLengthMismatch,
  // Flow matching
  kCoefficientOutOfRange,
  kInvalidSchedule,
  kEmptyBatch,
  kInvalidConfig,
  kDivergedTraining,
  kCheckpointVersionMismatch,
  // I/O
  kParseError,
  kIoError,
  kInvalidParameter,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppgedit

#endif  // PPGEDIT_ERROR_H_
