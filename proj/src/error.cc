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

#include "ppgedit/error.h"

namespace ppgedit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonStochasticRow: return "NonStochasticRow";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidInventory: return "InvalidInventory";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kUnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::kSameSourceTarget: return "SameSourceTarget";
    case ErrorCode::kNoEditablePhoneme: return "NoEditablePhoneme";
    case ErrorCode::kInvalidEditTable: return "InvalidEditTable";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kInventoryMismatch: return "InventoryMismatch";
    case ErrorCode::kEmptyRegion: return "EmptyRegion";
    case ErrorCode::kRegionNotFound: return "RegionNotFound";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kNonPositivePitch: return "NonPositivePitch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kCoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
    case ErrorCode::kEmptyBatch: return "EmptyBatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDivergedTraining: return "DivergedTraining";
    case ErrorCode::kCheckpointVersionMismatch: return "CheckpointVersionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
  }
  return "Unknown";
}

}  // namespace ppgedit
