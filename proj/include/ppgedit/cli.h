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

#ifndef PPGEDIT_CLI_H_
#define PPGEDIT_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "ppgedit/error.h"

namespace ppgedit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;   // unreadable/malformed input, bad flags or config
inline constexpr int kExitDomainError = 3;  // well-formed input with no valid result

int exit_code_for(ErrorCode code);

// Runs one command line (program name excluded) and returns the exit code.
// Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ppgedit::cli

#endif  // PPGEDIT_CLI_H_
