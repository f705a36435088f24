// Copyright 2026 The septrans Authors
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

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace septrans::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitOpen = 3;
inline constexpr int kExitInconsistent = 4;

/// Environment variable consulted when --tol is absent.
inline constexpr const char *kTolEnv = "SEPTRANS_DEFAULT_TOL";

const char *version();

/// --tol if given, else SEPTRANS_DEFAULT_TOL if set, else 1e-9. Throws
/// InputError on a non-positive or unparsable value.
double resolve_tol(const std::optional<double> &flag);

/// Runs the tool on `args` (without the program name). Reports go to `out`,
/// diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace septrans::cli
