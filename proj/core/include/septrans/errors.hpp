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

#include <stdexcept>
#include <string>

namespace septrans {

/// Raised when caller-supplied data violates an operation's preconditions.
class InputError : public std::invalid_argument {
   public:
    explicit InputError(const std::string &what) : std::invalid_argument(what) {
    }
};

/// Raised when a computed result contradicts a proven theorem; always a bug
/// or a tolerance problem, never bad input.
class InconsistencyError : public std::logic_error {
   public:
    explicit InconsistencyError(const std::string &what) : std::logic_error(what) {
    }
};

}  // namespace septrans
