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

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "septrans/numerics.hpp"
#include "septrans/ruchannel.hpp"
#include "septrans/sepops.hpp"
#include "septrans/states.hpp"

namespace septrans::cli {

using Json = nlohmann::json;

/// A file read from disk together with the FNV-1a 64-bit hash of its bytes.
struct LoadedFile {
    std::string path;
    std::string bytes;
    std::uint64_t hash = 0;
};

/// Throws InputError when the file cannot be read.
LoadedFile read_file(const std::string &path);

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

/// Throws InputError on malformed JSON.
Json parse_json(const LoadedFile &file);

// Complex numbers are two-element [re, im] arrays; matrices are row-major
// nested lists of them.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);
Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j, Eigen::Index rows, Eigen::Index cols);

/// {dims: [dA, dB], amplitudes: [[re, im], ...]}; rejects unnormalized input.
Json state_to_json(const BipartiteState &psi);
BipartiteState state_from_json(const Json &j);

/// {dims: [dA, dB], kraus: [{A, B}, ...]}. Closure is not checked here.
Json operation_to_json(const SeparableOperation &op);
SeparableOperation operation_from_json(const Json &j);

/// {dim: d, terms: [{p, U, V}, ...]}. Probabilities and unitarity are not
/// checked here.
Json channel_to_json(const RandomUnitaryChannel &ch);
RandomUnitaryChannel channel_from_json(const Json &j);

/// Human-readable real: rounded to 12 places, truncated to 10, trailing
/// zeros stripped down to one decimal ("1.0", "0.7071067811").
std::string format_real(double x);

/// format_real for real values, "re+imi" otherwise.
std::string format_complex(Complex z);

}  // namespace septrans::cli
