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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "septrans/criteria.hpp"
#include "septrans/numerics.hpp"
#include "septrans/ruchannel.hpp"
#include "septrans/sepops.hpp"

namespace septrans::lab {

/// Flat-simplex sample of squared coefficients (normalized exponential
/// spacings), sorted descending.
SchmidtSpectrum sample_spectrum(std::size_t d, std::uint64_t seed);

struct MajorizingPair {
    SchmidtSpectrum lambda;  // source, majorized
    SchmidtSpectrum mu;      // target, majorizes lambda
};

/// mu^2 from sample_spectrum; lambda^2 from mu^2 by 1-3 random T-transforms
/// (or exactly `transforms` of them when given). d >= 2.
MajorizingPair sample_majorizing_pair(std::size_t d, std::uint64_t seed,
                                      std::optional<std::size_t> transforms = std::nullopt);

/// x_i, x_j <- t x_i + (1-t) x_j, t x_j + (1-t) x_i. Doubly stochastic, so the
/// result is majorized by the input.
void t_transform(std::vector<double> &probs, std::size_t i, std::size_t j, double t);

/// Random PSD matrix G G^dagger with complex Gaussian G of the given rank.
CMatrix random_psd(std::size_t dim, std::uint64_t seed, std::optional<std::size_t> rank = std::nullopt);

/// One-way LOCC with `outcomes` branches: Alice's Kraus operators are blocks of
/// a Haar isometry, Bob applies a Haar unitary per outcome.
SeparableOperation random_one_way_locc(std::size_t dA, std::size_t dB, std::size_t outcomes, std::uint64_t seed);

/// Separable random unitary channel with Haar-random local unitaries.
RandomUnitaryChannel random_unitary_channel(std::size_t d, std::size_t terms, std::uint64_t seed);

struct Purity {
    bool pure = false;
    double largest_eigenvalue = 0.0;
};

/// pure iff the largest eigenvalue of rho is at least 1 - tol.
Purity purity_oracle(const CMatrix &rho, double tol = kDefaultTol);

/// Runs check_deterministic and purity_oracle on the same instance.
struct OracleAgreement {
    bool deterministic = false;
    bool pure = false;
    bool agree() const {
        return deterministic == pure;
    }
};

OracleAgreement determinism_vs_purity(const SeparableOperation &op, const BipartiteState &psi,
                                      double tol = kDefaultTol);

struct SweepReport {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::vector<std::uint64_t> seeds_of_failures;  // sorted
    double worst_residual = 0.0;
    std::chrono::duration<double> elapsed{0.0};
};

/// Registered sweep names, in a fixed order.
const std::vector<std::string> &sweep_names();

/// Trial i runs with derive_seed(master_seed, i). Fields other than elapsed
/// do not depend on thread count or scheduling.
SweepReport run_sweep(const std::string &name, std::size_t trials, std::uint64_t master_seed,
                      std::size_t threads = 1);

/// Outcome of a single trial; lets a failure seed be replayed.
struct TrialResult {
    bool ok = true;
    double residual = 0.0;
};

TrialResult run_trial(const std::string &name, std::uint64_t trial_seed);

}  // namespace septrans::lab
