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

#include <cstddef>
#include <optional>
#include <vector>

#include "septrans/numerics.hpp"
#include "septrans/sepops.hpp"
#include "septrans/states.hpp"

namespace septrans {

struct UnitaryTerm {
    double p = 0.0;
    CMatrix u;  // acts on A
    CMatrix v;  // acts on B
};

/// rho -> sum_m p_m (U_m (x) V_m) rho (U_m (x) V_m)^dagger on C^d (x) C^d.
class RandomUnitaryChannel {
   public:
    /// Checks shapes only; probabilities and unitarity are checked by validate_channel.
    RandomUnitaryChannel(std::size_t d, std::vector<UnitaryTerm> terms);

    std::size_t dim() const {
        return d_;
    }
    const std::vector<UnitaryTerm> &terms() const {
        return terms_;
    }
    std::size_t size() const {
        return terms_.size();
    }

    /// Kraus pairs (sqrt(p_m) U_m, V_m).
    SeparableOperation to_operation() const;

   private:
    std::size_t d_;
    std::vector<UnitaryTerm> terms_;
};

/// p rho + (1 - p) (X (x) Z) rho (X (x) Z).
RandomUnitaryChannel xz_channel(double p);

struct ChannelReport {
    bool valid = false;
    double probability_residual = 0.0;  // |sum p - 1|
    bool probabilities_positive = false;
    std::vector<double> unitarity_residuals_u;
    std::vector<double> unitarity_residuals_v;
    double closure_residual = 0.0;
};

ChannelReport validate_channel(const RandomUnitaryChannel &ch, double tol = kDefaultTol);

/// One dot-equality test in the (m, n, j, k) grid.
struct ConditionEntry {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    PhaseMatch match;
};

struct StateOutcome {
    bool deterministic = false;
    std::optional<BipartiteState> phi;
};

struct CollectionReport {
    bool pair_condition_a = false;     // U-side commutation up to phase, full grid
    bool pair_condition_b = false;     // V-side commutation up to phase, full grid
    bool pair_condition_a_m1 = false;  // same, restricted to m = 0
    bool pair_condition_b_m1 = false;
    std::vector<StateOutcome> per_state;
    std::vector<ConditionEntry> phase_table_a;
    std::vector<ConditionEntry> phase_table_b;

    bool all_deterministic() const;
    bool any_deterministic() const;
};

/// Evaluates
///   U_m^dagger U_n psi_j psi_k^dagger  ~  psi_j psi_k^dagger U_m^dagger U_n
///   V_m^dagger V_n psi'_j psi'_k^dagger ~ psi'_j psi'_k^dagger V_m^dagger V_n,
/// (~ is equality up to a phase, psi' = psi^T the dual with A and B swapped)
/// over all index tuples, runs check_deterministic per state, and
/// cross-checks the collection theorem. Every state must have full Schmidt
/// rank d. Throws InconsistencyError when a theorem implication fails.
CollectionReport check_collection(const RandomUnitaryChannel &ch, const std::vector<BipartiteState> &states,
                                  double tol = kDefaultTol);

struct FixedEigenspace {
    std::vector<Complex> phases;  // one per channel term; phases[0] == 1
    std::vector<CMatrix> basis;   // d x d dual matrices, reduced row echelon form
    std::size_t generic_rank = 0; // Schmidt rank of a generic member
    bool has_full_rank_member() const;
};

struct FixedFamily {
    std::size_t d = 0;
    /// (W_m, Ybar_m) = (U_0^dagger U_m, Vbar_m Vbar_0^dagger), Vbar the transpose.
    std::vector<std::pair<CMatrix, CMatrix>> generator_pairs;
    std::vector<FixedEigenspace> eigenspaces;
    /// compatibility(s, t): members of eigenspaces s and t jointly satisfy
    /// both pair conditions.
    std::vector<std::vector<bool>> compatibility;

    bool unconstrained() const;
};

/// Solves psi ~ W_m psi Ybar_m for all m: common unimodular eigenspaces of
/// the conjugation superoperators C -> W_m C Ybar_m. Eigenvalues closer than
/// 1e-8 are merged.
FixedFamily fixed_states(const RandomUnitaryChannel &ch, double tol = kDefaultTol);

struct ExampleReport {
    double p = 0.0;
    double fixed_point_fidelity = 0.0;
    bool fixed_point = false;
    bool dual_matches = false;
    std::size_t samples_per_family = 0;
    std::size_t deterministic_plus = 0;
    std::size_t deterministic_minus = 0;
    bool families_recovered = false;
    double subspace_distance = 0.0;

    bool all_pass() const;
};

/// End-to-end check of the two-qubit X (x) Z example at mixing parameter p.
ExampleReport cross_check_example(double p, double tol = kDefaultTol);

/// (|+>|0> + |->|1>) / sqrt(2)
BipartiteState xz_fixed_point();

/// a|00> + b|01> +- a|10> -+ b|11>, normalized.
BipartiteState xz_family_state(Complex a, Complex b, bool plus);

/// || P_X - P_Y ||_2 (spectral norm) between the spans of two sets of
/// matrices, each flattened row-major.
double subspace_distance(const std::vector<CMatrix> &x, const std::vector<CMatrix> &y);

}  // namespace septrans
