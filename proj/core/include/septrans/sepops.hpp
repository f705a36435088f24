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
#include <variant>
#include <vector>

#include "septrans/criteria.hpp"
#include "septrans/numerics.hpp"
#include "septrans/states.hpp"

namespace septrans {

struct KrausPair {
    CMatrix a;  // dA x dA
    CMatrix b;  // dB x dB
};

/// Kraus pairs A_m (x) B_m. Shapes are checked on construction; the closure
/// condition is not, see validate_closure.
class SeparableOperation {
   public:
    SeparableOperation(std::size_t dA, std::size_t dB, std::vector<KrausPair> pairs);

    static SeparableOperation identity(std::size_t dA, std::size_t dB);

    std::size_t dim_a() const {
        return dA_;
    }
    std::size_t dim_b() const {
        return dB_;
    }
    const std::vector<KrausPair> &pairs() const {
        return pairs_;
    }
    std::size_t size() const {
        return pairs_.size();
    }

    /// sum_m A_m^dagger A_m (x) B_m^dagger B_m
    CMatrix closure_sum() const;

   private:
    std::size_t dA_;
    std::size_t dB_;
    std::vector<KrausPair> pairs_;
};

struct ClosureReport {
    bool valid = false;
    double residual = 0.0;  // || closure_sum - I ||_F
};

ClosureReport validate_closure(const SeparableOperation &op, double tol = kDefaultTol);

/// sum_m (A_m (x) B_m) rho (A_m (x) B_m)^dagger. rho must be a density matrix.
CMatrix apply(const SeparableOperation &op, const CMatrix &rho);

struct DeterministicCertificate {
    BipartiteState phi;
    std::vector<double> probabilities;   // p_m
    std::vector<double> branch_phases;   // (A_m (x) B_m)|psi> = e^{i theta_m} sqrt(p_m) |phi>
};

struct NotDeterministic {
    std::size_t witness = 0;  // zero-based index of the first branch not aligned with |phi>
    double residual = 0.0;    // phase-aligned distance of that branch's normalized output
};

using DeterminismResult = std::variant<DeterministicCertificate, NotDeterministic>;

/// Decides whether op maps |psi> to a single pure state. The first branch
/// with norm above tol fixes |phi>; branches that annihilate psi enter the
/// certificate with p_m = 0.
DeterminismResult check_deterministic(const SeparableOperation &op, const BipartiteState &psi,
                                      double tol = kDefaultTol);

struct RestrictedOperation {
    SeparableOperation op;  // A_m P_A, B_m P_B
    SupportProjectors projectors;
};

RestrictedOperation restrict_to_supports(const SeparableOperation &op, const BipartiteState &psi,
                                         double cutoff = kRankCutoff);

/// || sum_m A'_m^dagger A'_m (x) B'_m^dagger B'_m - P_A (x) P_B ||_F
double restricted_closure_residual(const RestrictedOperation &restricted);

struct PairProportionality {
    bool unitary_proportional_a = false;
    double scale_a = 0.0;
    bool unitary_proportional_b = false;
    double scale_b = 0.0;
};

struct ProportionalityCertificate {
    std::vector<PairProportionality> per_pair;
    /// f(m, n) with A_m'^dagger A_m' (x) B_m'^dagger B_m' = f(m, n) A_n'^dagger A_n' (x) ...;
    /// present when every pair is proportional to unitaries with nonzero scale.
    std::optional<Eigen::MatrixXd> pairwise_factors;

    bool all_proportional() const;
};

/// Whether each restricted A'_m and B'_m acts on the support of psi as a
/// scalar multiple of an isometry (all singular values on the support equal).
ProportionalityCertificate unitary_proportionality(const SeparableOperation &op, const BipartiteState &psi,
                                                   double tol = kDefaultTol);

/// Deterministic LOCC protocol on two qubits taking the state with Schmidt
/// coefficients lambda to the one with coefficients mu, both written in the
/// computational Schmidt basis (lambda_0 |00> + lambda_1 |11>). Alice measures
/// {diag(a0, a1), X diag(b0, b1)}, Bob applies I or X.
SeparableOperation construct_two_qubit_locc(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu);

/// lambda_0 |00> + lambda_1 |11> (or the d x d diagonal analogue).
BipartiteState schmidt_form_state(const SchmidtSpectrum &spectrum);

}  // namespace septrans
