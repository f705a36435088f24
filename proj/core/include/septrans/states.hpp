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
#include <cstdint>
#include <vector>

#include "septrans/numerics.hpp"

namespace septrans {

/// Tolerance on the norm of caller-supplied states.
inline constexpr double kNormTol = 1e-9;

/// Normalized pure state on C^dA (x) C^dB. Amplitude index is a * dB + b.
class BipartiteState {
   public:
    /// Rejects inputs whose norm is off by more than kNormTol.
    BipartiteState(std::size_t dA, std::size_t dB, CVector amplitudes);

    /// Scales a nonzero vector to unit norm. For generators and branch
    /// outputs; user input goes through the checking constructor.
    static BipartiteState normalized(std::size_t dA, std::size_t dB, const CVector &v);

    /// Product basis state |a>|b>.
    static BipartiteState basis(std::size_t dA, std::size_t dB, std::size_t a, std::size_t b);

    std::size_t dim_a() const {
        return dA_;
    }
    std::size_t dim_b() const {
        return dB_;
    }
    const CVector &amplitudes() const {
        return amplitudes_;
    }
    Complex amplitude(std::size_t a, std::size_t b) const {
        return amplitudes_(static_cast<Eigen::Index>(a * dB_ + b));
    }

    bool operator==(const BipartiteState &other) const;

   private:
    std::size_t dA_;
    std::size_t dB_;
    CVector amplitudes_;
};

/// psi = sum_j coefficients[j] |basis_a[:, j]> (x) |basis_b[:, j]>.
struct SchmidtDecomposition {
    std::vector<double> coefficients;  // descending, length min(dA, dB)
    CMatrix basis_a;                   // dA x min(dA, dB), orthonormal columns
    CMatrix basis_b;                   // dB x min(dA, dB), orthonormal columns
    std::size_t rank = 0;
};

SchmidtDecomposition schmidt_decompose(const BipartiteState &psi, double cutoff = kRankCutoff);

/// Dual operator H_B -> H_A: entry (a, b) is amplitude a * dB + b.
CMatrix to_dual(const BipartiteState &psi);
BipartiteState from_dual(const CMatrix &chi);

struct SupportProjectors {
    CMatrix pa;
    CMatrix pb;
    std::size_t rank = 0;
    CMatrix basis_a;  // dA x rank, spans the A support
    CMatrix basis_b;  // dB x rank, spans the B support
};

SupportProjectors supports(const BipartiteState &psi, double cutoff = kRankCutoff);

/// Seeded random state of full Schmidt rank.
BipartiteState random_state(std::size_t dA, std::size_t dB, std::uint64_t seed);

/// (A (x) B)|psi>, unnormalized, computed as A * psi * B^T on the dual.
CVector apply_product(const CMatrix &a, const CMatrix &b, const BipartiteState &psi);

// Density-matrix helpers shared by sepops and lab.

CMatrix density(const BipartiteState &psi);

/// Throws InputError unless rho is square, Hermitian, unit-trace and PSD
/// (eigenvalue floor -tol).
void require_density(const CMatrix &rho, double tol = kDefaultTol);

/// Transpose on the B factor, rho in the a * dB + b layout.
CMatrix partial_transpose_b(const CMatrix &rho, std::size_t dA, std::size_t dB);

/// <psi| rho |psi>
double fidelity(const BipartiteState &psi, const CMatrix &rho);

}  // namespace septrans
