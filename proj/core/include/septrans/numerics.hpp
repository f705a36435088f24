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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace septrans {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

/// Relative singular-value cutoff used for rank decisions.
inline constexpr double kRankCutoff = 1e-10;

bool is_finite(const CMatrix &m);

/// Thin SVD, M = U * diag(sigma) * Vdag, sigma descending.
struct Svd {
    CMatrix U;
    std::vector<double> sigma;
    CMatrix Vdag;
};

Svd svd(const CMatrix &m);

/// Number of singular values strictly above cutoff * sigma_max.
std::size_t matrix_rank(const CMatrix &m, double cutoff = kRankCutoff);

Complex det(const CMatrix &m);

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
std::vector<double> hermitian_eigenvalues(const CMatrix &h);

struct EigenDecomposition {
    std::vector<Complex> values;
    CMatrix vectors;  // columns
};

/// General complex eigendecomposition (no ordering guarantee on the values).
EigenDecomposition eig(const CMatrix &m);

/// Orthonormal basis (as columns) of the null space of m; singular values at
/// or below threshold count as zero.
CMatrix null_space(const CMatrix &m, double threshold);

struct PhaseMatch {
    bool matched = false;
    std::optional<double> theta;  // in [0, 2*pi), present iff matched
    double residual = 0.0;
};

/// Tests A == e^{i theta} B. theta is taken from arg tr(B^dagger A); the pair
/// is matched when the aligned Frobenius residual is within tol times the
/// larger operand norm.
PhaseMatch phase_align(const CMatrix &a, const CMatrix &b, double tol = kDefaultTol);

/// Child seed for stream `index` of `master` (splitmix64 finalizer). Pure.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Haar-distributed d x d unitary, a deterministic function of seed.
CMatrix haar_unitary(std::size_t d, std::uint64_t seed);

/// Kronecker product with row index (i * b.rows() + k).
CMatrix kron(const CMatrix &a, const CMatrix &b);

/// || U^dagger U - I ||_F
double unitarity_residual(const CMatrix &u);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

}  // namespace septrans
