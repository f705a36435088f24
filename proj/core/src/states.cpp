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

#include "septrans/states.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "septrans/errors.hpp"

namespace septrans {

namespace {

void check_dims(std::size_t dA, std::size_t dB, const CVector &v) {
    if (dA == 0 || dB == 0) {
        throw InputError("state dimensions must be positive");
    }
    if (static_cast<std::size_t>(v.size()) != dA * dB) {
        std::ostringstream msg;
        msg << "state has " << v.size() << " amplitudes, expected " << dA * dB;
        throw InputError(msg.str());
    }
    if (!is_finite(v)) {
        throw InputError("state has non-finite amplitudes");
    }
}

}  // namespace

BipartiteState::BipartiteState(std::size_t dA, std::size_t dB, CVector amplitudes)
    : dA_(dA), dB_(dB), amplitudes_(std::move(amplitudes)) {
    check_dims(dA_, dB_, amplitudes_);
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "state is not normalized (norm " << norm << ")";
        throw InputError(msg.str());
    }
}

BipartiteState BipartiteState::normalized(std::size_t dA, std::size_t dB, const CVector &v) {
    check_dims(dA, dB, v);
    const double norm = v.norm();
    if (norm == 0.0) {
        throw InputError("cannot normalize the zero vector");
    }
    return BipartiteState(dA, dB, v / norm);
}

BipartiteState BipartiteState::basis(std::size_t dA, std::size_t dB, std::size_t a, std::size_t b) {
    if (a >= dA || b >= dB) {
        throw InputError("basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dA * dB));
    v(static_cast<Eigen::Index>(a * dB + b)) = 1.0;
    return BipartiteState(dA, dB, std::move(v));
}

bool BipartiteState::operator==(const BipartiteState &other) const {
    return dA_ == other.dA_ && dB_ == other.dB_ && amplitudes_ == other.amplitudes_;
}

CMatrix to_dual(const BipartiteState &psi) {
    const auto rows = static_cast<Eigen::Index>(psi.dim_a());
    const auto cols = static_cast<Eigen::Index>(psi.dim_b());
    CMatrix chi(rows, cols);
    for (Eigen::Index a = 0; a < rows; ++a) {
        for (Eigen::Index b = 0; b < cols; ++b) {
            chi(a, b) = psi.amplitudes()(a * cols + b);
        }
    }
    return chi;
}

BipartiteState from_dual(const CMatrix &chi) {
    CVector v(chi.size());
    for (Eigen::Index a = 0; a < chi.rows(); ++a) {
        for (Eigen::Index b = 0; b < chi.cols(); ++b) {
            v(a * chi.cols() + b) = chi(a, b);
        }
    }
    return BipartiteState(static_cast<std::size_t>(chi.rows()), static_cast<std::size_t>(chi.cols()), std::move(v));
}

SchmidtDecomposition schmidt_decompose(const BipartiteState &psi, double cutoff) {
    if (psi.amplitudes().norm() == 0.0) {
        throw InputError("schmidt_decompose: zero vector");
    }
    // chi = U S V^dagger, so chi(a, b) = sum_j s_j U(a, j) conj(V(b, j)); the
    // B-side Schmidt vectors are the rows of V^dagger, i.e. columns of Vdag^T.
    const Svd f = svd(to_dual(psi));
    SchmidtDecomposition out;
    out.coefficients = f.sigma;
    out.basis_a = f.U;
    out.basis_b = f.Vdag.transpose();
    const double floor = cutoff * f.sigma.front();
    out.rank = static_cast<std::size_t>(
        std::count_if(f.sigma.begin(), f.sigma.end(), [floor](double s) { return s > floor; }));
    return out;
}

SupportProjectors supports(const BipartiteState &psi, double cutoff) {
    const SchmidtDecomposition sd = schmidt_decompose(psi, cutoff);
    const auto r = static_cast<Eigen::Index>(sd.rank);
    SupportProjectors out;
    out.rank = sd.rank;
    out.basis_a = sd.basis_a.leftCols(r);
    out.basis_b = sd.basis_b.leftCols(r);
    out.pa = out.basis_a * out.basis_a.adjoint();
    out.pb = out.basis_b * out.basis_b.adjoint();
    return out;
}

BipartiteState random_state(std::size_t dA, std::size_t dB, std::uint64_t seed) {
    if (dA == 0 || dB == 0) {
        throw InputError("random_state: dimensions must be positive");
    }
    const std::size_t full = std::min(dA, dB);
    const auto n = static_cast<Eigen::Index>(dA * dB);
    for (std::uint64_t attempt = 0;; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, attempt));
        std::normal_distribution<double> normal(0.0, 1.0);
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            v(i) = Complex(re, im);
        }
        BipartiteState psi = BipartiteState::normalized(dA, dB, v);
        if (schmidt_decompose(psi).rank == full) {
            return psi;
        }
    }
}

CVector apply_product(const CMatrix &a, const CMatrix &b, const BipartiteState &psi) {
    const auto dA = static_cast<Eigen::Index>(psi.dim_a());
    const auto dB = static_cast<Eigen::Index>(psi.dim_b());
    if (a.rows() != dA || a.cols() != dA || b.rows() != dB || b.cols() != dB) {
        throw InputError("apply_product: operator shape does not match state dimensions");
    }
    const CMatrix out = a * to_dual(psi) * b.transpose();
    CVector v(out.size());
    for (Eigen::Index i = 0; i < dA; ++i) {
        for (Eigen::Index j = 0; j < dB; ++j) {
            v(i * dB + j) = out(i, j);
        }
    }
    return v;
}

CMatrix density(const BipartiteState &psi) {
    return psi.amplitudes() * psi.amplitudes().adjoint();
}

void require_density(const CMatrix &rho, double tol) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) {
        throw InputError("density matrix must be square and nonempty");
    }
    if (!is_finite(rho)) {
        throw InputError("density matrix has non-finite entries");
    }
    const double herm = (rho - rho.adjoint()).norm();
    if (herm > tol) {
        throw InputError("density matrix is not Hermitian (residual " + std::to_string(herm) + ")");
    }
    const Complex tr = rho.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol) {
        throw InputError("density matrix trace is not 1");
    }
    const auto ev = hermitian_eigenvalues(rho);
    if (ev.front() < -tol) {
        throw InputError("density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(ev.front()) + ")");
    }
}

CMatrix partial_transpose_b(const CMatrix &rho, std::size_t dA, std::size_t dB) {
    const auto a_dim = static_cast<Eigen::Index>(dA);
    const auto b_dim = static_cast<Eigen::Index>(dB);
    if (rho.rows() != a_dim * b_dim || rho.cols() != a_dim * b_dim) {
        throw InputError("partial_transpose_b: shape does not match dimensions");
    }
    CMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < a_dim; ++a) {
        for (Eigen::Index b = 0; b < b_dim; ++b) {
            for (Eigen::Index a2 = 0; a2 < a_dim; ++a2) {
                for (Eigen::Index b2 = 0; b2 < b_dim; ++b2) {
                    out(a * b_dim + b, a2 * b_dim + b2) = rho(a * b_dim + b2, a2 * b_dim + b);
                }
            }
        }
    }
    return out;
}

double fidelity(const BipartiteState &psi, const CMatrix &rho) {
    const CVector &v = psi.amplitudes();
    return (v.adjoint() * rho * v)(0, 0).real();
}

}  // namespace septrans
