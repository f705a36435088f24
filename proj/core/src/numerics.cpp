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

#include "septrans/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "septrans/errors.hpp"

namespace septrans {

bool is_finite(const CMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex z = m.data()[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

Svd svd(const CMatrix &m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw InputError("svd: empty matrix");
    }
    if (!is_finite(m)) {
        throw InputError("svd: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Svd out;
    out.U = solver.matrixU();
    out.Vdag = solver.matrixV().adjoint();
    const auto &s = solver.singularValues();
    out.sigma.assign(s.data(), s.data() + s.size());
    return out;
}

std::size_t matrix_rank(const CMatrix &m, double cutoff) {
    const auto sigma = svd(m).sigma;
    if (sigma.empty() || sigma.front() == 0.0) {
        return 0;
    }
    const double floor = cutoff * sigma.front();
    return static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(), [floor](double s) { return s > floor; }));
}

Complex det(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw InputError("det: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         ", not square");
    }
    if (m.rows() == 0) {
        return Complex(1.0, 0.0);
    }
    return m.partialPivLu().determinant();
}

std::vector<double> hermitian_eigenvalues(const CMatrix &h) {
    if (h.rows() != h.cols()) {
        throw InputError("hermitian_eigenvalues: matrix is not square");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

EigenDecomposition eig(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw InputError("eig: matrix is not square");
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(m, true);
    EigenDecomposition out;
    const auto &ev = solver.eigenvalues();
    out.values.assign(ev.data(), ev.data() + ev.size());
    out.vectors = solver.eigenvectors();
    return out;
}

CMatrix null_space(const CMatrix &m, double threshold) {
    const Eigen::Index n = m.cols();
    // Full V is needed: a wide matrix has more null directions than singular values.
    Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullV);
    const auto &s = solver.singularValues();
    Eigen::Index nonzero = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > threshold) {
            ++nonzero;
        }
    }
    return solver.matrixV().rightCols(n - nonzero);
}

PhaseMatch phase_align(const CMatrix &a, const CMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError("phase_align: shape mismatch");
    }
    const double na = a.norm();
    const double nb = b.norm();
    PhaseMatch out;
    if (na == 0.0 && nb == 0.0) {
        out.matched = true;
        out.theta = 0.0;
        return out;
    }
    const Complex overlap = (b.adjoint() * a).trace();
    if (overlap == Complex(0.0, 0.0)) {
        out.residual = std::sqrt(na * na + nb * nb);
        return out;
    }
    double theta = std::arg(overlap);
    if (theta < 0.0) {
        theta += 2.0 * std::numbers::pi;
    }
    out.residual = (a - std::polar(1.0, theta) * b).norm();
    out.matched = out.residual <= tol * std::max(na, nb);
    if (out.matched) {
        out.theta = theta;
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

CMatrix haar_unitary(std::size_t d, std::uint64_t seed) {
    if (d == 0) {
        throw InputError("haar_unitary: dimension must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(d);
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix &r = qr.matrixQR();
    // Fix the phase of R's diagonal so the distribution is Haar, not QR-biased.
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0.0) {
            q.col(j) *= rjj / mag;
        }
    }
    return q;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double unitarity_residual(const CMatrix &u) {
    if (u.rows() != u.cols()) {
        throw InputError("unitarity_residual: matrix is not square");
    }
    return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace septrans
