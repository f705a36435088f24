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

#include "septrans/sepops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "septrans/errors.hpp"

namespace septrans {

SeparableOperation::SeparableOperation(std::size_t dA, std::size_t dB, std::vector<KrausPair> pairs)
    : dA_(dA), dB_(dB), pairs_(std::move(pairs)) {
    if (dA_ == 0 || dB_ == 0) {
        throw InputError("operation dimensions must be positive");
    }
    if (pairs_.empty()) {
        throw InputError("operation needs at least one Kraus pair");
    }
    const auto a_dim = static_cast<Eigen::Index>(dA_);
    const auto b_dim = static_cast<Eigen::Index>(dB_);
    for (std::size_t m = 0; m < pairs_.size(); ++m) {
        const KrausPair &p = pairs_[m];
        if (p.a.rows() != a_dim || p.a.cols() != a_dim || p.b.rows() != b_dim || p.b.cols() != b_dim) {
            std::ostringstream msg;
            msg << "Kraus pair " << m << " has shapes " << p.a.rows() << "x" << p.a.cols() << " and " << p.b.rows()
                << "x" << p.b.cols() << ", expected " << dA_ << "x" << dA_ << " and " << dB_ << "x" << dB_;
            throw InputError(msg.str());
        }
        if (!is_finite(p.a) || !is_finite(p.b)) {
            throw InputError("Kraus pair " + std::to_string(m) + " has non-finite entries");
        }
    }
}

SeparableOperation SeparableOperation::identity(std::size_t dA, std::size_t dB) {
    const auto a = static_cast<Eigen::Index>(dA);
    const auto b = static_cast<Eigen::Index>(dB);
    return SeparableOperation(dA, dB, {KrausPair{CMatrix::Identity(a, a), CMatrix::Identity(b, b)}});
}

CMatrix SeparableOperation::closure_sum() const {
    const auto n = static_cast<Eigen::Index>(dA_ * dB_);
    CMatrix sum = CMatrix::Zero(n, n);
    for (const KrausPair &p : pairs_) {
        sum += kron(p.a.adjoint() * p.a, p.b.adjoint() * p.b);
    }
    return sum;
}

ClosureReport validate_closure(const SeparableOperation &op, double tol) {
    const CMatrix sum = op.closure_sum();
    ClosureReport out;
    out.residual = (sum - CMatrix::Identity(sum.rows(), sum.cols())).norm();
    out.valid = out.residual <= tol;
    return out;
}

CMatrix apply(const SeparableOperation &op, const CMatrix &rho) {
    const auto n = static_cast<Eigen::Index>(op.dim_a() * op.dim_b());
    if (rho.rows() != n || rho.cols() != n) {
        throw InputError("apply: density matrix shape does not match the operation");
    }
    require_density(rho);
    CMatrix out = CMatrix::Zero(n, n);
    for (const KrausPair &p : op.pairs()) {
        const CMatrix k = kron(p.a, p.b);
        out += k * rho * k.adjoint();
    }
    return out;
}

DeterminismResult check_deterministic(const SeparableOperation &op, const BipartiteState &psi, double tol) {
    if (psi.dim_a() != op.dim_a() || psi.dim_b() != op.dim_b()) {
        throw InputError("check_deterministic: state and operation dimensions differ");
    }
    const std::size_t count = op.size();
    std::vector<CVector> outputs;
    std::vector<double> norms;
    outputs.reserve(count);
    norms.reserve(count);
    for (const KrausPair &p : op.pairs()) {
        outputs.push_back(apply_product(p.a, p.b, psi));
        norms.push_back(outputs.back().norm());
    }
    const auto ref = std::find_if(norms.begin(), norms.end(), [tol](double n) { return n > tol; });
    if (ref == norms.end()) {
        throw InputError("check_deterministic: every branch annihilates the state");
    }
    const auto ref_index = static_cast<std::size_t>(ref - norms.begin());
    const CVector phi = outputs[ref_index] / norms[ref_index];

    std::vector<double> probabilities(count, 0.0);
    std::vector<double> phases(count, 0.0);
    for (std::size_t m = 0; m < count; ++m) {
        probabilities[m] = norms[m] * norms[m];
        if (norms[m] <= tol) {
            continue;
        }
        const CVector unit = outputs[m] / norms[m];
        const PhaseMatch match = phase_align(unit, phi, tol);
        if (!match.matched) {
            return NotDeterministic{m, match.residual};
        }
        phases[m] = *match.theta;
    }
    return DeterministicCertificate{BipartiteState::normalized(psi.dim_a(), psi.dim_b(), phi),
                                    std::move(probabilities), std::move(phases)};
}

RestrictedOperation restrict_to_supports(const SeparableOperation &op, const BipartiteState &psi, double cutoff) {
    if (psi.dim_a() != op.dim_a() || psi.dim_b() != op.dim_b()) {
        throw InputError("restrict_to_supports: state and operation dimensions differ");
    }
    SupportProjectors proj = supports(psi, cutoff);
    std::vector<KrausPair> pairs;
    pairs.reserve(op.size());
    for (const KrausPair &p : op.pairs()) {
        pairs.push_back({p.a * proj.pa, p.b * proj.pb});
    }
    return {SeparableOperation(op.dim_a(), op.dim_b(), std::move(pairs)), std::move(proj)};
}

double restricted_closure_residual(const RestrictedOperation &restricted) {
    const CMatrix target = kron(restricted.projectors.pa, restricted.projectors.pb);
    return (restricted.op.closure_sum() - target).norm();
}

bool ProportionalityCertificate::all_proportional() const {
    return std::all_of(per_pair.begin(), per_pair.end(), [](const PairProportionality &p) {
        return p.unitary_proportional_a && p.unitary_proportional_b;
    });
}

namespace {

// Singular values of `op` restricted to the span of `support` are all equal:
// op acts there as scale times an isometry.
std::pair<bool, double> isometry_scale(const CMatrix &op, const CMatrix &support, double tol) {
    const auto sigma = svd(op * support).sigma;
    const double hi = sigma.front();
    const double lo = sigma.back();
    return {hi - lo <= tol * std::max(1.0, hi), hi};
}

}  // namespace

ProportionalityCertificate unitary_proportionality(const SeparableOperation &op, const BipartiteState &psi,
                                                   double tol) {
    const RestrictedOperation restricted = restrict_to_supports(op, psi);
    const SupportProjectors &proj = restricted.projectors;
    ProportionalityCertificate out;
    out.per_pair.reserve(op.size());
    for (const KrausPair &p : restricted.op.pairs()) {
        PairProportionality rec;
        std::tie(rec.unitary_proportional_a, rec.scale_a) = isometry_scale(p.a, proj.basis_a, tol);
        std::tie(rec.unitary_proportional_b, rec.scale_b) = isometry_scale(p.b, proj.basis_b, tol);
        out.per_pair.push_back(rec);
    }
    const bool nonzero = std::all_of(out.per_pair.begin(), out.per_pair.end(), [](const PairProportionality &p) {
        return p.scale_a > 0.0 && p.scale_b > 0.0;
    });
    if (out.all_proportional() && nonzero) {
        const auto n = static_cast<Eigen::Index>(out.per_pair.size());
        Eigen::MatrixXd f(n, n);
        for (Eigen::Index m = 0; m < n; ++m) {
            for (Eigen::Index k = 0; k < n; ++k) {
                const auto &pm = out.per_pair[static_cast<std::size_t>(m)];
                const auto &pk = out.per_pair[static_cast<std::size_t>(k)];
                const double wm = pm.scale_a * pm.scale_b;
                const double wk = pk.scale_a * pk.scale_b;
                f(m, k) = (wm * wm) / (wk * wk);
            }
        }
        out.pairwise_factors = std::move(f);
    }
    return out;
}

BipartiteState schmidt_form_state(const SchmidtSpectrum &spectrum) {
    const std::size_t d = spectrum.size();
    const auto n = static_cast<Eigen::Index>(d);
    CVector v = CVector::Zero(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        v(j * n + j) = spectrum[static_cast<std::size_t>(j)];
    }
    return BipartiteState(d, d, std::move(v));
}

SeparableOperation construct_two_qubit_locc(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu) {
    constexpr double kSlack = 1e-12;
    if (lambda.size() > 2 || mu.size() > 2) {
        throw InputError("construct_two_qubit_locc: spectra must have at most two coefficients");
    }
    const double l0 = lambda[0];
    const double l1 = lambda[1];
    const double m0 = mu[0];
    const double m1 = mu[1];
    if (l1 <= kSlack) {
        throw InputError("construct_two_qubit_locc: source is a product state");
    }
    if (m0 < l0 - kSlack) {
        throw InputError("construct_two_qubit_locc: target does not majorize source (mu0 < lambda0)");
    }
    if (std::abs(m0 - l0) <= kSlack) {
        return SeparableOperation::identity(2, 2);
    }
    if (m0 <= m1) {
        throw InputError("construct_two_qubit_locc: target spectrum is degenerate");
    }
    const double p = (l0 * l0 - m1 * m1) / (m0 * m0 - m1 * m1);
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);

    CMatrix a1 = CMatrix::Zero(2, 2);
    a1(0, 0) = sp * m0 / l0;
    a1(1, 1) = sp * m1 / l1;
    CMatrix diag_b = CMatrix::Zero(2, 2);
    diag_b(0, 0) = sq * m1 / l0;
    diag_b(1, 1) = sq * m0 / l1;
    // Outcome 2 leaves mu1|00> + mu0|11>; X on both sides restores mu0|00> + mu1|11>.
    const CMatrix x = pauli_x();
    return SeparableOperation(2, 2, {KrausPair{a1, CMatrix::Identity(2, 2)}, KrausPair{x * diag_b, x}});
}

}  // namespace septrans
