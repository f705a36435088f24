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

#include "septrans/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "septrans/errors.hpp"

namespace septrans {

namespace {

constexpr double kOrderSlack = 1e-12;

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InputError("spectrum must be nonempty");
    }
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j]) || values_[j] < 0.0) {
            throw InputError("spectrum entries must be finite and nonnegative");
        }
        if (j > 0 && values_[j] > values_[j - 1] + kOrderSlack) {
            throw InputError("spectrum must be sorted in descending order");
        }
        sum_sq += values_[j] * values_[j];
    }
    if (std::abs(sum_sq - 1.0) > kNormTol) {
        std::ostringstream msg;
        msg << "spectrum is not normalized (sum of squares " << sum_sq << ")";
        throw InputError(msg.str());
    }
}

SchmidtSpectrum SchmidtSpectrum::from_squares(std::vector<double> squares) {
    std::sort(squares.begin(), squares.end(), std::greater<>());
    std::vector<double> values;
    values.reserve(squares.size());
    for (double s : squares) {
        if (s < 0.0) {
            throw InputError("squared coefficients must be nonnegative");
        }
        values.push_back(std::sqrt(s));
    }
    return SchmidtSpectrum(std::move(values));
}

SchmidtSpectrum SchmidtSpectrum::of(const BipartiteState &psi) {
    return SchmidtSpectrum(schmidt_decompose(psi).coefficients);
}

std::vector<double> SchmidtSpectrum::squares() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (double v : values_) {
        out.push_back(v * v);
    }
    return out;
}

std::size_t SchmidtSpectrum::rank(double cutoff) const {
    const double floor = cutoff * values_.front();
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(), [floor](double v) { return v > floor; }));
}

bool majorizes(const SchmidtSpectrum &mu, const SchmidtSpectrum &lambda, double tol) {
    const std::size_t n = std::max(mu.size(), lambda.size());
    double sum_mu = 0.0;
    double sum_lambda = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum_mu += mu[k] * mu[k];
        sum_lambda += lambda[k] * lambda[k];
        if (sum_mu < sum_lambda - tol) {
            return false;
        }
    }
    return true;
}

ProductCondition product_condition(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu, double tol) {
    const std::size_t r = lambda.rank();
    ProductCondition out;
    out.lhs = 1.0;
    out.rhs = 1.0;
    for (std::size_t j = 0; j < r; ++j) {
        out.lhs *= lambda[j];
        out.rhs *= mu[j];
    }
    out.holds = out.lhs >= out.rhs - tol;
    return out;
}

std::string_view to_string(VerdictTag tag) {
    switch (tag) {
        case VerdictTag::ImpossibleRank:
            return "ImpossibleRank";
        case VerdictTag::ImpossibleProduct:
            return "ImpossibleProduct";
        case VerdictTag::EqualSpectra:
            return "EqualSpectra";
        case VerdictTag::LoccPossible:
            return "LoccPossible";
        case VerdictTag::OpenRegion:
            return "OpenRegion";
    }
    return "?";
}

bool same_spectrum(const SchmidtSpectrum &a, const SchmidtSpectrum &b, double tol) {
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(a[j] - b[j]) > tol) {
            return false;
        }
    }
    return true;
}

TransformVerdict transform_verdict(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu, double tol) {
    TransformVerdict v{VerdictTag::OpenRegion, {}};
    v.details.r_psi = lambda.rank();
    v.details.r_phi = mu.rank();
    const ProductCondition pc = product_condition(lambda, mu, tol);
    v.details.product_psi = pc.lhs;
    v.details.product_phi = pc.rhs;
    v.details.majorization = majorizes(mu, lambda, tol);

    if (v.details.r_phi > v.details.r_psi) {
        v.tag = VerdictTag::ImpossibleRank;
        return v;
    }
    if (!pc.holds) {
        v.tag = VerdictTag::ImpossibleProduct;
        return v;
    }
    // Products of up to ~9 coefficients get small, so equality is judged
    // relative to their size.
    const bool equal_products =
        pc.rhs > 0.0 && std::abs(pc.lhs - pc.rhs) <= tol * std::max(pc.lhs, pc.rhs);
    if (equal_products) {
        if (same_spectrum(lambda, mu, tol)) {
            v.tag = VerdictTag::EqualSpectra;
        } else {
            v.tag = VerdictTag::ImpossibleProduct;
            v.details.equal_products_unequal_spectra = true;
        }
        return v;
    }
    v.tag = v.details.majorization ? VerdictTag::LoccPossible : VerdictTag::OpenRegion;
    return v;
}

TransformVerdict check_certified_pair(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu, double tol) {
    TransformVerdict v = transform_verdict(lambda, mu, tol);
    if (v.impossible()) {
        std::ostringstream msg;
        msg << "certified deterministic map has verdict " << to_string(v.tag) << " (products " << v.details.product_psi
            << " vs " << v.details.product_phi << ", ranks " << v.details.r_psi << " vs " << v.details.r_phi << ")";
        throw InconsistencyError(msg.str());
    }
    return v;
}

ReverseVerdict reverse_verdict(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu, double tol) {
    if (transform_verdict(lambda, mu, tol).impossible()) {
        throw InputError("reverse_verdict: forward transformation is already impossible");
    }
    return {same_spectrum(lambda, mu, tol)};
}

Dim2Collapse dim2_collapse(const SchmidtSpectrum &lambda, const SchmidtSpectrum &mu, double tol) {
    if (lambda.size() > 2 || mu.size() > 2) {
        throw InputError("dim2_collapse: spectra must have at most two coefficients");
    }
    Dim2Collapse out;
    out.product_holds = mu.rank() <= lambda.rank() && product_condition(lambda, mu, tol).holds;
    out.majorization_holds = majorizes(mu, lambda, tol);
    out.agree = out.product_holds == out.majorization_holds;
    return out;
}

namespace {

// det(Q)^(1/D) from the Hermitian eigenvalues of a PSD matrix.
double det_root(const CMatrix &q) {
    const auto ev = hermitian_eigenvalues(q);
    double log_sum = 0.0;
    for (double e : ev) {
        if (e <= 0.0) {
            return 0.0;
        }
        log_sum += std::log(e);
    }
    return std::exp(log_sum / static_cast<double>(ev.size()));
}

}  // namespace

MinkowskiCheck minkowski_check(const std::vector<CMatrix> &family, double tol) {
    if (family.empty()) {
        throw InputError("minkowski_check: family must be nonempty");
    }
    const Eigen::Index dim = family.front().rows();
    std::vector<CMatrix> herm;
    herm.reserve(family.size());
    for (const CMatrix &q : family) {
        if (q.rows() != dim || q.cols() != dim || dim == 0) {
            throw InputError("minkowski_check: matrices must be square and of equal size");
        }
        if (!is_finite(q)) {
            throw InputError("minkowski_check: non-finite entries");
        }
        const double scale = std::max(1.0, q.norm());
        if ((q - q.adjoint()).norm() > tol * scale) {
            throw InputError("minkowski_check: matrix is not Hermitian");
        }
        CMatrix h = 0.5 * (q + q.adjoint());
        if (hermitian_eigenvalues(h).front() < -tol * scale) {
            throw InputError("minkowski_check: matrix is not positive semidefinite");
        }
        herm.push_back(std::move(h));
    }

    MinkowskiCheck out;
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const CMatrix &h : herm) {
        sum += h;
        out.rhs += det_root(h);
    }
    out.lhs = det_root(sum);
    out.gap = out.lhs - out.rhs;

    const auto ref = std::max_element(herm.begin(), herm.end(),
                                      [](const CMatrix &a, const CMatrix &b) { return a.norm() < b.norm(); });
    const double ref_norm = ref->norm();
    out.proportional = true;
    if (ref_norm > 0.0) {
        const double ref_trace = ref->trace().real();
        for (const CMatrix &h : herm) {
            const double f = h.trace().real() / ref_trace;
            if ((h - f * *ref).norm() > tol * std::max(h.norm(), ref_norm)) {
                out.proportional = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace septrans
