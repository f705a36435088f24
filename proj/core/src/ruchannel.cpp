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

#include "septrans/ruchannel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include "septrans/errors.hpp"

namespace septrans {

namespace {

constexpr double kPhaseMergeTol = 1e-8;
constexpr double kEigenspaceThreshold = 1e-7;
constexpr double kEchelonZero = 1e-12;

CVector flatten(const CMatrix &m) {
    CVector v(m.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            v(i * m.cols() + j) = m(i, j);
        }
    }
    return v;
}

CMatrix unflatten(const CVector &v, Eigen::Index d) {
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = v(i * d + j);
        }
    }
    return m;
}

// Angle in [0, 2 pi), with values within the merge tolerance of 2 pi folded to 0.
double unit_angle(Complex z) {
    double a = std::arg(z);
    if (a < 0.0) {
        a += 2.0 * std::numbers::pi;
    }
    if (2.0 * std::numbers::pi - a < kPhaseMergeTol) {
        a = 0.0;
    }
    return a;
}

// Clusters eigenvalues on the unit circle; returns one unimodular representative per cluster.
std::vector<Complex> cluster_phases(const std::vector<Complex> &values) {
    std::vector<double> angles;
    angles.reserve(values.size());
    for (Complex z : values) {
        angles.push_back(unit_angle(z));
    }
    std::sort(angles.begin(), angles.end());
    std::vector<std::vector<double>> groups;
    for (double a : angles) {
        if (!groups.empty() && a - groups.back().back() <= kPhaseMergeTol) {
            groups.back().push_back(a);
        } else {
            groups.push_back({a});
        }
    }
    // Wrap-around: the last group may sit just below 2 pi, next to a group at 0.
    if (groups.size() > 1 && groups.front().front() + 2.0 * std::numbers::pi - groups.back().back() <= kPhaseMergeTol) {
        for (double a : groups.back()) {
            groups.front().push_back(a - 2.0 * std::numbers::pi);
        }
        groups.pop_back();
    }
    std::vector<Complex> out;
    out.reserve(groups.size());
    for (const auto &g : groups) {
        Complex mean(0.0, 0.0);
        for (double a : g) {
            mean += std::polar(1.0, a);
        }
        out.push_back(mean / std::abs(mean));
    }
    return out;
}

// Reduced row echelon form of the span of the columns of q; one row per basis vector.
std::vector<CVector> echelon_basis(const CMatrix &q) {
    CMatrix r = q.transpose();
    const Eigen::Index rows = r.rows();
    const Eigen::Index cols = r.cols();
    Eigen::Index lead = 0;
    for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
        Eigen::Index pivot = lead;
        for (Eigen::Index i = lead + 1; i < rows; ++i) {
            if (std::abs(r(i, c)) > std::abs(r(pivot, c))) {
                pivot = i;
            }
        }
        if (std::abs(r(pivot, c)) <= kEchelonZero) {
            continue;
        }
        r.row(lead).swap(r.row(pivot));
        r.row(lead) /= r(lead, c);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i != lead) {
                r.row(i) -= r(i, c) * r.row(lead);
            }
        }
        ++lead;
    }
    std::vector<CVector> out;
    for (Eigen::Index i = 0; i < lead; ++i) {
        CVector v = r.row(i).transpose();
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            double re = v(k).real();
            double im = v(k).imag();
            if (std::abs(re) <= kEchelonZero) {
                re = 0.0;
            }
            if (std::abs(im) <= kEchelonZero) {
                im = 0.0;
            }
            v(k) = Complex(re, im);
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::size_t generic_member_rank(const std::vector<CMatrix> &basis) {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t best = 0;
    for (int trial = 0; trial < 3; ++trial) {
        CMatrix member = CMatrix::Zero(basis.front().rows(), basis.front().cols());
        for (const CMatrix &c : basis) {
            const double re = normal(rng);
            const double im = normal(rng);
            member += Complex(re, im) * c;
        }
        best = std::max(best, matrix_rank(member));
    }
    return best;
}

std::string grid_label(char side, const ConditionEntry &e) {
    std::ostringstream s;
    s << side << "(m=" << e.m << ",n=" << e.n << ",j=" << e.j << ",k=" << e.k << ")";
    return s.str();
}

}  // namespace

RandomUnitaryChannel::RandomUnitaryChannel(std::size_t d, std::vector<UnitaryTerm> terms)
    : d_(d), terms_(std::move(terms)) {
    if (d_ == 0) {
        throw InputError("channel dimension must be positive");
    }
    if (terms_.empty()) {
        throw InputError("channel needs at least one term");
    }
    const auto n = static_cast<Eigen::Index>(d_);
    for (std::size_t m = 0; m < terms_.size(); ++m) {
        const UnitaryTerm &t = terms_[m];
        if (t.u.rows() != n || t.u.cols() != n || t.v.rows() != n || t.v.cols() != n) {
            throw InputError("channel term " + std::to_string(m) + " has the wrong shape");
        }
        if (!std::isfinite(t.p) || !is_finite(t.u) || !is_finite(t.v)) {
            throw InputError("channel term " + std::to_string(m) + " has non-finite entries");
        }
    }
}

SeparableOperation RandomUnitaryChannel::to_operation() const {
    std::vector<KrausPair> pairs;
    pairs.reserve(terms_.size());
    for (const UnitaryTerm &t : terms_) {
        pairs.push_back({std::sqrt(std::max(t.p, 0.0)) * t.u, t.v});
    }
    return SeparableOperation(d_, d_, std::move(pairs));
}

RandomUnitaryChannel xz_channel(double p) {
    return RandomUnitaryChannel(2, {UnitaryTerm{p, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                    UnitaryTerm{1.0 - p, pauli_x(), pauli_z()}});
}

ChannelReport validate_channel(const RandomUnitaryChannel &ch, double tol) {
    ChannelReport out;
    double total = 0.0;
    out.probabilities_positive = true;
    for (const UnitaryTerm &t : ch.terms()) {
        total += t.p;
        out.probabilities_positive = out.probabilities_positive && t.p > 0.0;
        out.unitarity_residuals_u.push_back(unitarity_residual(t.u));
        out.unitarity_residuals_v.push_back(unitarity_residual(t.v));
    }
    out.probability_residual = std::abs(total - 1.0);
    out.closure_residual = validate_closure(ch.to_operation(), tol).residual;
    const auto within = [tol](double r) { return r <= tol; };
    out.valid = out.probabilities_positive && within(out.probability_residual) &&
                std::all_of(out.unitarity_residuals_u.begin(), out.unitarity_residuals_u.end(), within) &&
                std::all_of(out.unitarity_residuals_v.begin(), out.unitarity_residuals_v.end(), within) &&
                within(out.closure_residual);
    return out;
}

bool CollectionReport::all_deterministic() const {
    return std::all_of(per_state.begin(), per_state.end(), [](const StateOutcome &s) { return s.deterministic; });
}

bool CollectionReport::any_deterministic() const {
    return std::any_of(per_state.begin(), per_state.end(), [](const StateOutcome &s) { return s.deterministic; });
}

CollectionReport check_collection(const RandomUnitaryChannel &ch, const std::vector<BipartiteState> &states,
                                  double tol) {
    const std::size_t d = ch.dim();
    std::vector<CMatrix> duals;
    std::vector<CMatrix> swapped;
    for (std::size_t j = 0; j < states.size(); ++j) {
        const BipartiteState &psi = states[j];
        if (psi.dim_a() != d || psi.dim_b() != d) {
            throw InputError("check_collection: state " + std::to_string(j) + " has the wrong dimensions");
        }
        if (schmidt_decompose(psi).rank != d) {
            throw InputError("check_collection: state " + std::to_string(j) + " does not have full Schmidt rank");
        }
        duals.push_back(to_dual(psi));
        swapped.push_back(duals.back().transpose());
    }

    CollectionReport report;
    report.pair_condition_a = report.pair_condition_b = true;
    report.pair_condition_a_m1 = report.pair_condition_b_m1 = true;
    const auto &terms = ch.terms();
    for (std::size_t m = 0; m < terms.size(); ++m) {
        for (std::size_t n = 0; n < terms.size(); ++n) {
            const CMatrix g = terms[m].u.adjoint() * terms[n].u;
            const CMatrix h = terms[m].v.adjoint() * terms[n].v;
            for (std::size_t j = 0; j < states.size(); ++j) {
                for (std::size_t k = 0; k < states.size(); ++k) {
                    const CMatrix x = duals[j] * duals[k].adjoint();
                    const CMatrix y = swapped[j] * swapped[k].adjoint();
                    ConditionEntry ea{m, n, j, k, phase_align(g * x, x * g, tol)};
                    ConditionEntry eb{m, n, j, k, phase_align(h * y, y * h, tol)};
                    report.pair_condition_a = report.pair_condition_a && ea.match.matched;
                    report.pair_condition_b = report.pair_condition_b && eb.match.matched;
                    if (m == 0) {
                        report.pair_condition_a_m1 = report.pair_condition_a_m1 && ea.match.matched;
                        report.pair_condition_b_m1 = report.pair_condition_b_m1 && eb.match.matched;
                    }
                    report.phase_table_a.push_back(std::move(ea));
                    report.phase_table_b.push_back(std::move(eb));
                }
            }
        }
    }

    const SeparableOperation op = ch.to_operation();
    for (const BipartiteState &psi : states) {
        StateOutcome outcome;
        const DeterminismResult r = check_deterministic(op, psi, tol);
        if (const auto *cert = std::get_if<DeterministicCertificate>(&r)) {
            outcome.deterministic = true;
            outcome.phi = cert->phi;
        }
        report.per_state.push_back(std::move(outcome));
    }

    // Implications of the collection theorem; any failure is a numerical contradiction.
    const auto fail = [](const std::string &what) { throw InconsistencyError("check_collection: " + what); };
    if (report.all_deterministic() && !report.pair_condition_a) {
        const auto it = std::find_if(report.phase_table_a.begin(), report.phase_table_a.end(),
                                     [](const ConditionEntry &e) { return !e.match.matched; });
        fail("all states deterministic but U-side condition fails at " + grid_label('A', *it));
    }
    if (report.all_deterministic() && !report.pair_condition_b) {
        const auto it = std::find_if(report.phase_table_b.begin(), report.phase_table_b.end(),
                                     [](const ConditionEntry &e) { return !e.match.matched; });
        fail("all states deterministic but V-side condition fails at " + grid_label('B', *it));
    }
    if (report.pair_condition_a_m1 != report.pair_condition_a) {
        fail("U-side condition at m = 1 does not reproduce the full grid");
    }
    if (report.pair_condition_b_m1 != report.pair_condition_b) {
        fail("V-side condition at m = 1 does not reproduce the full grid");
    }
    if ((report.pair_condition_a_m1 || report.pair_condition_b_m1) && report.any_deterministic() &&
        !report.all_deterministic()) {
        fail("pair condition holds and one state is deterministic, but not all are");
    }
    return report;
}

bool FixedEigenspace::has_full_rank_member() const {
    return !basis.empty() && generic_rank == static_cast<std::size_t>(basis.front().rows());
}

bool FixedFamily::unconstrained() const {
    return eigenspaces.size() == 1 && eigenspaces.front().basis.size() == d * d;
}

FixedFamily fixed_states(const RandomUnitaryChannel &ch, double tol) {
    const auto d = static_cast<Eigen::Index>(ch.dim());
    const auto dd = d * d;
    const auto &terms = ch.terms();

    FixedFamily family;
    family.d = ch.dim();
    for (const UnitaryTerm &t : terms) {
        CMatrix w = terms.front().u.adjoint() * t.u;
        CMatrix ybar = t.v.transpose() * terms.front().v.conjugate();
        family.generator_pairs.emplace_back(std::move(w), std::move(ybar));
    }

    struct Candidate {
        CMatrix basis;  // dd x k, orthonormal columns
        std::vector<Complex> phases;
    };
    std::vector<Candidate> current{{CMatrix::Identity(dd, dd), {}}};
    for (const auto &[w, ybar] : family.generator_pairs) {
        // Row-major vectorization: vec(W C Ybar) = (W (x) Ybar^T) vec(C).
        const CMatrix super = kron(w, ybar.transpose());
        const std::vector<Complex> phases = cluster_phases(eig(super).values);
        std::vector<Candidate> next;
        for (const Candidate &cand : current) {
            for (Complex omega : phases) {
                const CMatrix shifted = (super - omega * CMatrix::Identity(dd, dd)) * cand.basis;
                const CMatrix coeffs = null_space(shifted, kEigenspaceThreshold);
                if (coeffs.cols() == 0) {
                    continue;
                }
                Candidate refined{cand.basis * coeffs, cand.phases};
                refined.phases.push_back(omega);
                next.push_back(std::move(refined));
            }
        }
        current = std::move(next);
    }

    std::sort(current.begin(), current.end(), [](const Candidate &x, const Candidate &y) {
        for (std::size_t i = 0; i < x.phases.size(); ++i) {
            const double ax = unit_angle(x.phases[i]);
            const double ay = unit_angle(y.phases[i]);
            if (std::abs(ax - ay) > kPhaseMergeTol) {
                return ax < ay;
            }
        }
        return false;
    });

    for (const Candidate &cand : current) {
        FixedEigenspace space;
        for (Complex omega : cand.phases) {
            // Snap exact roots of unity that are merely rounded.
            const double re = std::abs(omega.real()) < kEchelonZero ? 0.0 : omega.real();
            const double im = std::abs(omega.imag()) < kEchelonZero ? 0.0 : omega.imag();
            space.phases.emplace_back(re, im);
        }
        for (const CVector &row : echelon_basis(cand.basis)) {
            space.basis.push_back(unflatten(row, d));
        }
        space.generic_rank = generic_member_rank(space.basis);
        family.eigenspaces.push_back(std::move(space));
    }

    // Compatibility: both pair conditions hold on basis pairs with the phase
    // predicted by the eigenvalues, so they extend to all members.
    const std::size_t count = family.eigenspaces.size();
    family.compatibility.assign(count, std::vector<bool>(count, true));
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t t = 0; t < count; ++t) {
            const FixedEigenspace &es = family.eigenspaces[s];
            const FixedEigenspace &et = family.eigenspaces[t];
            bool ok = true;
            for (std::size_t m = 0; m < terms.size() && ok; ++m) {
                for (std::size_t n = 0; n < terms.size() && ok; ++n) {
                    const Complex predicted =
                        es.phases[n] * std::conj(et.phases[n]) * std::conj(es.phases[m]) * et.phases[m];
                    const CMatrix g = terms[m].u.adjoint() * terms[n].u;
                    const CMatrix h = terms[m].v.adjoint() * terms[n].v;
                    for (const CMatrix &c : es.basis) {
                        for (const CMatrix &e : et.basis) {
                            const CMatrix x = c * e.adjoint();
                            const CMatrix y = c.transpose() * e.conjugate();
                            const PhaseMatch ma = phase_align(g * x, x * g, tol);
                            const PhaseMatch mb = phase_align(h * y, y * h, tol);
                            // Products below the tolerance carry no phase information.
                            const double scale = c.norm() * e.norm();
                            const auto phase_ok = [&](const PhaseMatch &pm, const CMatrix &lhs) {
                                if (lhs.norm() <= tol * scale) {
                                    return true;
                                }
                                return pm.matched &&
                                       std::abs(std::polar(1.0, *pm.theta) - predicted) <= kPhaseMergeTol * 10.0;
                            };
                            if (!phase_ok(ma, g * x) || !phase_ok(mb, h * y)) {
                                ok = false;
                            }
                        }
                    }
                }
            }
            family.compatibility[s][t] = ok;
        }
    }
    return family;
}

double subspace_distance(const std::vector<CMatrix> &x, const std::vector<CMatrix> &y) {
    const auto projector = [](const std::vector<CMatrix> &set, Eigen::Index n) {
        if (set.empty()) {
            return CMatrix(CMatrix::Zero(n, n));
        }
        CMatrix cols(n, static_cast<Eigen::Index>(set.size()));
        for (std::size_t i = 0; i < set.size(); ++i) {
            cols.col(static_cast<Eigen::Index>(i)) = flatten(set[i]);
        }
        const Svd f = svd(cols);
        const double floor = kRankCutoff * f.sigma.front();
        Eigen::Index r = 0;
        while (r < static_cast<Eigen::Index>(f.sigma.size()) && f.sigma[static_cast<std::size_t>(r)] > floor) {
            ++r;
        }
        const CMatrix q = f.U.leftCols(r);
        return CMatrix(q * q.adjoint());
    };
    const Eigen::Index n = !x.empty() ? x.front().size() : (!y.empty() ? y.front().size() : 0);
    if (n == 0) {
        return 0.0;
    }
    return svd(projector(x, n) - projector(y, n)).sigma.front();
}

BipartiteState xz_fixed_point() {
    CVector v(4);
    v << 0.5, 0.5, 0.5, -0.5;
    return BipartiteState(2, 2, std::move(v));
}

BipartiteState xz_family_state(Complex a, Complex b, bool plus) {
    const double s = plus ? 1.0 : -1.0;
    CVector v(4);
    v << a, b, s * a, -s * b;
    return BipartiteState::normalized(2, 2, v);
}

bool ExampleReport::all_pass() const {
    return fixed_point && dual_matches && deterministic_plus == samples_per_family &&
           deterministic_minus == samples_per_family && families_recovered;
}

ExampleReport cross_check_example(double p, double tol) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("cross_check_example: p must lie in (0, 1)");
    }
    ExampleReport report;
    report.p = p;
    const RandomUnitaryChannel ch = xz_channel(p);
    const SeparableOperation op = ch.to_operation();

    const BipartiteState psi1 = xz_fixed_point();
    report.fixed_point_fidelity = fidelity(psi1, septrans::apply(op, density(psi1)));
    report.fixed_point = report.fixed_point_fidelity >= 1.0 - 1e-10;

    CMatrix expected(2, 2);
    expected << 0.5, 0.5, 0.5, -0.5;
    report.dual_matches = to_dual(psi1) == expected;

    report.samples_per_family = 32;
    std::mt19937_64 rng(0xC0FFEEULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = 0; i < report.samples_per_family; ++i) {
        for (bool plus : {true, false}) {
            const Complex a(normal(rng), normal(rng));
            const Complex b(normal(rng), normal(rng));
            const BipartiteState psi = xz_family_state(a, b, plus);
            if (std::holds_alternative<DeterministicCertificate>(check_deterministic(op, psi, tol))) {
                ++(plus ? report.deterministic_plus : report.deterministic_minus);
            }
        }
    }

    const FixedFamily family = fixed_states(ch, tol);
    CMatrix c1(2, 2), c2(2, 2), c3(2, 2), c4(2, 2);
    c1 << 1, 0, 1, 0;
    c2 << 0, 1, 0, -1;
    c3 << 1, 0, -1, 0;
    c4 << 0, 1, 0, 1;
    if (family.eigenspaces.size() == 2) {
        report.subspace_distance = std::max(subspace_distance(family.eigenspaces[0].basis, {c1, c2}),
                                            subspace_distance(family.eigenspaces[1].basis, {c3, c4}));
        report.families_recovered = report.subspace_distance < 1e-9;
    } else {
        report.subspace_distance = 1.0;
    }
    return report;
}

}  // namespace septrans
