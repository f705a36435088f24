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

#include "septrans/lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <thread>
#include <utility>

#include "septrans/errors.hpp"

namespace septrans::lab {

SchmidtSpectrum sample_spectrum(std::size_t d, std::uint64_t seed) {
    if (d == 0) {
        throw InputError("sample_spectrum: d must be positive");
    }
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> probs(d);
    double total = 0.0;
    for (double &x : probs) {
        x = expo(rng);
        total += x;
    }
    for (double &x : probs) {
        x /= total;
    }
    return SchmidtSpectrum::from_squares(std::move(probs));
}

void t_transform(std::vector<double> &probs, std::size_t i, std::size_t j, double t) {
    const double xi = probs.at(i);
    const double xj = probs.at(j);
    probs[i] = t * xi + (1.0 - t) * xj;
    probs[j] = t * xj + (1.0 - t) * xi;
}

MajorizingPair sample_majorizing_pair(std::size_t d, std::uint64_t seed, std::optional<std::size_t> transforms) {
    if (d < 2) {
        throw InputError("sample_majorizing_pair: d must be at least 2");
    }
    SchmidtSpectrum mu = sample_spectrum(d, derive_seed(seed, 0));
    std::vector<double> probs = mu.squares();
    std::mt19937_64 rng(derive_seed(seed, 1));
    std::uniform_int_distribution<std::size_t> count_dist(1, 3);
    std::uniform_int_distribution<std::size_t> index(0, d - 1);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    const std::size_t count = transforms ? *transforms : count_dist(rng);
    for (std::size_t step = 0; step < count; ++step) {
        const std::size_t i = index(rng);
        std::size_t j = index(rng);
        while (j == i) {
            j = index(rng);
        }
        t_transform(probs, i, j, weight(rng));
    }
    return {SchmidtSpectrum::from_squares(std::move(probs)), std::move(mu)};
}

CMatrix random_psd(std::size_t dim, std::uint64_t seed, std::optional<std::size_t> rank) {
    const auto n = static_cast<Eigen::Index>(dim);
    const auto k = static_cast<Eigen::Index>(rank.value_or(dim));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    const CMatrix q = g * g.adjoint();
    return 0.5 * (q + q.adjoint());
}

SeparableOperation random_one_way_locc(std::size_t dA, std::size_t dB, std::size_t outcomes, std::uint64_t seed) {
    if (outcomes == 0) {
        throw InputError("random_one_way_locc: need at least one outcome");
    }
    const auto a = static_cast<Eigen::Index>(dA);
    const CMatrix isometry = haar_unitary(outcomes * dA, derive_seed(seed, 0)).leftCols(a);
    std::vector<KrausPair> pairs;
    pairs.reserve(outcomes);
    for (std::size_t m = 0; m < outcomes; ++m) {
        pairs.push_back({isometry.middleRows(static_cast<Eigen::Index>(m) * a, a),
                         haar_unitary(dB, derive_seed(seed, m + 1))});
    }
    return SeparableOperation(dA, dB, std::move(pairs));
}

RandomUnitaryChannel random_unitary_channel(std::size_t d, std::size_t terms, std::uint64_t seed) {
    if (terms == 0) {
        throw InputError("random_unitary_channel: need at least one term");
    }
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(terms);
    double total = 0.0;
    for (double &w : weights) {
        w = expo(rng);
        total += w;
    }
    std::vector<UnitaryTerm> out;
    out.reserve(terms);
    for (std::size_t m = 0; m < terms; ++m) {
        out.push_back({weights[m] / total, haar_unitary(d, derive_seed(seed, 2 * m + 1)),
                       haar_unitary(d, derive_seed(seed, 2 * m + 2))});
    }
    return RandomUnitaryChannel(d, std::move(out));
}

Purity purity_oracle(const CMatrix &rho, double tol) {
    require_density(rho, tol);
    const double top = hermitian_eigenvalues(rho).back();
    return {top >= 1.0 - tol, top};
}

OracleAgreement determinism_vs_purity(const SeparableOperation &op, const BipartiteState &psi, double tol) {
    OracleAgreement out;
    out.deterministic = std::holds_alternative<DeterministicCertificate>(check_deterministic(op, psi, tol));
    out.pure = purity_oracle(septrans::apply(op, density(psi)), tol).pure;
    return out;
}

namespace {

constexpr double kBoundaryTol = 1e-12;

// Two random qubit spectra, ordered so that the second majorizes the first.
std::pair<SchmidtSpectrum, SchmidtSpectrum> ordered_qubit_pair(std::uint64_t seed) {
    SchmidtSpectrum s1 = sample_spectrum(2, derive_seed(seed, 0));
    SchmidtSpectrum s2 = sample_spectrum(2, derive_seed(seed, 1));
    if (s1[0] > s2[0]) {
        std::swap(s1, s2);
    }
    return {std::move(s1), std::move(s2)};
}

TrialResult product_trial(std::uint64_t seed) {
    const auto [lambda, mu] = ordered_qubit_pair(seed);
    const SeparableOperation base = construct_two_qubit_locc(lambda, mu);
    // Hide the Schmidt bases behind random local unitaries on the input side.
    const CMatrix u = haar_unitary(2, derive_seed(seed, 2));
    const CMatrix v = haar_unitary(2, derive_seed(seed, 3));
    std::vector<KrausPair> pairs;
    for (const KrausPair &p : base.pairs()) {
        pairs.push_back({p.a * u.adjoint(), p.b * v.adjoint()});
    }
    const SeparableOperation op(2, 2, std::move(pairs));
    const BipartiteState psi = BipartiteState::normalized(2, 2, apply_product(u, v, schmidt_form_state(lambda)));

    TrialResult out;
    const DeterminismResult r = check_deterministic(op, psi);
    const auto *cert = std::get_if<DeterministicCertificate>(&r);
    if (cert == nullptr || !determinism_vs_purity(op, psi).agree()) {
        out.ok = false;
        out.residual = 1.0;
        return out;
    }
    const SchmidtSpectrum got = SchmidtSpectrum::of(cert->phi);
    check_certified_pair(lambda, got);
    const ProductCondition pc = product_condition(lambda, got, 1e-9);
    out.residual = std::max(std::abs(got[0] - mu[0]), std::max(0.0, pc.rhs - pc.lhs));
    out.ok = pc.holds && same_spectrum(got, mu);
    return out;
}

TrialResult qubit_collapse_trial(std::uint64_t seed) {
    const SchmidtSpectrum lambda = sample_spectrum(2, derive_seed(seed, 0));
    const SchmidtSpectrum mu = sample_spectrum(2, derive_seed(seed, 1));
    const Dim2Collapse c = dim2_collapse(lambda, mu, kBoundaryTol);
    return {c.agree, c.agree ? 0.0 : 1.0};
}

TrialResult majorization_product_trial(std::uint64_t seed) {
    const MajorizingPair pair = sample_majorizing_pair(4, seed);
    const ProductCondition pc = product_condition(pair.lambda, pair.mu, 1e-9);
    return {pc.holds && majorizes(pair.mu, pair.lambda), std::max(0.0, pc.rhs - pc.lhs)};
}

CMatrix unit_trace(const CMatrix &q) {
    return q / q.trace().real();
}

TrialResult minkowski_trial(std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::uniform_int_distribution<std::size_t> size_dist(2, 4);
    std::uniform_int_distribution<std::size_t> dim_dist(2, 9);
    std::uniform_real_distribution<double> scale_dist(0.1, 3.0);
    const std::size_t size = size_dist(rng);
    const std::size_t dim = dim_dist(rng);

    std::vector<CMatrix> generic;
    std::vector<CMatrix> proportional;
    // Unit-trace members keep the gap at O(1) so absolute tolerances apply.
    const CMatrix base = unit_trace(random_psd(dim, derive_seed(seed, 1)));
    for (std::size_t m = 0; m < size; ++m) {
        generic.push_back(unit_trace(random_psd(dim, derive_seed(seed, 10 + m))));
        proportional.push_back(scale_dist(rng) * base);
    }
    const MinkowskiCheck g = minkowski_check(generic);
    const MinkowskiCheck p = minkowski_check(proportional);
    TrialResult out;
    out.residual = std::max(std::max(0.0, -g.gap), std::abs(p.gap));
    out.ok = g.gap >= -1e-12 && std::abs(p.gap) <= 1e-10 && p.proportional && !g.proportional;
    return out;
}

TrialResult example_collection_trial(std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    std::uniform_real_distribution<double> p_dist(0.01, 0.99);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double p = p_dist(rng);
    const bool plus = (rng() & 1U) != 0U;
    const double are = normal(rng);
    const double aim = normal(rng);
    const double bre = normal(rng);
    const double bim = normal(rng);
    const BipartiteState member = xz_family_state({are, aim}, {bre, bim}, plus);
    const RandomUnitaryChannel ch = xz_channel(p);
    const SeparableOperation op = ch.to_operation();

    TrialResult out;
    const BipartiteState outside = random_state(2, 2, derive_seed(seed, 1));
    if (schmidt_decompose(member).rank < 2) {
        // Measure-zero corner of the family (a or b vanishing); only the
        // single-state purity check applies.
        out.ok = determinism_vs_purity(op, member).agree();
        return out;
    }
    const std::vector<BipartiteState> inside_states{xz_fixed_point(), member};
    const CollectionReport inside = check_collection(ch, inside_states);
    const CollectionReport mixed = check_collection(ch, {member, outside});
    const OracleAgreement in_agree = determinism_vs_purity(op, member);
    const OracleAgreement out_agree = determinism_vs_purity(op, outside);
    out.ok = inside.pair_condition_a && inside.pair_condition_b && inside.all_deterministic() && in_agree.agree() &&
             in_agree.deterministic && out_agree.agree() && !out_agree.deterministic && !mixed.pair_condition_a &&
             !mixed.pair_condition_b;
    out.residual = out.ok ? 0.0 : 1.0;
    return out;
}

TrialResult oracle_agreement_trial(std::uint64_t seed) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    const std::uint64_t kind = rng() % 5;
    const std::uint64_t s = derive_seed(seed, 1);
    OracleAgreement a;
    switch (kind) {
        case 0: {
            std::uniform_int_distribution<std::size_t> dim(2, 3);
            const std::size_t dA = dim(rng);
            const std::size_t dB = dim(rng);
            a = determinism_vs_purity(random_one_way_locc(dA, dB, 2 + rng() % 3, s),
                                      random_state(dA, dB, derive_seed(seed, 2)));
            break;
        }
        case 1: {
            const auto [lambda, mu] = ordered_qubit_pair(s);
            a = determinism_vs_purity(construct_two_qubit_locc(lambda, mu), schmidt_form_state(lambda));
            break;
        }
        case 2: {
            const std::size_t d = 2 + rng() % 2;
            a = determinism_vs_purity(random_unitary_channel(d, 2 + rng() % 2, s).to_operation(),
                                      random_state(d, d, derive_seed(seed, 2)));
            break;
        }
        case 3: {
            std::normal_distribution<double> normal(0.0, 1.0);
            const double are = normal(rng);
            const double aim = normal(rng);
            const double bre = normal(rng);
            const double bim = normal(rng);
            const bool plus = (rng() & 1U) != 0U;
            a = determinism_vs_purity(xz_channel(0.5).to_operation(),
                                      xz_family_state({are, aim}, {bre, bim}, plus));
            break;
        }
        default: {
            // A single local unitary is always deterministic.
            const std::size_t d = 2 + rng() % 2;
            const SeparableOperation op(
                d, d, {KrausPair{haar_unitary(d, s), haar_unitary(d, derive_seed(seed, 3))}});
            a = determinism_vs_purity(op, random_state(d, d, derive_seed(seed, 2)));
            break;
        }
    }
    return {a.agree(), a.agree() ? 0.0 : 1.0};
}

using TrialFn = TrialResult (*)(std::uint64_t);

const std::map<std::string, TrialFn> &registry() {
    static const std::map<std::string, TrialFn> table{
        {"theorem1_product", &product_trial},
        {"corollary2_collapse", &qubit_collapse_trial},
        {"majorization_implies_product", &majorization_product_trial},
        {"minkowski", &minkowski_trial},
        {"theorem2_example", &example_collection_trial},
        {"determinism_oracle_agreement", &oracle_agreement_trial},
    };
    return table;
}

TrialFn lookup(const std::string &name) {
    const auto it = registry().find(name);
    if (it == registry().end()) {
        throw InputError("unknown sweep '" + name + "'");
    }
    return it->second;
}

TrialResult guarded(TrialFn fn, std::uint64_t seed) {
    try {
        return fn(seed);
    } catch (const std::exception &) {
        return {false, 1.0};
    }
}

}  // namespace

const std::vector<std::string> &sweep_names() {
    static const std::vector<std::string> names{
        "theorem1_product", "corollary2_collapse", "majorization_implies_product",
        "minkowski",        "theorem2_example",    "determinism_oracle_agreement",
    };
    return names;
}

TrialResult run_trial(const std::string &name, std::uint64_t trial_seed) {
    return guarded(lookup(name), trial_seed);
}

SweepReport run_sweep(const std::string &name, std::size_t trials, std::uint64_t master_seed, std::size_t threads) {
    const TrialFn fn = lookup(name);
    const auto start = std::chrono::steady_clock::now();
    std::vector<TrialResult> results(trials);
    std::vector<std::uint64_t> seeds(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        seeds[i] = derive_seed(master_seed, i);
    }
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, trials));
    if (workers == 1) {
        for (std::size_t i = 0; i < trials; ++i) {
            results[i] = guarded(fn, seeds[i]);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers) {
                    results[i] = guarded(fn, seeds[i]);
                }
            });
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }

    SweepReport report;
    report.name = name;
    report.trials = trials;
    for (std::size_t i = 0; i < trials; ++i) {
        report.worst_residual = std::max(report.worst_residual, results[i].residual);
        if (!results[i].ok) {
            report.seeds_of_failures.push_back(seeds[i]);
        }
    }
    std::sort(report.seeds_of_failures.begin(), report.seeds_of_failures.end());
    report.failures = report.seeds_of_failures.size();
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

}  // namespace septrans::lab
