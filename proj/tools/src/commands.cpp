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

#include "septrans/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "septrans/cli/io.hpp"
#include "septrans/criteria.hpp"
#include "septrans/errors.hpp"
#include "septrans/lab.hpp"
#include "septrans/ruchannel.hpp"
#include "septrans/sepops.hpp"
#include "septrans/states.hpp"

#ifndef SEPTRANS_VERSION
#define SEPTRANS_VERSION "0.0.0"
#endif

namespace septrans::cli {

namespace {

struct Context {
    std::ostream &out;
    std::ostream &err;
    double tol = kDefaultTol;
    bool json = false;
    std::vector<LoadedFile> inputs;
};

std::string sci(double x) {
    std::ostringstream s;
    s << std::scientific;
    s.precision(3);
    s << x;
    return s.str();
}

std::string yes_no(bool b) {
    return b ? "yes" : "no";
}

std::string join_reals(const std::vector<double> &xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? ", " : "") + format_real(xs[i]);
    }
    return s;
}

std::string join_complex(const CVector &v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + format_complex(v(i));
    }
    return s;
}

void print_matrix(std::ostream &out, const CMatrix &m, const std::string &indent) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << indent << "[";
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            out << (k ? ", " : "") << format_complex(m(i, k));
        }
        out << "]\n";
    }
}

Json header(const Context &ctx, const std::string &command) {
    Json inputs = Json::array();
    for (const LoadedFile &f : ctx.inputs) {
        inputs.push_back(Json{{"path", f.path}, {"fnv1a64", hex64(f.hash)}});
    }
    return Json{{"tool", "septrans"}, {"version", version()}, {"command", command}, {"tol", ctx.tol},
                {"inputs", std::move(inputs)}};
}

void emit(Context &ctx, const Json &report) {
    ctx.out << report.dump(2) << "\n";
}

BipartiteState load_state(Context &ctx, const std::string &path) {
    ctx.inputs.push_back(read_file(path));
    try {
        return state_from_json(parse_json(ctx.inputs.back()));
    } catch (const InputError &e) {
        throw InputError(path + ": " + e.what());
    }
}

SeparableOperation load_operation(Context &ctx, const std::string &path) {
    ctx.inputs.push_back(read_file(path));
    SeparableOperation op = [&] {
        try {
            return operation_from_json(parse_json(ctx.inputs.back()));
        } catch (const InputError &e) {
            throw InputError(path + ": " + e.what());
        }
    }();
    const ClosureReport closure = validate_closure(op, ctx.tol);
    if (!closure.valid) {
        throw InputError(path + ": closure residual " + sci(closure.residual) + " exceeds tolerance " + sci(ctx.tol));
    }
    return op;
}

RandomUnitaryChannel load_channel(Context &ctx, const std::string &path) {
    ctx.inputs.push_back(read_file(path));
    RandomUnitaryChannel ch = [&] {
        try {
            return channel_from_json(parse_json(ctx.inputs.back()));
        } catch (const InputError &e) {
            throw InputError(path + ": " + e.what());
        }
    }();
    const ChannelReport report = validate_channel(ch, ctx.tol);
    if (!report.valid) {
        double worst = 0.0;
        for (double r : report.unitarity_residuals_u) {
            worst = std::max(worst, r);
        }
        for (double r : report.unitarity_residuals_v) {
            worst = std::max(worst, r);
        }
        throw InputError(path + ": invalid channel (probability residual " + sci(report.probability_residual) +
                         ", positive " + yes_no(report.probabilities_positive) + ", worst unitarity residual " +
                         sci(worst) + ", closure residual " + sci(report.closure_residual) + ")");
    }
    return ch;
}

int cmd_schmidt(Context &ctx, const std::string &path) {
    const BipartiteState psi = load_state(ctx, path);
    const SchmidtDecomposition sd = schmidt_decompose(psi, ctx.tol);
    if (ctx.json) {
        Json r = header(ctx, "schmidt");
        r["coefficients"] = sd.coefficients;
        r["rank"] = sd.rank;
        r["basis_a"] = matrix_to_json(sd.basis_a);
        r["basis_b"] = matrix_to_json(sd.basis_b);
        emit(ctx, r);
        return kExitOk;
    }
    const std::vector<double> positive(sd.coefficients.begin(),
                                       sd.coefficients.begin() + static_cast<std::ptrdiff_t>(sd.rank));
    ctx.out << "coefficients: " << join_reals(positive) << "\n";
    ctx.out << "rank: " << sd.rank << "\n";
    return kExitOk;
}

int verdict_exit(VerdictTag tag) {
    switch (tag) {
        case VerdictTag::ImpossibleRank:
        case VerdictTag::ImpossibleProduct:
            return kExitNegative;
        case VerdictTag::OpenRegion:
            return kExitOpen;
        case VerdictTag::EqualSpectra:
        case VerdictTag::LoccPossible:
            break;
    }
    return kExitOk;
}

constexpr const char *kOpenRegionNote = "necessary conditions pass; LOCC impossible; separable-map existence unknown";

int cmd_verdict(Context &ctx, const std::string &psi_path, const std::string &phi_path) {
    const BipartiteState psi = load_state(ctx, psi_path);
    const BipartiteState phi = load_state(ctx, phi_path);
    const SchmidtSpectrum lambda = SchmidtSpectrum::of(psi);
    const SchmidtSpectrum mu = SchmidtSpectrum::of(phi);
    const TransformVerdict v = transform_verdict(lambda, mu, ctx.tol);
    const VerdictDetails &d = v.details;
    if (ctx.json) {
        Json r = header(ctx, "verdict");
        r["verdict"] = std::string(to_string(v.tag));
        r["lambda"] = lambda.values();
        r["mu"] = mu.values();
        r["details"] = Json{{"r_psi", d.r_psi},
                            {"r_phi", d.r_phi},
                            {"product_psi", d.product_psi},
                            {"product_phi", d.product_phi},
                            {"majorization", d.majorization},
                            {"equal_products_unequal_spectra", d.equal_products_unequal_spectra}};
        if (v.tag == VerdictTag::OpenRegion) {
            r["note"] = kOpenRegionNote;
        }
        emit(ctx, r);
        return verdict_exit(v.tag);
    }
    ctx.out << "verdict: " << to_string(v.tag) << "\n";
    ctx.out << "lambda: " << join_reals(lambda.values()) << "\n";
    ctx.out << "mu: " << join_reals(mu.values()) << "\n";
    ctx.out << "schmidt rank: psi " << d.r_psi << ", phi " << d.r_phi << "\n";
    ctx.out << "product: psi " << format_real(d.product_psi) << ", phi " << format_real(d.product_phi) << "\n";
    ctx.out << "majorization: " << yes_no(d.majorization) << "\n";
    if (d.equal_products_unequal_spectra) {
        ctx.out << "equal products with unequal spectra\n";
    }
    if (v.tag == VerdictTag::OpenRegion) {
        ctx.out << kOpenRegionNote << "\n";
    }
    return verdict_exit(v.tag);
}

Json proportionality_json(const ProportionalityCertificate &cert) {
    Json pairs = Json::array();
    for (const PairProportionality &p : cert.per_pair) {
        pairs.push_back(Json{{"proportional_a", p.unitary_proportional_a},
                             {"scale_a", p.scale_a},
                             {"proportional_b", p.unitary_proportional_b},
                             {"scale_b", p.scale_b}});
    }
    Json factors = nullptr;
    if (cert.pairwise_factors) {
        factors = Json::array();
        const Eigen::MatrixXd &f = *cert.pairwise_factors;
        for (Eigen::Index m = 0; m < f.rows(); ++m) {
            Json row = Json::array();
            for (Eigen::Index k = 0; k < f.cols(); ++k) {
                row.push_back(f(m, k));
            }
            factors.push_back(std::move(row));
        }
    }
    return Json{{"all_proportional", cert.all_proportional()}, {"per_pair", std::move(pairs)},
                {"pairwise_factors", std::move(factors)}};
}

void print_proportionality(std::ostream &out, const ProportionalityCertificate &cert) {
    out << "unitary proportionality: " << (cert.all_proportional() ? "all pairs" : "not all pairs") << "\n";
    for (std::size_t m = 0; m < cert.per_pair.size(); ++m) {
        const PairProportionality &p = cert.per_pair[m];
        out << "  pair " << m + 1 << ": A " << yes_no(p.unitary_proportional_a) << " (scale "
            << format_real(p.scale_a) << "), B " << yes_no(p.unitary_proportional_b) << " (scale "
            << format_real(p.scale_b) << ")\n";
    }
    if (cert.pairwise_factors) {
        out << "  pairwise factors:\n";
        const Eigen::MatrixXd &f = *cert.pairwise_factors;
        for (Eigen::Index m = 0; m < f.rows(); ++m) {
            out << "    [";
            for (Eigen::Index k = 0; k < f.cols(); ++k) {
                out << (k ? ", " : "") << format_real(f(m, k));
            }
            out << "]\n";
        }
    }
}

int cmd_verify_op(Context &ctx, const std::string &op_path, const std::string &psi_path, bool unitarity) {
    const SeparableOperation op = load_operation(ctx, op_path);
    const BipartiteState psi = load_state(ctx, psi_path);
    if (psi.dim_a() != op.dim_a() || psi.dim_b() != op.dim_b()) {
        throw InputError("state dimensions do not match the operation");
    }
    const DeterminismResult result = check_deterministic(op, psi, ctx.tol);
    const auto *cert = std::get_if<DeterministicCertificate>(&result);
    std::optional<ProportionalityCertificate> prop;
    if (unitarity) {
        prop = unitary_proportionality(op, psi, ctx.tol);
    }
    if (ctx.json) {
        Json r = header(ctx, "verify-op");
        r["deterministic"] = cert != nullptr;
        if (cert != nullptr) {
            r["phi"] = state_to_json(cert->phi);
            r["probabilities"] = cert->probabilities;
            r["branch_phases"] = cert->branch_phases;
        } else {
            const auto &nd = std::get<NotDeterministic>(result);
            r["witness_branch"] = nd.witness + 1;
            r["residual"] = nd.residual;
        }
        if (prop) {
            r["unitarity"] = proportionality_json(*prop);
        }
        emit(ctx, r);
    } else {
        if (cert != nullptr) {
            ctx.out << "deterministic\n";
            ctx.out << "phi: " << join_complex(cert->phi.amplitudes()) << "\n";
            ctx.out << "p: [" << join_reals(cert->probabilities) << "]\n";
        } else {
            const auto &nd = std::get<NotDeterministic>(result);
            ctx.out << "not deterministic: branch m=" << nd.witness + 1 << " differs (residual " << sci(nd.residual)
                    << ")\n";
        }
        if (prop) {
            print_proportionality(ctx.out, *prop);
        }
    }
    return cert != nullptr ? kExitOk : kExitNegative;
}

std::string phase_label(Complex z) {
    return format_complex(z);
}

int cmd_fixed_states(Context &ctx, const std::string &path) {
    const RandomUnitaryChannel ch = load_channel(ctx, path);
    const FixedFamily fam = fixed_states(ch, ctx.tol);
    if (ctx.json) {
        Json r = header(ctx, "channel fixed-states");
        r["d"] = fam.d;
        r["unconstrained"] = fam.unconstrained();
        Json spaces = Json::array();
        for (const FixedEigenspace &e : fam.eigenspaces) {
            Json phases = Json::array();
            for (Complex z : e.phases) {
                phases.push_back(complex_to_json(z));
            }
            Json basis = Json::array();
            for (const CMatrix &c : e.basis) {
                basis.push_back(matrix_to_json(c));
            }
            spaces.push_back(Json{{"phases", std::move(phases)},
                                  {"dimension", e.basis.size()},
                                  {"generic_rank", e.generic_rank},
                                  {"full_rank_member", e.has_full_rank_member()},
                                  {"basis", std::move(basis)}});
        }
        r["eigenspaces"] = std::move(spaces);
        r["compatibility"] = fam.compatibility;
        emit(ctx, r);
        return kExitOk;
    }
    if (fam.unconstrained()) {
        ctx.out << "unconstrained (dimension " << fam.d * fam.d << ")\n";
        return kExitOk;
    }
    ctx.out << "eigenspaces: " << fam.eigenspaces.size() << "\n";
    for (std::size_t s = 0; s < fam.eigenspaces.size(); ++s) {
        const FixedEigenspace &e = fam.eigenspaces[s];
        ctx.out << "eigenspace " << s + 1 << ": phases [";
        for (std::size_t m = 0; m < e.phases.size(); ++m) {
            ctx.out << (m ? ", " : "") << phase_label(e.phases[m]);
        }
        ctx.out << "], dimension " << e.basis.size() << ", generic rank " << e.generic_rank
                << ", full-rank member " << yes_no(e.has_full_rank_member()) << "\n";
        for (std::size_t k = 0; k < e.basis.size(); ++k) {
            ctx.out << "  basis " << k + 1 << ":\n";
            print_matrix(ctx.out, e.basis[k], "    ");
        }
    }
    ctx.out << "compatible pairs:";
    bool any = false;
    for (std::size_t s = 0; s < fam.compatibility.size(); ++s) {
        for (std::size_t t = s + 1; t < fam.compatibility[s].size(); ++t) {
            if (fam.compatibility[s][t]) {
                ctx.out << " (" << s + 1 << "," << t + 1 << ")";
                any = true;
            }
        }
    }
    ctx.out << (any ? "" : " none") << "\n";
    return kExitOk;
}

Json condition_table_json(const std::vector<ConditionEntry> &table) {
    Json rows = Json::array();
    for (const ConditionEntry &e : table) {
        rows.push_back(Json{{"m", e.m},
                            {"n", e.n},
                            {"j", e.j},
                            {"k", e.k},
                            {"matched", e.match.matched},
                            {"theta", e.match.theta ? Json(*e.match.theta) : Json(nullptr)},
                            {"residual", e.match.residual}});
    }
    return rows;
}

std::size_t count_failures(const std::vector<ConditionEntry> &table) {
    std::size_t n = 0;
    for (const ConditionEntry &e : table) {
        n += e.match.matched ? 0 : 1;
    }
    return n;
}

int cmd_check_collection(Context &ctx, const std::string &path, const std::vector<std::string> &state_paths) {
    const RandomUnitaryChannel ch = load_channel(ctx, path);
    std::vector<BipartiteState> states;
    for (const std::string &p : state_paths) {
        states.push_back(load_state(ctx, p));
    }
    const CollectionReport rep = check_collection(ch, states, ctx.tol);
    if (ctx.json) {
        Json r = header(ctx, "channel check-collection");
        r["pair_condition_a"] = rep.pair_condition_a;
        r["pair_condition_b"] = rep.pair_condition_b;
        r["pair_condition_a_m1"] = rep.pair_condition_a_m1;
        r["pair_condition_b_m1"] = rep.pair_condition_b_m1;
        r["all_deterministic"] = rep.all_deterministic();
        Json per = Json::array();
        for (const StateOutcome &s : rep.per_state) {
            per.push_back(Json{{"deterministic", s.deterministic},
                               {"phi", s.phi ? state_to_json(*s.phi) : Json(nullptr)}});
        }
        r["per_state"] = std::move(per);
        r["phase_table_a"] = condition_table_json(rep.phase_table_a);
        r["phase_table_b"] = condition_table_json(rep.phase_table_b);
        emit(ctx, r);
    } else {
        ctx.out << "U-side condition: " << (rep.pair_condition_a ? "holds" : "fails") << " ("
                << count_failures(rep.phase_table_a) << " of " << rep.phase_table_a.size()
                << " entries fail; m=1 reduction " << (rep.pair_condition_a_m1 ? "holds" : "fails") << ")\n";
        ctx.out << "V-side condition: " << (rep.pair_condition_b ? "holds" : "fails") << " ("
                << count_failures(rep.phase_table_b) << " of " << rep.phase_table_b.size()
                << " entries fail; m=1 reduction " << (rep.pair_condition_b_m1 ? "holds" : "fails") << ")\n";
        for (std::size_t i = 0; i < rep.per_state.size(); ++i) {
            ctx.out << "state " << i + 1 << " (" << state_paths[i]
                    << "): " << (rep.per_state[i].deterministic ? "deterministic" : "not deterministic") << "\n";
        }
        ctx.out << (rep.all_deterministic() ? "all deterministic" : "not all deterministic") << "\n";
    }
    return rep.all_deterministic() ? kExitOk : kExitNegative;
}

int cmd_example(Context &ctx, double p) {
    const ExampleReport rep = cross_check_example(p, ctx.tol);
    if (ctx.json) {
        Json r = header(ctx, "channel example");
        r["p"] = rep.p;
        r["fixed_point_fidelity"] = rep.fixed_point_fidelity;
        r["fixed_point"] = rep.fixed_point;
        r["dual_matches"] = rep.dual_matches;
        r["samples_per_family"] = rep.samples_per_family;
        r["deterministic_plus"] = rep.deterministic_plus;
        r["deterministic_minus"] = rep.deterministic_minus;
        r["families_recovered"] = rep.families_recovered;
        r["subspace_distance"] = rep.subspace_distance;
        r["pass"] = rep.all_pass();
        emit(ctx, r);
    } else {
        ctx.out << "p: " << format_real(rep.p) << "\n";
        ctx.out << "fixed point fidelity: " << format_real(rep.fixed_point_fidelity) << " ("
                << (rep.fixed_point ? "fixed" : "not fixed") << ")\n";
        ctx.out << "dual matrix matches: " << yes_no(rep.dual_matches) << "\n";
        ctx.out << "deterministic samples: +" << rep.deterministic_plus << "/" << rep.samples_per_family << ", -"
                << rep.deterministic_minus << "/" << rep.samples_per_family << "\n";
        ctx.out << "families recovered: " << yes_no(rep.families_recovered) << " (subspace distance "
                << sci(rep.subspace_distance) << ")\n";
        ctx.out << (rep.all_pass() ? "pass" : "fail") << "\n";
    }
    return rep.all_pass() ? kExitOk : kExitNegative;
}

int cmd_sweep(Context &ctx, const std::string &name, std::size_t trials, std::uint64_t seed, std::size_t threads) {
    const auto &names = lab::sweep_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::string known;
        for (const std::string &n : names) {
            known += (known.empty() ? "" : ", ") + n;
        }
        throw InputError("unknown sweep '" + name + "' (known: " + known + ")");
    }
    const lab::SweepReport rep = lab::run_sweep(name, trials, seed, threads);
    if (ctx.json) {
        Json r = header(ctx, "sweep");
        r["name"] = rep.name;
        r["trials"] = rep.trials;
        r["seed"] = seed;
        r["threads"] = threads;
        r["failures"] = rep.failures;
        r["seeds_of_failures"] = rep.seeds_of_failures;
        r["worst_residual"] = rep.worst_residual;
        r["elapsed_seconds"] = rep.elapsed.count();
        emit(ctx, r);
    } else {
        ctx.out << "sweep: " << rep.name << "\n";
        ctx.out << "trials: " << rep.trials << "\n";
        ctx.out << "failures: " << rep.failures << "\n";
        ctx.out << "worst residual: " << sci(rep.worst_residual) << "\n";
        ctx.out << "elapsed: " << sci(rep.elapsed.count()) << " s\n";
        if (!rep.seeds_of_failures.empty()) {
            ctx.out << "failing seeds:";
            for (std::uint64_t s : rep.seeds_of_failures) {
                ctx.out << " " << s;
            }
            ctx.out << "\n";
        }
    }
    return rep.failures == 0 ? kExitOk : kExitNegative;
}

}  // namespace

const char *version() {
    return SEPTRANS_VERSION;
}

double resolve_tol(const std::optional<double> &flag) {
    double tol = kDefaultTol;
    if (flag) {
        tol = *flag;
    } else if (const char *env = std::getenv(kTolEnv); env != nullptr && *env != '\0') {
        char *end = nullptr;
        tol = std::strtod(env, &end);
        if (end == env || *end != '\0') {
            throw InputError(std::string(kTolEnv) + " is not a number: " + env);
        }
    }
    if (!std::isfinite(tol) || tol <= 0.0) {
        throw InputError("tolerance must be positive and finite");
    }
    return tol;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Separable transformations of bipartite pure states", "septrans"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    std::optional<double> tol_flag;
    bool json = false;
    const auto common = [&](CLI::App *cmd) {
        cmd->add_option("--tol", tol_flag, "Numerical tolerance (default 1e-9 or $SEPTRANS_DEFAULT_TOL)");
        cmd->add_flag("--json", json, "Emit a JSON report on stdout");
    };

    std::function<int(Context &)> action;

    std::string state_path;
    CLI::App *schmidt = app.add_subcommand("schmidt", "Schmidt coefficients and rank of a state file");
    schmidt->add_option("state", state_path, "State file")->required();
    common(schmidt);
    schmidt->callback([&] { action = [&](Context &ctx) { return cmd_schmidt(ctx, state_path); }; });

    std::string psi_path;
    std::string phi_path;
    CLI::App *verdict = app.add_subcommand("verdict", "Necessary-condition verdict for psi -> phi");
    verdict->add_option("psi", psi_path, "Source state file")->required();
    verdict->add_option("phi", phi_path, "Target state file")->required();
    common(verdict);
    verdict->callback([&] { action = [&](Context &ctx) { return cmd_verdict(ctx, psi_path, phi_path); }; });

    std::string op_path;
    bool unitarity = false;
    CLI::App *verify = app.add_subcommand("verify-op", "Check whether an operation maps a state deterministically");
    verify->add_option("operation", op_path, "Operation file")->required();
    verify->add_option("state", psi_path, "State file")->required();
    verify->add_flag("--unitarity", unitarity, "Also report unitary proportionality on the supports");
    common(verify);
    verify->callback([&] { action = [&](Context &ctx) { return cmd_verify_op(ctx, op_path, psi_path, unitarity); }; });

    CLI::App *channel = app.add_subcommand("channel", "Separable random unitary channels");
    channel->require_subcommand(1);
    std::string channel_path;
    CLI::App *fixed = channel->add_subcommand("fixed-states", "States fixed up to phase by every channel term");
    fixed->add_option("channel", channel_path, "Channel file")->required();
    common(fixed);
    fixed->callback([&] { action = [&](Context &ctx) { return cmd_fixed_states(ctx, channel_path); }; });

    std::vector<std::string> collection_paths;
    CLI::App *collection = channel->add_subcommand("check-collection", "Pair conditions for a collection of states");
    collection->add_option("channel", channel_path, "Channel file")->required();
    collection->add_option("states", collection_paths, "State files")->required();
    common(collection);
    collection->callback(
        [&] { action = [&](Context &ctx) { return cmd_check_collection(ctx, channel_path, collection_paths); }; });

    double p = 0.0;
    CLI::App *example = channel->add_subcommand("example", "Cross-check the two-qubit X (x) Z example");
    example->add_option("p", p, "Mixing parameter in (0, 1)")->required();
    common(example);
    example->callback([&] { action = [&](Context &ctx) { return cmd_example(ctx, p); }; });

    std::string sweep_name;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    CLI::App *sweep = app.add_subcommand("sweep", "Seeded property sweep");
    sweep->add_option("name", sweep_name, "Sweep name")->required();
    sweep->add_option("--trials", trials, "Number of trials")->capture_default_str();
    sweep->add_option("--seed", seed, "Master seed")->capture_default_str();
    sweep->add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    common(sweep);
    sweep->callback(
        [&] { action = [&](Context &ctx) { return cmd_sweep(ctx, sweep_name, trials, seed, threads); }; });

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("septrans");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const std::string &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    Context ctx{out, err, kDefaultTol, false, {}};
    ctx.json = json;
    try {
        ctx.tol = resolve_tol(tol_flag);
        return action(ctx);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InconsistencyError &e) {
        err << "inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const Json::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

}  // namespace septrans::cli
