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

#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include <gtest/gtest.h>

#include "septrans/errors.hpp"
#include "septrans/lab.hpp"
#include "septrans/ruchannel.hpp"
#include "support/oracles.hpp"

namespace septrans {
namespace {

using testing::mat;
using testing::span_distance;

std::vector<CMatrix> plus_family() {
    return {mat(2, 2, {1, 0, 1, 0}), mat(2, 2, {0, 1, 0, -1})};
}

std::vector<CMatrix> minus_family() {
    return {mat(2, 2, {1, 0, -1, 0}), mat(2, 2, {0, 1, 0, 1})};
}

Complex random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

bool output_is_pure(const RandomUnitaryChannel &ch, const BipartiteState &psi) {
    return testing::purity(testing::output_density(ch.to_operation(), psi)) >= 1.0 - 1e-9;
}

TEST(ValidateChannel, SingleIdentityTerm) {
    const RandomUnitaryChannel ch(2, {UnitaryTerm{1.0, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}});
    EXPECT_TRUE(validate_channel(ch).valid);
}

TEST(ValidateChannel, MixingChannel) {
    const ChannelReport r = validate_channel(xz_channel(0.3));
    EXPECT_TRUE(r.valid);
    EXPECT_LT(r.closure_residual, 1e-12);
}

TEST(ValidateChannel, ScaledUnitaryIsRejected) {
    const RandomUnitaryChannel ch(2, {UnitaryTerm{0.5, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                      UnitaryTerm{0.5, 1.1 * CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}});
    const ChannelReport r = validate_channel(ch);
    EXPECT_FALSE(r.valid);
    // || (1.1 I)^dagger (1.1 I) - I ||_F = 0.21 * sqrt(2)
    EXPECT_NEAR(r.unitarity_residuals_u[1], 0.21 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(r.unitarity_residuals_u[0], 0.0, 1e-15);
}

TEST(ValidateChannel, ProbabilityChecks) {
    const RandomUnitaryChannel bad_sum(2, {UnitaryTerm{0.6, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}});
    EXPECT_FALSE(validate_channel(bad_sum).valid);
    EXPECT_NEAR(validate_channel(bad_sum).probability_residual, 0.4, 1e-15);
    const RandomUnitaryChannel negative(2, {UnitaryTerm{1.5, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                            UnitaryTerm{-0.5, pauli_x(), pauli_z()}});
    EXPECT_FALSE(validate_channel(negative).probabilities_positive);
    EXPECT_FALSE(validate_channel(negative).valid);
}

TEST(ValidateChannel, RandomChannelsAreValid) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_TRUE(validate_channel(lab::random_unitary_channel(2 + seed % 3, 1 + seed % 4, seed)).valid);
    }
}

TEST(CheckCollection, SingleTermHoldsVacuously) {
    const RandomUnitaryChannel ch(3, {UnitaryTerm{1.0, haar_unitary(3, 1), haar_unitary(3, 2)}});
    const CollectionReport r = check_collection(ch, {random_state(3, 3, 1), random_state(3, 3, 2)});
    EXPECT_TRUE(r.pair_condition_a);
    EXPECT_TRUE(r.pair_condition_b);
    EXPECT_TRUE(r.all_deterministic());
}

TEST(CheckCollection, FamilyStatesHold) {
    std::mt19937_64 rng(5);
    std::vector<BipartiteState> states{testing::psi1()};
    for (int k = 0; k < 3; ++k) {
        states.push_back(testing::family_member(random_complex(rng), random_complex(rng), 1.0));
    }
    const CollectionReport r = check_collection(xz_channel(0.3), states);
    EXPECT_TRUE(r.pair_condition_a);
    EXPECT_TRUE(r.pair_condition_b);
    EXPECT_TRUE(r.pair_condition_a_m1);
    EXPECT_TRUE(r.pair_condition_b_m1);
    EXPECT_TRUE(r.all_deterministic());
    EXPECT_EQ(r.phase_table_a.size(), 2u * 2u * states.size() * states.size());
}

TEST(CheckCollection, MinusFamilyHolds) {
    std::mt19937_64 rng(6);
    std::vector<BipartiteState> states;
    for (int k = 0; k < 3; ++k) {
        states.push_back(testing::family_member(random_complex(rng), random_complex(rng), -1.0));
    }
    const CollectionReport r = check_collection(xz_channel(0.6), states);
    EXPECT_TRUE(r.pair_condition_a && r.pair_condition_b && r.all_deterministic());
}

TEST(CheckCollection, OutsiderBreaksConditions) {
    const BipartiteState outsider = random_state(2, 2, 99);
    ASSERT_FALSE(output_is_pure(xz_channel(0.3), outsider));
    const CollectionReport r = check_collection(xz_channel(0.3), {testing::psi1(), outsider});
    EXPECT_FALSE(r.pair_condition_a && r.pair_condition_b);
    EXPECT_FALSE(r.all_deterministic());
    EXPECT_TRUE(r.per_state[0].deterministic);
    EXPECT_FALSE(r.per_state[1].deterministic);
}

TEST(CheckCollection, MixedSignFamiliesAreJointlyDeterministic) {
    // Members of different eigenspaces pick up opposite phases; the cross
    // conditions still hold up to that phase.
    const CollectionReport r =
        check_collection(xz_channel(0.3), {testing::family_member(0.6, 0.8, 1.0), testing::family_member(0.6, 0.8, -1.0)});
    EXPECT_TRUE(r.all_deterministic());
    EXPECT_TRUE(r.pair_condition_a);
    EXPECT_TRUE(r.pair_condition_b);
}

TEST(CheckCollection, RejectsRankDeficientStates) {
    EXPECT_THROW(check_collection(xz_channel(0.3), {BipartiteState::basis(2, 2, 0, 0)}), InputError);
    EXPECT_THROW(check_collection(xz_channel(0.3), {random_state(3, 3, 1)}), InputError);
}

TEST(CheckCollection, ConjugationIndependenceProperty) {
    // For collections passing the check, U_m psi_j psi_k^dagger U_m^dagger agrees across m up to phase.
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const double s = trial % 2 == 0 ? 1.0 : -1.0;
        std::vector<BipartiteState> states;
        for (int k = 0; k < 3; ++k) {
            states.push_back(testing::family_member(random_complex(rng), random_complex(rng), s));
        }
        const RandomUnitaryChannel ch = xz_channel(0.2 + 0.05 * trial);
        const CollectionReport r = check_collection(ch, states);
        ASSERT_TRUE(r.all_deterministic());
        for (const BipartiteState &pj : states) {
            for (const BipartiteState &pk : states) {
                const CMatrix g = to_dual(pj) * to_dual(pk).adjoint();
                const CMatrix ref = ch.terms()[0].u * g * ch.terms()[0].u.adjoint();
                for (const UnitaryTerm &t : ch.terms()) {
                    EXPECT_TRUE(phase_align(t.u * g * t.u.adjoint(), ref, 1e-9).matched);
                }
            }
        }
    }
}

TEST(CheckCollection, ReductionAndSideEquivalenceProperty) {
    // Random channels with random full-rank states: whenever every state is
    // deterministic both conditions hold; the m = 0 flags match the full grid.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t d = 2 + seed % 2;
        const RandomUnitaryChannel ch = lab::random_unitary_channel(d, 2 + seed % 2, seed);
        const std::vector<BipartiteState> states{random_state(d, d, seed + 1), random_state(d, d, seed + 2)};
        const CollectionReport r = check_collection(ch, states);
        EXPECT_EQ(r.pair_condition_a, r.pair_condition_a_m1);
        EXPECT_EQ(r.pair_condition_b, r.pair_condition_b_m1);
        for (std::size_t i = 0; i < states.size(); ++i) {
            EXPECT_EQ(r.per_state[i].deterministic, output_is_pure(ch, states[i]));
        }
        if (r.all_deterministic()) {
            EXPECT_TRUE(r.pair_condition_a);
            EXPECT_TRUE(r.pair_condition_b);
        }
    }
}

TEST(CheckCollection, ComplexUnitarySideConditions) {
    // Channel whose V is complex: a local-unitary conjugate of the mixing
    // channel. Conjugated family states stay deterministic; both sides must
    // still report the conditions as holding.
    const CMatrix u0 = haar_unitary(2, 31);
    const CMatrix v0 = haar_unitary(2, 32);
    const RandomUnitaryChannel base = xz_channel(0.35);
    std::vector<UnitaryTerm> terms;
    for (const UnitaryTerm &t : base.terms()) {
        terms.push_back({t.p, u0 * t.u * u0.adjoint(), v0 * t.v * v0.adjoint()});
    }
    const RandomUnitaryChannel ch(2, terms);
    std::mt19937_64 rng(3);
    std::vector<BipartiteState> states;
    for (int k = 0; k < 3; ++k) {
        const BipartiteState m = testing::family_member(random_complex(rng), random_complex(rng), 1.0);
        states.push_back(BipartiteState::normalized(2, 2, apply_product(u0, v0, m)));
    }
    const CollectionReport r = check_collection(ch, states);
    EXPECT_TRUE(r.all_deterministic());
    EXPECT_TRUE(r.pair_condition_a);
    EXPECT_TRUE(r.pair_condition_b);
}

TEST(FixedStates, MixingChannelFamilies) {
    const FixedFamily f = fixed_states(xz_channel(0.3));
    ASSERT_EQ(f.eigenspaces.size(), 2u);
    const FixedEigenspace &plus = f.eigenspaces[0];
    const FixedEigenspace &minus = f.eigenspaces[1];
    EXPECT_NEAR(std::abs(plus.phases[1] - Complex(1.0, 0.0)), 0.0, 1e-9);
    EXPECT_NEAR(std::abs(minus.phases[1] - Complex(-1.0, 0.0)), 0.0, 1e-9);
    ASSERT_EQ(plus.basis.size(), 2u);
    ASSERT_EQ(minus.basis.size(), 2u);
    EXPECT_LT(span_distance(plus.basis, plus_family()), 1e-9);
    EXPECT_LT(span_distance(minus.basis, minus_family()), 1e-9);
    // Echelon form reproduces the hand-written basis exactly.
    for (std::size_t k = 0; k < 2; ++k) {
        EXPECT_LT((plus.basis[k] - plus_family()[k]).norm(), 1e-12);
        EXPECT_LT((minus.basis[k] - minus_family()[k]).norm(), 1e-12);
    }
    EXPECT_TRUE(plus.has_full_rank_member());
    EXPECT_TRUE(minus.has_full_rank_member());
    for (const auto &row : f.compatibility) {
        for (bool ok : row) {
            EXPECT_TRUE(ok);
        }
    }
}

TEST(FixedStates, SingleTermIsUnconstrained) {
    const RandomUnitaryChannel ch(2, {UnitaryTerm{1.0, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}});
    const FixedFamily f = fixed_states(ch);
    EXPECT_TRUE(f.unconstrained());
    ASSERT_EQ(f.eigenspaces.size(), 1u);
    EXPECT_EQ(f.eigenspaces[0].basis.size(), 4u);
}

TEST(FixedStates, NoFullRankMember) {
    const RandomUnitaryChannel ch(2, {UnitaryTerm{0.5, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                      UnitaryTerm{0.5, CMatrix::Identity(2, 2), pauli_z()}});
    const FixedFamily f = fixed_states(ch);
    ASSERT_EQ(f.eigenspaces.size(), 2u);
    // C Z = C keeps the first column; C Z = -C keeps the second.
    EXPECT_LT(span_distance(f.eigenspaces[0].basis, {mat(2, 2, {1, 0, 0, 0}), mat(2, 2, {0, 0, 1, 0})}), 1e-9);
    EXPECT_LT(span_distance(f.eigenspaces[1].basis, {mat(2, 2, {0, 1, 0, 0}), mat(2, 2, {0, 0, 0, 1})}), 1e-9);
    for (const FixedEigenspace &e : f.eigenspaces) {
        EXPECT_FALSE(e.has_full_rank_member());
        EXPECT_EQ(e.generic_rank, 1u);
    }
}

TEST(FixedStates, BasisIsEigenvectorOfEveryGenerator) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RandomUnitaryChannel ch = lab::random_unitary_channel(2 + seed % 2, 2 + seed % 3, seed);
        const FixedFamily f = fixed_states(ch);
        for (const FixedEigenspace &e : f.eigenspaces) {
            for (const CMatrix &c : e.basis) {
                for (std::size_t m = 0; m < ch.size(); ++m) {
                    const CMatrix w = ch.terms()[0].u.adjoint() * ch.terms()[m].u;
                    const CMatrix ybar = ch.terms()[m].v.transpose() * ch.terms()[0].v.transpose().adjoint();
                    EXPECT_LT((w * c * ybar - e.phases[m] * c).norm(), 1e-9 * c.norm());
                }
            }
        }
    }
}

TEST(FixedStates, SoundnessProperty) {
    // Full-rank members of a single eigenspace are mapped deterministically.
    std::mt19937_64 rng(17);
    std::size_t checked = 0;
    const std::vector<RandomUnitaryChannel> channels{
        xz_channel(0.3), xz_channel(0.8),
        RandomUnitaryChannel(2, {UnitaryTerm{0.3, CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)},
                                 UnitaryTerm{0.3, pauli_x(), pauli_x()}, UnitaryTerm{0.4, pauli_z(), pauli_z()}}),
        RandomUnitaryChannel(3, {UnitaryTerm{0.5, CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)},
                                 UnitaryTerm{0.5, haar_unitary(3, 4), haar_unitary(3, 4).transpose()}})};
    for (const RandomUnitaryChannel &ch : channels) {
        const FixedFamily f = fixed_states(ch);
        for (const FixedEigenspace &e : f.eigenspaces) {
            if (!e.has_full_rank_member()) {
                continue;
            }
            for (int k = 0; k < 10; ++k) {
                CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(f.d), static_cast<Eigen::Index>(f.d));
                for (const CMatrix &b : e.basis) {
                    c += random_complex(rng) * b;
                }
                const BipartiteState psi = from_dual(c / c.norm());
                const DeterminismResult r = check_deterministic(ch.to_operation(), psi);
                EXPECT_TRUE(std::holds_alternative<DeterministicCertificate>(r));
                EXPECT_TRUE(output_is_pure(ch, psi));
                ++checked;
            }
        }
    }
    EXPECT_GE(checked, 40u);
}

TEST(FixedStates, CompletenessSweepAtQubitDimension) {
    // Random full-rank states: whenever the output is pure the state lies in
    // one returned eigenspace.
    const std::vector<RandomUnitaryChannel> channels{xz_channel(0.3), lab::random_unitary_channel(2, 2, 5)};
    for (const RandomUnitaryChannel &ch : channels) {
        const FixedFamily f = fixed_states(ch);
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const BipartiteState psi = random_state(2, 2, seed);
            if (!output_is_pure(ch, psi)) {
                continue;
            }
            bool inside = false;
            for (const FixedEigenspace &e : f.eigenspaces) {
                std::vector<CMatrix> span = e.basis;
                span.push_back(to_dual(psi));
                inside = inside || span_distance(e.basis, span) < 1e-6;
            }
            EXPECT_TRUE(inside) << "seed " << seed;
        }
    }
}

TEST(FixedStates, FamilyMembersArePureAndOthersAreNot) {
    std::mt19937_64 rng(21);
    std::size_t pure_outside = 0;
    for (int k = 0; k < 50; ++k) {
        const double s = k % 2 == 0 ? 1.0 : -1.0;
        EXPECT_TRUE(output_is_pure(xz_channel(0.3), testing::family_member(random_complex(rng), random_complex(rng), s)));
        pure_outside += output_is_pure(xz_channel(0.3), random_state(2, 2, 1000 + k)) ? 1 : 0;
    }
    EXPECT_EQ(pure_outside, 0u);
}

TEST(CrossCheckExample, PassesAcrossMixing) {
    for (double p : {0.3, 0.5, 1.0 - 1e-6}) {
        const ExampleReport r = cross_check_example(p);
        EXPECT_TRUE(r.all_pass()) << "p " << p;
        EXPECT_EQ(r.samples_per_family, 32u);
        EXPECT_GE(r.fixed_point_fidelity, 1.0 - 1e-10);
    }
}

TEST(CrossCheckExample, RejectsOutOfRange) {
    EXPECT_THROW(cross_check_example(0.0), InputError);
    EXPECT_THROW(cross_check_example(1.0), InputError);
}

TEST(Fixtures, FixedPointAndFamily) {
    EXPECT_TRUE(xz_fixed_point() == testing::psi1());
    const BipartiteState m = xz_family_state(0.6, Complex(0.0, 0.8), false);
    EXPECT_TRUE(m == testing::family_member(0.6, Complex(0.0, 0.8), -1.0));
}

TEST(SubspaceDistance, MatchesOracle) {
    EXPECT_LT(subspace_distance(plus_family(), plus_family()), 1e-12);
    EXPECT_NEAR(subspace_distance(plus_family(), minus_family()), span_distance(plus_family(), minus_family()), 1e-12);
    EXPECT_NEAR(subspace_distance(plus_family(), minus_family()), 1.0, 1e-12);
}

}  // namespace
}  // namespace septrans
