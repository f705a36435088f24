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

#include <gtest/gtest.h>

#include "septrans/errors.hpp"
#include "septrans/numerics.hpp"
#include "septrans/states.hpp"
#include "support/oracles.hpp"

namespace septrans {
namespace {

using testing::gaussian;
using testing::mat;
using testing::vec;

TEST(BipartiteState, RejectsUnnormalized) {
    EXPECT_THROW(BipartiteState(2, 2, vec({1, 1, 0, 0})), InputError);
    EXPECT_THROW(BipartiteState(2, 2, vec({1, 0, 0})), InputError);
    EXPECT_NO_THROW(BipartiteState(2, 2, vec({1, 0, 0, 0})));
}

TEST(BipartiteState, NormalizedRejectsZero) {
    EXPECT_THROW(BipartiteState::normalized(2, 2, CVector::Zero(4)), InputError);
}

TEST(BipartiteState, AmplitudeLayout) {
    const BipartiteState s = BipartiteState::basis(2, 3, 1, 2);
    EXPECT_EQ(s.amplitudes()(1 * 3 + 2), Complex(1.0, 0.0));
    EXPECT_EQ(s.amplitude(1, 2), Complex(1.0, 0.0));
}

TEST(Schmidt, ProductState) {
    const SchmidtDecomposition sd = schmidt_decompose(BipartiteState::basis(2, 2, 0, 0));
    ASSERT_EQ(sd.coefficients.size(), 2u);
    EXPECT_NEAR(sd.coefficients[0], 1.0, 1e-15);
    EXPECT_NEAR(sd.coefficients[1], 0.0, 1e-15);
    EXPECT_EQ(sd.rank, 1u);
}

TEST(Schmidt, FixedPointState) {
    const SchmidtDecomposition sd = schmidt_decompose(testing::psi1());
    EXPECT_NEAR(sd.coefficients[0], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(sd.coefficients[1], 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(sd.rank, 2u);
}

TEST(Schmidt, RandomReconstruction) {
    const BipartiteState psi = random_state(3, 3, 17);
    const SchmidtDecomposition sd = schmidt_decompose(psi);
    EXPECT_LT((testing::rebuild_schmidt(sd) - psi.amplitudes()).norm(), 1e-10);
}

TEST(Schmidt, InvariantsProperty) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t da = 1 + seed % 4;
        const std::size_t db = 1 + (seed / 4) % 4;
        const BipartiteState psi = random_state(da, db, seed);
        const SchmidtDecomposition sd = schmidt_decompose(psi);
        EXPECT_EQ(sd.coefficients.size(), std::min(da, db));
        double sum = 0.0;
        for (double c : sd.coefficients) {
            sum += c * c;
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
        EXPECT_TRUE(std::is_sorted(sd.coefficients.rbegin(), sd.coefficients.rend()));
        EXPECT_LT((testing::rebuild_schmidt(sd) - psi.amplitudes()).norm(), 1e-10);
        const auto k = static_cast<Eigen::Index>(sd.coefficients.size());
        EXPECT_LT((sd.basis_a.adjoint() * sd.basis_a - CMatrix::Identity(k, k)).norm(), 1e-10);
        EXPECT_LT((sd.basis_b.adjoint() * sd.basis_b - CMatrix::Identity(k, k)).norm(), 1e-10);
    }
}

TEST(Schmidt, LocalUnitaryInvariance) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t da = 2 + seed % 3;
        const std::size_t db = 2 + (seed / 3) % 3;
        const BipartiteState psi = random_state(da, db, seed);
        const CMatrix u = haar_unitary(da, 1000 + seed);
        const CMatrix v = haar_unitary(db, 2000 + seed);
        const BipartiteState moved(da, db, testing::entrywise_kron(u, v) * psi.amplitudes());
        const auto before = schmidt_decompose(psi).coefficients;
        const auto after = schmidt_decompose(moved).coefficients;
        for (std::size_t j = 0; j < before.size(); ++j) {
            EXPECT_NEAR(before[j], after[j], 1e-10);
        }
    }
}

TEST(Schmidt, RankMatchesDualRank) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        // Rank-deficient states from low-rank dual matrices.
        const std::size_t r = 1 + seed % 3;
        const CMatrix chi = gaussian(4, r, seed) * gaussian(r, 3, seed + 77);
        const BipartiteState psi = from_dual(chi / chi.norm());
        EXPECT_EQ(schmidt_decompose(psi).rank, r);
        EXPECT_EQ(matrix_rank(to_dual(psi)), r);
    }
}

TEST(Dual, BasisKet) {
    const CMatrix d = to_dual(BipartiteState::basis(2, 2, 0, 0));
    EXPECT_TRUE(d == mat(2, 2, {1, 0, 0, 0}));
}

TEST(Dual, FixedPointMatrix) {
    EXPECT_TRUE(to_dual(testing::psi1()) == 0.5 * mat(2, 2, {1, 1, 1, -1}));
}

TEST(Dual, RoundTripIsExact) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const BipartiteState psi = random_state(2 + seed % 3, 3, seed);
        EXPECT_TRUE(from_dual(to_dual(psi)) == psi);
    }
}

TEST(Dual, EntryLayout) {
    const BipartiteState psi = random_state(2, 3, 4);
    const CMatrix d = to_dual(psi);
    ASSERT_EQ(d.rows(), 2);
    ASSERT_EQ(d.cols(), 3);
    for (Eigen::Index a = 0; a < 2; ++a) {
        for (Eigen::Index b = 0; b < 3; ++b) {
            EXPECT_EQ(d(a, b), psi.amplitudes()(a * 3 + b));
        }
    }
}

TEST(Dual, LocalOperatorCovariance) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BipartiteState psi = random_state(2, 3, seed);
        const CMatrix a = gaussian(2, 2, seed + 10);
        const CMatrix b = gaussian(3, 3, seed + 20);
        const CVector moved = testing::entrywise_kron(a, b) * psi.amplitudes();
        CMatrix moved_dual(2, 3);
        for (Eigen::Index i = 0; i < 2; ++i) {
            for (Eigen::Index j = 0; j < 3; ++j) {
                moved_dual(i, j) = moved(i * 3 + j);
            }
        }
        const CMatrix expect = a * to_dual(psi) * b.transpose();
        EXPECT_LT((moved_dual - expect).norm(), 1e-12 * std::max(1.0, expect.norm()));
        EXPECT_LT((apply_product(a, b, psi) - moved).norm(), 1e-12 * std::max(1.0, moved.norm()));
    }
}

TEST(Supports, FullRankIsIdentity) {
    const SupportProjectors s = supports(random_state(2, 2, 3));
    EXPECT_LT((s.pa - CMatrix::Identity(2, 2)).norm(), 1e-10);
    EXPECT_LT((s.pb - CMatrix::Identity(2, 2)).norm(), 1e-10);
}

TEST(Supports, ProductState) {
    const SupportProjectors s = supports(BipartiteState::basis(2, 2, 0, 0));
    EXPECT_LT((s.pa - mat(2, 2, {1, 0, 0, 0})).norm(), 1e-12);
    EXPECT_LT((s.pb - mat(2, 2, {1, 0, 0, 0})).norm(), 1e-12);
    EXPECT_EQ(s.rank, 1u);
}

TEST(Supports, RankTwoInThreeByThree) {
    CVector v = CVector::Zero(9);
    v(0) = std::sqrt(0.7);
    v(4) = std::sqrt(0.3);
    const BipartiteState psi(3, 3, v);
    const SupportProjectors s = supports(psi);
    EXPECT_EQ(s.rank, 2u);
    CMatrix expect = CMatrix::Zero(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = 1.0;
    EXPECT_LT((s.pa - expect).norm(), 1e-12);
    EXPECT_LT((s.pb - expect).norm(), 1e-12);
    EXPECT_LT((testing::entrywise_kron(s.pa, s.pb) * v - v).norm(), 1e-10);
}

TEST(Supports, ProjectorProperty) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t r = 1 + seed % 3;
        const CMatrix chi = gaussian(3, r, seed) * gaussian(r, 4, seed + 5);
        const BipartiteState psi = from_dual(chi / chi.norm());
        const SupportProjectors s = supports(psi);
        for (const CMatrix *p : {&s.pa, &s.pb}) {
            EXPECT_LT((*p * *p - *p).norm(), 1e-10);
            EXPECT_LT((p->adjoint() - *p).norm(), 1e-10);
            EXPECT_NEAR(p->trace().real(), static_cast<double>(r), 1e-10);
        }
        EXPECT_LT((testing::entrywise_kron(s.pa, s.pb) * psi.amplitudes() - psi.amplitudes()).norm(), 1e-10);
    }
}

TEST(RandomState, ScalarCase) {
    const BipartiteState s = random_state(1, 1, 8);
    EXPECT_NEAR(std::abs(s.amplitudes()(0)), 1.0, 1e-15);
    EXPECT_NEAR(schmidt_decompose(s).coefficients[0], 1.0, 1e-15);
}

TEST(RandomState, Deterministic) {
    EXPECT_TRUE(random_state(2, 2, 3) == random_state(2, 2, 3));
}

TEST(RandomState, FullRank) {
    EXPECT_EQ(schmidt_decompose(random_state(3, 3, 5)).rank, 3u);
}

TEST(Density, PartialTransposeMatchesIndexSwap) {
    const BipartiteState psi = random_state(2, 3, 12);
    const CMatrix rho = density(psi);
    EXPECT_TRUE(partial_transpose_b(rho, 2, 3) == testing::explicit_partial_transpose(rho, 2, 3));
}

TEST(Density, RequireDensityChecks) {
    EXPECT_NO_THROW(require_density(density(testing::psi1())));
    EXPECT_THROW(require_density(2.0 * density(testing::psi1())), InputError);
    EXPECT_THROW(require_density(mat(2, 2, {1.5, 0, 0, -0.5})), InputError);
    EXPECT_THROW(require_density(mat(2, 2, {0.5, 1, 0, 0.5})), InputError);
}

TEST(Density, FidelityOfPureStates) {
    const BipartiteState psi = testing::psi1();
    EXPECT_NEAR(fidelity(psi, density(psi)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(psi, density(BipartiteState::basis(2, 2, 0, 0))), 0.25, 1e-15);
}

}  // namespace
}  // namespace septrans
