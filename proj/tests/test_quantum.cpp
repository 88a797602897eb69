// Copyright 2026 The steerbox Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "steerbox/discord.hpp"
#include "steerbox/error.hpp"
#include "steerbox/quantum.hpp"

using namespace steerbox;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n) / d; }

const std::array<Measurement, 2> kZX{Measurement::sigma_z(), Measurement::sigma_x()};

Measurement meas(const std::array<double, 3> &n) { return Measurement::from_bloch(n[0], n[1], n[2]); }

}  // namespace

TEST(Jacobi, AgreesWithReferenceSolverOnRandomHermitianMatrices) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        int n = t % 2 ? 4 : 2;
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
        Eigen::MatrixXcd h = m + m.adjoint();
        auto es = eigensystem(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(h);
        for (int i = 0; i < n; ++i) EXPECT_NEAR(es.values(i), ref.eigenvalues()(n - 1 - i), 1e-11);
        Eigen::MatrixXcd back = es.vectors * es.values.cast<std::complex<double>>().asDiagonal() * es.vectors.adjoint();
        EXPECT_LT((back - h).norm(), 1e-11);
    }
}

TEST(Jacobi, RejectsNonHermitianInput) {
    Eigen::MatrixXcd m(2, 2);
    m << 1, 2, 0, 1;
    EXPECT_THROW(eigensystem(m), Error);
}

TEST(DensityMatrix, ValidatesTracePositivityAndShape) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
    EXPECT_THROW(DensityMatrix::from_matrix(m), Error);
    Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix::from_matrix(neg), Error);
    EXPECT_THROW(DensityMatrix::from_matrix(Eigen::MatrixXcd::Identity(3, 3) / 3.0), Error);
    EXPECT_NO_THROW(DensityMatrix::from_matrix(Eigen::MatrixXcd::Identity(2, 2) / 2.0));
}

TEST(Quantum, OneWayDiscordTableIsTheExactBornBox) {
    // Table from the source text, rows (x,y), columns (a,b).
    const long long t[4][4] = {{4, 2, 0, 2}, {3, 3, 1, 1}, {2, 4, 2, 0}, {3, 3, 1, 1}};
    Box b = born_box(one_way_discord_state(), kZX, kZX);
    ASSERT_TRUE(b.is_exact());
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) EXPECT_EQ(b.p_exact(x, y, a, bb), R(t[x * 2 + y][a * 2 + bb], 8));
    EXPECT_EQ(b, one_way_discord_box());
}

TEST(Quantum, BornBoxMatchesOracleOnRandomStates) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        oracle::Mat4 rho = oracle::random_state(rng);
        std::array<std::array<double, 3>, 2> na{oracle::random_direction(rng), oracle::random_direction(rng)};
        std::array<std::array<double, 3>, 2> nb{oracle::random_direction(rng), oracle::random_direction(rng)};
        std::array<Measurement, 2> ma{meas(na[0]), meas(na[1])};
        std::array<Measurement, 2> mb{meas(nb[0]), meas(nb[1])};
        Box b = born_box(DensityMatrix::from_matrix(rho), ma, mb);
        auto want = oracle::born(rho, na, nb);
        for (std::size_t i = 0; i < 16; ++i) EXPECT_NEAR(b.values()[i], want[i], 1e-12);
    }
}

TEST(Quantum, ReducedStatesMatchPartialTrace) {
    std::mt19937_64 rng(8);
    oracle::Mat4 rho = oracle::random_state(rng);
    auto s = DensityMatrix::from_matrix(rho);
    EXPECT_LT((reduced_state(s, Party::Alice).matrix() - oracle::trace_b(rho)).norm(), 1e-13);
    EXPECT_LT((reduced_state(s, Party::Bob).matrix() - oracle::trace_a(rho)).norm(), 1e-13);
}

TEST(Quantum, AssemblageSumsToReducedStateAndComposes) {
    auto st = one_way_discord_state();
    auto asmb = assemblage(st, kZX);
    auto bob = reduced_state(st, Party::Bob).matrix();
    for (int x = 0; x < 2; ++x) {
        Eigen::Matrix2cd sum = asmb.sigma(x, 0) + asmb.sigma(x, 1);
        EXPECT_LT((sum - bob).norm(), 1e-14);
    }
    EXPECT_EQ(box_from_assemblage(asmb, kZX), born_box(st, kZX, kZX));
}

TEST(Quantum, NoisyChshFamily) {
    for (double v : {0.0, 0.3, 0.707, 1.0}) {
        Box b = noisy_chsh_box(v);
        EXPECT_NEAR(chsh_max(b).value, 2 * std::sqrt(2.0) * v, 1e-12);
        EXPECT_TRUE(is_nosignaling(b));
    }
    EXPECT_EQ(noisy_chsh_box(0.0), uniform_box());
    EXPECT_THROW(noisy_chsh_box(1.5), Error);
}

TEST(Quantum, Bb84FamilyEntries) {
    Box b = bb84_box(0.5);
    ASSERT_TRUE(b.is_exact());
    EXPECT_EQ(b.p_exact(0, 0, 0, 0), R(3, 8));  // (1 + V) / 4
    EXPECT_EQ(b.p_exact(0, 1, 0, 1), R(1, 4));
    EXPECT_EQ(b.p_exact(1, 1, 1, 1), R(1, 8));  // sign flips at x = y = 1
    EXPECT_EQ(b.p_exact(1, 1, 0, 1), R(3, 8));
    EXPECT_EQ(bb84_box(R(707, 1000)).p_exact(0, 0, 1, 0), R(293, 4000));
    EXPECT_NEAR(chsh_max(bb84_box(0.707)).value, 2 * 0.707, 1e-12);
    EXPECT_THROW(bb84_box(-0.1), Error);
}

TEST(Quantum, MeasurementValidation) {
    EXPECT_THROW(Measurement::from_bloch(1, 1, 0), Error);
    auto m = Measurement::from_angles(std::acos(-1.0) / 2, 0);
    EXPECT_NEAR(m.bloch()[0], 1.0, 1e-15);
    Eigen::Matrix2cd sum = m.projector(0) + m.projector(1);
    EXPECT_LT((sum - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
}

TEST(Discord, OneWayStateMatchesOracle) {
    auto st = one_way_discord_state();
    Eigen::Matrix4cd rho = st.matrix();
    double ab = discord(st, Direction::AliceToBob).discord;
    double ba = discord(st, Direction::BobToAlice).discord;
    // Frozen from oracle::discord_first (0.01 scan then 1e-4 grid).
    EXPECT_NEAR(ab, 0.2017520734, 1e-4);
    EXPECT_NEAR(ab, oracle::discord_first(rho), 1e-4);
    EXPECT_LT(std::fabs(ba), 1e-6);
    EXPECT_TRUE(is_quantum_classical(st));
    EXPECT_FALSE(is_classical_quantum(st));
}

TEST(Discord, ProductAndMixedStatesHaveNone) {
    for (auto st : {maximally_mixed_state(4),
                    product_state(DensityMatrix::from_matrix(Eigen::Matrix2cd::Identity() / 2.0),
                                  maximally_mixed_state(2))}) {
        EXPECT_LT(std::fabs(discord(st, Direction::AliceToBob).discord), 1e-9);
        EXPECT_LT(std::fabs(discord(st, Direction::BobToAlice).discord), 1e-9);
    }
}

TEST(Discord, EntropyHelpers) {
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
    EXPECT_NEAR(von_neumann_entropy(maximally_mixed_state(4)), 2.0, 1e-12);
}

TEST(Discord, RandomStatesAgreeWithOracleAndAreNonnegative) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 3; ++t) {
        oracle::Mat4 rho = oracle::random_state(rng);
        auto st = DensityMatrix::from_matrix(rho);
        double ab = discord(st, Direction::AliceToBob).discord;
        double ba = discord(st, Direction::BobToAlice).discord;
        EXPECT_GE(ab, -1e-9);
        EXPECT_NEAR(ab, oracle::discord_first(rho), 1e-4);
        EXPECT_NEAR(ba, oracle::discord_first(oracle::swap_parties(rho)), 1e-4);
    }
}
