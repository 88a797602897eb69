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

#include <algorithm>
#include <cmath>
#include <random>

#include "steerbox/box.hpp"
#include "steerbox/error.hpp"
#include "steerbox/rational.hpp"
#include "steerbox/simplex.hpp"

using namespace steerbox;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n) / d; }

std::array<Rational, 16> table(std::initializer_list<long long> num, long long den) {
    std::array<Rational, 16> out{};
    std::size_t i = 0;
    for (long long v : num) out[i++] = R(v, den);
    return out;
}

ErrorCode code_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no steerbox::Error thrown";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rational("3/8"), R(3, 8));
    EXPECT_EQ(parse_rational("-6/4"), R(-3, 2));
    EXPECT_EQ(parse_rational("7"), R(7));
    EXPECT_EQ(parse_rational("010/08"), R(5, 4));
    EXPECT_EQ(parse_rational("0.0625"), R(1, 16));
    EXPECT_EQ(parse_rational("0.375"), R(3, 8));
    EXPECT_EQ(parse_rational("0.707"), R(707, 1000));
    EXPECT_EQ(format_rational(R(3, 8)), "3/8");
    EXPECT_EQ(format_rational(R(2)), "2/1");
}

TEST(Rational, RejectsMalformedText) {
    for (const char *bad : {"", "1/0", "a/2", "1/2/3", "0.3.4", "--1"}) {
        EXPECT_EQ(code_of([&] { parse_rational(bad); }), ErrorCode::Parse) << bad;
    }
}

TEST(Rational, DyadicConversionIsExactOrAbsent) {
    EXPECT_EQ(*dyadic_from_double(0.5), R(1, 2));
    EXPECT_EQ(*dyadic_from_double(0.25), R(1, 4));
    EXPECT_FALSE(dyadic_from_double(0.707).has_value());
}

TEST(Box, RejectsUnnormalizedAndNegativeTables) {
    auto t = table({1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0}, 1);
    t[0] = R(1, 2);
    EXPECT_EQ(code_of([&] { Box::from_rational(t); }), ErrorCode::InvalidBox);
    t[0] = R(3, 2);
    t[1] = R(-1, 2);
    EXPECT_EQ(code_of([&] { Box::from_rational(t); }), ErrorCode::InvalidBox);
    std::array<double, 16> d{};
    d.fill(0.25);
    d[3] = std::nan("");
    EXPECT_EQ(code_of([&] { Box::from_double(d); }), ErrorCode::InvalidBox);
}

TEST(Box, DeterministicVerticesFollowTheirResponseFunctions) {
    auto v = deterministic_boxes();
    for (int k = 0; k < 16; ++k) {
        int al = (k >> 3) & 1, be = (k >> 2) & 1, ga = (k >> 1) & 1, ep = k & 1;
        EXPECT_EQ(v[static_cast<std::size_t>(k)], deterministic_box(al, be, ga, ep));
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        bool hit = a == ((al * x) ^ be) && b == ((ga * y) ^ ep);
                        EXPECT_EQ(v[static_cast<std::size_t>(k)].p_exact(x, y, a, b), R(hit ? 1 : 0));
                    }
    }
}

TEST(Box, PrBoxReachesFourAndLocalBoxesStayBelowTwo) {
    auto c = chsh_max(pr_box());
    EXPECT_DOUBLE_EQ(c.value, 4.0);
    EXPECT_EQ(chsh_value_exact(pr_box(), 0, 0, 0), R(4));
    for (const auto &d : deterministic_boxes()) EXPECT_LE(chsh_max(d).value, 2.0 + 1e-12);
    EXPECT_DOUBLE_EQ(chsh_max(uniform_box()).value, 0.0);
}

TEST(Box, CorrelatorMatchesDirectSum) {
    Box pr = pr_box();
    EXPECT_EQ(correlator_exact(pr, 0, 0), R(1));
    EXPECT_EQ(correlator_exact(pr, 1, 1), R(-1));
    EXPECT_DOUBLE_EQ(correlator(pr, 0, 1), 1.0);
}

TEST(Box, MarginalsAndSignaling) {
    auto q = marginal(deterministic_box(1, 0, 0, 1), Party::Alice);
    EXPECT_EQ(q.prob_exact(0, 0), R(1));
    EXPECT_EQ(q.prob_exact(1, 1), R(1));
    auto sig = table({1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}, 1);
    Box s = Box::from_rational(sig);
    EXPECT_FALSE(is_nosignaling(s));
    EXPECT_EQ(code_of([&] { marginal(s, Party::Bob); }), ErrorCode::Signaling);
    EXPECT_TRUE(is_nosignaling(pr_box()));
}

TEST(Box, SwapPartiesIsAnInvolution) {
    Box d = deterministic_box(1, 1, 0, 0);
    EXPECT_EQ(d.swap_parties(), deterministic_box(0, 0, 1, 1));
    EXPECT_EQ(d.swap_parties().swap_parties(), d);
}

TEST(Box, MixtureIsExactAndChecksWeights) {
    auto v = deterministic_boxes();
    std::vector<Box> two{v[0], v[15]};
    std::vector<Rational> w{R(1, 3), R(2, 3)};
    Box m = mixture(two, w);
    EXPECT_TRUE(m.is_exact());
    EXPECT_EQ(m.p_exact(0, 0, 0, 0), R(1, 3));
    std::vector<Rational> bad{R(1, 2), R(1, 3)};
    EXPECT_THROW(mixture(two, bad), Error);
}

TEST(Box, FloatComparisonUsesMaxAbsDifference) {
    Box u = uniform_box();
    EXPECT_EQ(u.max_abs_difference(u.as_float()), 0.0);
    EXPECT_FALSE(u.as_float().is_exact());
}

TEST(Lro, GroupLawHolds) {
    auto all = all_relabelings();
    ASSERT_EQ(all.size(), 64u);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    Box base = Box::from_rational(table({4, 1, 0, 3, 2, 2, 1, 3, 1, 3, 2, 2, 3, 1, 2, 2}, 8));
    for (int t = 0; t < 200; ++t) {
        const auto &f = all[pick(rng)];
        const auto &g = all[pick(rng)];
        EXPECT_EQ(apply_lro(apply_lro(base, f), g), apply_lro(base, g.after(f)));
        EXPECT_EQ(apply_lro(apply_lro(base, f), f.inverse()), base);
        EXPECT_EQ(f.after(f.inverse()), Relabeling{});
    }
}

TEST(Lro, OrbitSizes) {
    EXPECT_EQ(lro_orbit(deterministic_box(0, 0, 0, 0)).size(), 16u);
    EXPECT_EQ(lro_orbit(pr_box()).size(), 8u);
    EXPECT_EQ(lro_orbit(uniform_box()).size(), 1u);
}

TEST(Simplex, SolvesSmallExactProgram) {
    // min -x - y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6.
    std::vector<std::vector<Rational>> a{{1, 2, 1, 0}, {3, 1, 0, 1}};
    std::vector<Rational> b{4, 6};
    std::vector<Rational> c{-1, -1, 0, 0};
    auto r = lp::minimize(a, b, c);
    ASSERT_EQ(r.status, lp::Status::Optimal);
    EXPECT_EQ(r.x[0], R(8, 5));
    EXPECT_EQ(r.x[1], R(6, 5));
    EXPECT_EQ(r.objective, R(-14, 5));
}

TEST(Simplex, DetectsInfeasibility) {
    std::vector<std::vector<double>> a{{1, 1}};
    std::vector<double> b{-1};
    auto r = lp::minimize(a, b, std::vector<double>{0, 0});
    EXPECT_EQ(r.status, lp::Status::Infeasible);
}
