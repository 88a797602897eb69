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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "steerbox/rational.hpp"

namespace steerbox {

enum class Party { Alice, Bob };
enum class Arithmetic { Rational, Float };

inline constexpr Party other(Party p) noexcept { return p == Party::Alice ? Party::Bob : Party::Alice; }
const char *party_name(Party p);

/// A->B: Alice steers Bob (Alice untrusted, discord measured on Alice).
/// B->A: the mirror.
enum class Direction { AliceToBob, BobToAlice };

const char *direction_name(Direction d);
inline constexpr Party steering_party(Direction d) noexcept {
    return d == Direction::AliceToBob ? Party::Alice : Party::Bob;
}

/// Normalization slack accepted for floating boxes.
inline constexpr double kNormalizationTolerance = 1e-12;
/// Default tolerance for floating comparisons (no-signaling, LP, etc.).
inline constexpr double kFloatTolerance = 1e-9;

/// Flat index of p(ab|xy); the storage order is (x, y, a, b) with b fastest.
constexpr std::size_t box_index(int x, int y, int a, int b) noexcept {
    return static_cast<std::size_t>((x << 3) | (y << 2) | (a << 1) | b);
}

/// Conditional distribution q(output|input) for one party, two inputs and two
/// outputs. Stored as [input * 2 + output].
class SinglePartyBox {
   public:
    static SinglePartyBox from_double(const std::array<double, 4> &q);
    static SinglePartyBox from_rational(const std::array<Rational, 4> &q);
    /// Box with q(0|0) = p0_given_0 and q(0|1) = p0_given_1.
    static SinglePartyBox from_p0(double p0_given_0, double p0_given_1);
    static SinglePartyBox from_p0(const Rational &p0_given_0, const Rational &p0_given_1);
    /// Deterministic response: output = alpha * input xor beta.
    static SinglePartyBox deterministic(int alpha, int beta);
    static SinglePartyBox uniform();

    double prob(int input, int output) const { return q_[static_cast<std::size_t>(input * 2 + output)]; }
    const Rational &prob_exact(int input, int output) const;
    bool is_exact() const noexcept { return exact_.has_value(); }
    const std::array<double, 4> &values() const noexcept { return q_; }

    friend bool operator==(const SinglePartyBox &lhs, const SinglePartyBox &rhs);

   private:
    SinglePartyBox() = default;

    std::array<double, 4> q_{};
    std::optional<std::array<Rational, 4>> exact_;
};

/// Joint table p(ab|xy) of a two-input, two-output bipartite scenario.
///
/// Rational boxes keep the exact entries alongside their double images; all
/// exact operations (LP, case engine, equality) use the rational copy. A box
/// is immutable once built and always normalized and nonnegative.
class Box {
   public:
    static Box from_rational(const std::array<Rational, 16> &p);
    static Box from_double(const std::array<double, 16> &p);

    double p(int x, int y, int a, int b) const noexcept { return p_[box_index(x, y, a, b)]; }
    const Rational &p_exact(int x, int y, int a, int b) const;

    Arithmetic mode() const noexcept { return exact_ ? Arithmetic::Rational : Arithmetic::Float; }
    bool is_exact() const noexcept { return exact_.has_value(); }
    const std::array<double, 16> &values() const noexcept { return p_; }
    const std::array<Rational, 16> &exact_values() const;

    /// Same box, floating mode.
    Box as_float() const;
    /// p'(ab|xy) = p(ba|yx): Bob becomes the first party.
    Box swap_parties() const;

    double max_abs_difference(const Box &other) const;

    /// Exact comparison when both boxes are rational, bitwise on doubles
    /// otherwise.
    friend bool operator==(const Box &lhs, const Box &rhs);

   private:
    Box() = default;

    std::array<double, 16> p_{};
    std::optional<std::array<Rational, 16>> exact_;
};

Box mixture(std::span<const Box> boxes, std::span<const Rational> weights);
Box mixture(std::span<const Box> boxes, std::span<const double> weights);

/// P_D^{alpha beta gamma eps}: a = alpha x xor beta, b = gamma y xor eps.
Box deterministic_box(int alpha, int beta, int gamma, int eps);
/// All 16 vertices, lexicographic in (alpha, beta, gamma, eps).
std::array<Box, 16> deterministic_boxes();
/// Canonical PR box: p(ab|xy) = 1/2 iff a xor b = x y.
Box pr_box();
Box uniform_box();

SinglePartyBox marginal(const Box &box, Party side, double tol = kFloatTolerance);
bool is_nosignaling(const Box &box, double tol = kFloatTolerance);

/// Local relabeling. For each party: input flip s, then outputs
/// a -> a xor alpha x xor beta where x is the input before the flip.
struct Relabeling {
    int input_flip_a = 0;
    int alpha_a = 0;
    int beta_a = 0;
    int input_flip_b = 0;
    int alpha_b = 0;
    int beta_b = 0;

    /// Relabeling equivalent to applying `first` and then `*this`.
    Relabeling after(const Relabeling &first) const;
    Relabeling inverse() const;

    friend bool operator==(const Relabeling &, const Relabeling &) = default;
};

/// The 64 relabelings (8 per party).
std::vector<Relabeling> all_relabelings();
Box apply_lro(const Box &box, const Relabeling &r);
/// Distinct boxes reachable from `box` by relabelings, in first-seen order.
std::vector<Box> lro_orbit(const Box &box);

/// <A_x B_y> = sum_{a,b} (-1)^{a xor b} p(ab|xy).
double correlator(const Box &box, int x, int y);
Rational correlator_exact(const Box &box, int x, int y);

/// B_{alpha beta gamma}; every local box scores at most 2.
double chsh_value(const Box &box, int alpha, int beta, int gamma);
Rational chsh_value_exact(const Box &box, int alpha, int beta, int gamma);

struct ChshMax {
    double value;
    int alpha;
    int beta;
    int gamma;
};
/// Maximum over the 8 functionals; ties resolved by the first in (alpha,beta,gamma) order.
ChshMax chsh_max(const Box &box);

}  // namespace steerbox
