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

#include "steerbox/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "steerbox/error.hpp"

namespace steerbox {

const char *party_name(Party p) { return p == Party::Alice ? "alice" : "bob"; }

const char *direction_name(Direction d) { return d == Direction::AliceToBob ? "A->B" : "B->A"; }

namespace {

template <std::size_t N>
std::array<double, N> to_doubles(const std::array<Rational, N> &r) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = to_double(r[i]);
    }
    return out;
}

std::string entry_name(std::size_t i) {
    std::ostringstream os;
    os << "p(" << ((i >> 1) & 1) << (i & 1) << '|' << ((i >> 3) & 1) << ((i >> 2) & 1) << ')';
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// SinglePartyBox

SinglePartyBox SinglePartyBox::from_double(const std::array<double, 4> &q) {
    for (int in = 0; in < 2; ++in) {
        double s = 0;
        for (int out = 0; out < 2; ++out) {
            double v = q[static_cast<std::size_t>(in * 2 + out)];
            if (!std::isfinite(v) || v < 0 || v > 1 + kNormalizationTolerance) {
                throw Error(ErrorCode::InvalidBox, "single-party probability out of [0,1]");
            }
            s += v;
        }
        if (std::fabs(s - 1) > kNormalizationTolerance) {
            throw Error(ErrorCode::InvalidBox, "single-party box not normalized for input " + std::to_string(in));
        }
    }
    SinglePartyBox b;
    b.q_ = q;
    return b;
}

SinglePartyBox SinglePartyBox::from_rational(const std::array<Rational, 4> &q) {
    for (int in = 0; in < 2; ++in) {
        const Rational &p0 = q[static_cast<std::size_t>(in * 2)];
        const Rational &p1 = q[static_cast<std::size_t>(in * 2 + 1)];
        if (p0 < 0 || p1 < 0 || p0 + p1 != 1) {
            throw Error(ErrorCode::InvalidBox, "single-party box not a distribution for input " + std::to_string(in));
        }
    }
    SinglePartyBox b;
    b.q_ = to_doubles(q);
    b.exact_ = q;
    return b;
}

SinglePartyBox SinglePartyBox::from_p0(double p0_given_0, double p0_given_1) {
    return from_double({p0_given_0, 1 - p0_given_0, p0_given_1, 1 - p0_given_1});
}

SinglePartyBox SinglePartyBox::from_p0(const Rational &p0_given_0, const Rational &p0_given_1) {
    return from_rational({p0_given_0, 1 - p0_given_0, p0_given_1, 1 - p0_given_1});
}

SinglePartyBox SinglePartyBox::deterministic(int alpha, int beta) {
    std::array<Rational, 4> q{};
    for (int in = 0; in < 2; ++in) {
        int out = (alpha * in) ^ beta;
        q[static_cast<std::size_t>(in * 2 + out)] = 1;
    }
    return from_rational(q);
}

SinglePartyBox SinglePartyBox::uniform() {
    Rational h(1, 2);
    return from_rational({h, h, h, h});
}

const Rational &SinglePartyBox::prob_exact(int input, int output) const {
    if (!exact_) {
        throw Error(ErrorCode::NonRational, "single-party box has no exact entries");
    }
    return (*exact_)[static_cast<std::size_t>(input * 2 + output)];
}

bool operator==(const SinglePartyBox &lhs, const SinglePartyBox &rhs) {
    if (lhs.exact_ && rhs.exact_) {
        return *lhs.exact_ == *rhs.exact_;
    }
    return lhs.q_ == rhs.q_;
}

// ---------------------------------------------------------------------------
// Box

Box Box::from_rational(const std::array<Rational, 16> &p) {
    for (std::size_t i = 0; i < 16; ++i) {
        if (p[i] < 0) {
            throw Error(ErrorCode::InvalidBox, "negative entry " + entry_name(i));
        }
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            Rational s = 0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    s += p[box_index(x, y, a, b)];
                }
            }
            if (s != 1) {
                throw Error(ErrorCode::InvalidBox, "entries for (x,y)=(" + std::to_string(x) + "," +
                                                       std::to_string(y) + ") sum to " + format_rational(s));
            }
        }
    }
    Box box;
    box.p_ = to_doubles(p);
    box.exact_ = p;
    return box;
}

Box Box::from_double(const std::array<double, 16> &p) {
    for (std::size_t i = 0; i < 16; ++i) {
        if (!std::isfinite(p[i]) || p[i] < 0) {
            throw Error(ErrorCode::InvalidBox, "negative or non-finite entry " + entry_name(i));
        }
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double s = 0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    s += p[box_index(x, y, a, b)];
                }
            }
            if (std::fabs(s - 1) > kNormalizationTolerance) {
                std::ostringstream os;
                os.precision(17);
                os << "entries for (x,y)=(" << x << "," << y << ") sum to " << s;
                throw Error(ErrorCode::InvalidBox, os.str());
            }
        }
    }
    Box box;
    box.p_ = p;
    return box;
}

const Rational &Box::p_exact(int x, int y, int a, int b) const { return exact_values()[box_index(x, y, a, b)]; }

const std::array<Rational, 16> &Box::exact_values() const {
    if (!exact_) {
        throw Error(ErrorCode::NonRational, "box is in floating mode");
    }
    return *exact_;
}

Box Box::as_float() const {
    Box b;
    b.p_ = p_;
    return b;
}

Box Box::swap_parties() const {
    Box out;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    out.p_[box_index(y, x, b, a)] = p_[box_index(x, y, a, b)];
                }
            }
        }
    }
    if (exact_) {
        std::array<Rational, 16> e{};
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        e[box_index(y, x, b, a)] = (*exact_)[box_index(x, y, a, b)];
                    }
                }
            }
        }
        out.exact_ = std::move(e);
    }
    return out;
}

double Box::max_abs_difference(const Box &other) const {
    double m = 0;
    for (std::size_t i = 0; i < 16; ++i) {
        m = std::max(m, std::fabs(p_[i] - other.p_[i]));
    }
    return m;
}

bool operator==(const Box &lhs, const Box &rhs) {
    if (lhs.exact_ && rhs.exact_) {
        return *lhs.exact_ == *rhs.exact_;
    }
    return lhs.p_ == rhs.p_;
}

Box mixture(std::span<const Box> boxes, std::span<const Rational> weights) {
    if (boxes.size() != weights.size() || boxes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mixture needs one weight per box");
    }
    std::array<Rational, 16> p{};
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        const auto &e = boxes[k].exact_values();
        for (std::size_t i = 0; i < 16; ++i) {
            p[i] += weights[k] * e[i];
        }
    }
    return Box::from_rational(p);
}

Box mixture(std::span<const Box> boxes, std::span<const double> weights) {
    if (boxes.size() != weights.size() || boxes.empty()) {
        throw Error(ErrorCode::InvalidArgument, "mixture needs one weight per box");
    }
    std::array<double, 16> p{};
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        for (std::size_t i = 0; i < 16; ++i) {
            p[i] += weights[k] * boxes[k].values()[i];
        }
    }
    return Box::from_double(p);
}

// ---------------------------------------------------------------------------
// Named boxes

Box deterministic_box(int alpha, int beta, int gamma, int eps) {
    for (int v : {alpha, beta, gamma, eps}) {
        if (v != 0 && v != 1) {
            throw Error(ErrorCode::InvalidArgument, "deterministic box parameters must be bits");
        }
    }
    std::array<Rational, 16> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            p[box_index(x, y, (alpha * x) ^ beta, (gamma * y) ^ eps)] = 1;
        }
    }
    return Box::from_rational(p);
}

std::array<Box, 16> deterministic_boxes() {
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
        return std::array<Box, 16>{deterministic_box((I >> 3) & 1, (I >> 2) & 1, (I >> 1) & 1, I & 1)...};
    }(std::make_index_sequence<16>{});
}

Box pr_box() {
    std::array<Rational, 16> p{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if ((a ^ b) == (x & y)) {
                        p[box_index(x, y, a, b)] = Rational(1, 2);
                    }
                }
            }
        }
    }
    return Box::from_rational(p);
}

Box uniform_box() {
    std::array<Rational, 16> p;
    p.fill(Rational(1, 4));
    return Box::from_rational(p);
}

// ---------------------------------------------------------------------------
// Marginals

namespace {

// Marginal of `side` computed with the other party's input fixed to `other_input`.
template <class T, class Get>
std::array<T, 4> marginal_for(Party side, int other_input, Get get) {
    std::array<T, 4> q{};
    for (int in = 0; in < 2; ++in) {
        for (int out = 0; out < 2; ++out) {
            T s{0};
            for (int o = 0; o < 2; ++o) {
                s += side == Party::Alice ? get(in, other_input, out, o) : get(other_input, in, o, out);
            }
            q[static_cast<std::size_t>(in * 2 + out)] = s;
        }
    }
    return q;
}

}  // namespace

SinglePartyBox marginal(const Box &box, Party side, double tol) {
    if (box.is_exact()) {
        auto get = [&](int x, int y, int a, int b) { return box.p_exact(x, y, a, b); };
        auto m0 = marginal_for<Rational>(side, 0, get);
        auto m1 = marginal_for<Rational>(side, 1, get);
        if (m0 != m1) {
            throw Error(ErrorCode::Signaling,
                        std::string("marginal of ") + party_name(side) + " depends on the other party's input");
        }
        return SinglePartyBox::from_rational(m0);
    }
    auto get = [&](int x, int y, int a, int b) { return box.p(x, y, a, b); };
    auto m0 = marginal_for<double>(side, 0, get);
    auto m1 = marginal_for<double>(side, 1, get);
    std::array<double, 4> avg{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (std::fabs(m0[i] - m1[i]) > tol) {
            throw Error(ErrorCode::Signaling,
                        std::string("marginal of ") + party_name(side) + " depends on the other party's input");
        }
        avg[i] = 0.5 * (m0[i] + m1[i]);
    }
    return SinglePartyBox::from_double(avg);
}

bool is_nosignaling(const Box &box, double tol) {
    for (Party side : {Party::Alice, Party::Bob}) {
        if (box.is_exact()) {
            auto get = [&](int x, int y, int a, int b) { return box.p_exact(x, y, a, b); };
            if (marginal_for<Rational>(side, 0, get) != marginal_for<Rational>(side, 1, get)) {
                return false;
            }
        } else {
            auto get = [&](int x, int y, int a, int b) { return box.p(x, y, a, b); };
            auto m0 = marginal_for<double>(side, 0, get);
            auto m1 = marginal_for<double>(side, 1, get);
            for (std::size_t i = 0; i < 4; ++i) {
                if (std::fabs(m0[i] - m1[i]) > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Relabelings

namespace {

struct SideMap {
    int s, alpha, beta;

    // (x, a) -> (x xor s, a xor alpha x xor beta)
    int input(int x) const { return x ^ s; }
    int output(int x, int a) const { return a ^ (alpha * x) ^ beta; }

    SideMap after(const SideMap &first) const {
        return {first.s ^ s, first.alpha ^ alpha, first.beta ^ beta ^ (alpha * first.s)};
    }
};

}  // namespace

Relabeling Relabeling::after(const Relabeling &first) const {
    SideMap a = SideMap{input_flip_a, alpha_a, beta_a}.after({first.input_flip_a, first.alpha_a, first.beta_a});
    SideMap b = SideMap{input_flip_b, alpha_b, beta_b}.after({first.input_flip_b, first.alpha_b, first.beta_b});
    return {a.s, a.alpha, a.beta, b.s, b.alpha, b.beta};
}

Relabeling Relabeling::inverse() const {
    // Inverse of (s, alpha, beta) is (s, alpha, beta xor alpha s).
    return {input_flip_a, alpha_a, beta_a ^ (alpha_a * input_flip_a),
            input_flip_b, alpha_b, beta_b ^ (alpha_b * input_flip_b)};
}

std::vector<Relabeling> all_relabelings() {
    std::vector<Relabeling> out;
    out.reserve(64);
    for (int code = 0; code < 64; ++code) {
        out.push_back({(code >> 5) & 1, (code >> 4) & 1, (code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1,
                       code & 1});
    }
    return out;
}

Box apply_lro(const Box &box, const Relabeling &r) {
    SideMap ma{r.input_flip_a, r.alpha_a, r.beta_a};
    SideMap mb{r.input_flip_b, r.alpha_b, r.beta_b};
    auto target = [&](int x, int y, int a, int b) {
        return box_index(ma.input(x), mb.input(y), ma.output(x, a), mb.output(y, b));
    };
    if (box.is_exact()) {
        std::array<Rational, 16> p{};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) p[target(x, y, a, b)] = box.p_exact(x, y, a, b);
        return Box::from_rational(p);
    }
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) p[target(x, y, a, b)] = box.p(x, y, a, b);
    return Box::from_double(p);
}

std::vector<Box> lro_orbit(const Box &box) {
    std::vector<Box> orbit;
    for (const auto &r : all_relabelings()) {
        Box image = apply_lro(box, r);
        if (std::find(orbit.begin(), orbit.end(), image) == orbit.end()) {
            orbit.push_back(std::move(image));
        }
    }
    return orbit;
}

// ---------------------------------------------------------------------------
// Correlators and CHSH

double correlator(const Box &box, int x, int y) {
    double s = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            s += ((a ^ b) ? -1.0 : 1.0) * box.p(x, y, a, b);
        }
    }
    return s;
}

Rational correlator_exact(const Box &box, int x, int y) {
    Rational s = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (a ^ b) {
                s -= box.p_exact(x, y, a, b);
            } else {
                s += box.p_exact(x, y, a, b);
            }
        }
    }
    return s;
}

namespace {

// Signs of <A0B0>, <A0B1>, <A1B0>, <A1B1> in B_{alpha beta gamma}.
std::array<int, 4> chsh_signs(int alpha, int beta, int gamma) {
    auto sign = [](int bit) { return bit ? -1 : 1; };
    return {sign(gamma), sign(beta ^ gamma), sign(alpha ^ gamma), sign(alpha ^ beta ^ gamma ^ 1)};
}

}  // namespace

double chsh_value(const Box &box, int alpha, int beta, int gamma) {
    auto s = chsh_signs(alpha, beta, gamma);
    return s[0] * correlator(box, 0, 0) + s[1] * correlator(box, 0, 1) + s[2] * correlator(box, 1, 0) +
           s[3] * correlator(box, 1, 1);
}

Rational chsh_value_exact(const Box &box, int alpha, int beta, int gamma) {
    auto s = chsh_signs(alpha, beta, gamma);
    return s[0] * correlator_exact(box, 0, 0) + s[1] * correlator_exact(box, 0, 1) +
           s[2] * correlator_exact(box, 1, 0) + s[3] * correlator_exact(box, 1, 1);
}

ChshMax chsh_max(const Box &box) {
    ChshMax best{chsh_value(box, 0, 0, 0), 0, 0, 0};
    for (int code = 1; code < 8; ++code) {
        int al = (code >> 2) & 1, be = (code >> 1) & 1, ga = code & 1;
        double v = chsh_value(box, al, be, ga);
        if (v > best.value) {
            best = {v, al, be, ga};
        }
    }
    return best;
}

}  // namespace steerbox
