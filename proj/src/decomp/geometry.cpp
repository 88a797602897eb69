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

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <sstream>

#include "decomp/internal.hpp"
#include "steerbox/decomp.hpp"
#include "steerbox/error.hpp"

namespace steerbox {

namespace detail {

std::string fmt(const Rational &v) { return format_rational(v); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace detail

namespace {

using detail::Num;

template <class T>
struct Point {
    T q0;
    T q1;
};

template <class T>
SinglePartyBox make_single(const T &p0_given_0, const T &p0_given_1) {
    if constexpr (std::is_same_v<T, Rational>) {
        return SinglePartyBox::from_p0(p0_given_0, p0_given_1);
    } else {
        return SinglePartyBox::from_p0(std::clamp(p0_given_0, 0.0, 1.0), std::clamp(p0_given_1, 0.0, 1.0));
    }
}

template <class T>
bool in_disc(const Point<T> &r) {
    T z = 2 * r.q0 - 1;
    T x = 2 * r.q1 - 1;
    if constexpr (std::is_same_v<T, Rational>) {
        return z * z + x * x <= 1;
    } else {
        return z * z + x * x <= 1 + kQubitDiscSlack;
    }
}

template <class T>
HiddenVariableModel finish_model(Party untrusted, TrustedKind kind, std::vector<T> weights,
                                 std::vector<SinglePartyBox> u, std::vector<SinglePartyBox> t) {
    if constexpr (std::is_same_v<T, Rational>) {
        return make_model(untrusted, kind, std::move(weights), std::move(u), std::move(t));
    } else {
        double s = 0;
        for (double w : weights) s += w;
        for (double &w : weights) w /= s;
        return make_model(untrusted, kind, std::move(weights), std::move(u), std::move(t));
    }
}

template <class T>
TwoTermGeometry analyze(const detail::Conditionals<T> &c, Party untrusted, TrustedKind kind) {
    TwoTermGeometry g;
    std::vector<Point<T>> pts;
    std::vector<std::pair<int, int>> where;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a)
            if (c.present(a, x)) {
                pts.push_back({c.r0(a, x), c.r1(a, x)});
                where.emplace_back(a, x);
            }

    auto describe = [&]() {
        std::ostringstream os;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) os << ", ";
            os << "r(" << where[i].first << '|' << where[i].second << ")=(" << detail::fmt(pts[i].q0) << ", "
               << detail::fmt(pts[i].q1) << ')';
        }
        return os.str();
    };

    std::size_t far = 0;
    T best = T(0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        T dx = pts[i].q0 - pts[0].q0;
        T dy = pts[i].q1 - pts[0].q1;
        T d2 = dx * dx + dy * dy;
        if (d2 > best) {
            best = d2;
            far = i;
        }
    }

    if (Num<T>::zero(best)) {
        bool ok = kind == TrustedKind::Unconstrained || in_disc(pts[0]);
        g.single_term = ok;
        g.two_term = ok;
        g.reason = ok ? "all conditional trusted boxes coincide: " + describe()
                      : "the common conditional trusted box lies outside the qubit disc: " + describe();
        if (ok) {
            g.model = finish_model<T>(untrusted, kind, {T(1)}, {make_single<T>(c.m(0, 0), c.m(0, 1))},
                                      {make_single<T>(pts[0].q0, pts[0].q1)});
        }
        return g;
    }

    T dx = pts[far].q0 - pts[0].q0;
    T dy = pts[far].q1 - pts[0].q1;
    std::vector<T> s(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        T ex = pts[i].q0 - pts[0].q0;
        T ey = pts[i].q1 - pts[0].q1;
        T cross = dx * ey - dy * ex;
        bool on_line;
        if constexpr (std::is_same_v<T, Rational>) {
            on_line = cross == 0;
        } else {
            on_line = std::fabs(cross) <= kFloatTolerance * std::sqrt(best);
        }
        if (!on_line) {
            g.reason = "conditional trusted boxes are not collinear: " + describe();
            return g;
        }
        s[i] = (ex * dx + ey * dy) / best;
    }
    std::size_t hi = 0, lo = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (s[i] > s[hi]) hi = i;
        if (s[i] < s[lo]) lo = i;
    }
    if (kind == TrustedKind::QubitMub && (!in_disc(pts[hi]) || !in_disc(pts[lo]))) {
        g.reason = "an extreme conditional trusted box lies outside the qubit disc: " + describe();
        return g;
    }
    g.two_term = true;
    g.reason = "conditional trusted boxes are collinear: " + describe();

    T span = s[hi] - s[lo];
    std::array<std::array<T, 2>, 2> c0{};  // [x][a]
    std::array<std::array<T, 2>, 2> c1{};
    std::size_t k = 0;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            if (!c.present(a, x)) continue;
            T t = (s[k++] - s[lo]) / span;
            c0[x][a] = c.m(a, x) * t;
            c1[x][a] = c.m(a, x) - c0[x][a];
        }
    std::array<T, 2> w{};
    std::array<SinglePartyBox, 2> u{SinglePartyBox::uniform(), SinglePartyBox::uniform()};
    for (int grp = 0; grp < 2; ++grp) {
        const auto &cg = grp == 0 ? c0 : c1;
        T w0 = cg[0][0] + cg[0][1];
        T w1 = cg[1][0] + cg[1][1];
        if constexpr (std::is_same_v<T, Rational>) {
            if (w0 != w1) throw Error(ErrorCode::Signaling, "group weight depends on the untrusted input");
            w[grp] = w0;
            u[grp] = make_single<T>(cg[0][0] / w0, cg[1][0] / w1);
        } else {
            w[grp] = 0.5 * (w0 + w1);
            u[grp] = make_single<T>(cg[0][0] / w0, cg[1][0] / w1);
        }
    }
    g.model = finish_model<T>(untrusted, kind, {w[0], w[1]}, {u[0], u[1]},
                              {make_single<T>(pts[hi].q0, pts[hi].q1), make_single<T>(pts[lo].q0, pts[lo].q1)});
    return g;
}

}  // namespace

TwoTermGeometry two_term_geometry(const Box &box, Party untrusted, TrustedKind kind) {
    if (!is_nosignaling(box)) throw Error(ErrorCode::Signaling, "two-term test requires a no-signaling box");
    if (box.is_exact()) return analyze(detail::conditionals<Rational>(box, untrusted), untrusted, kind);
    return analyze(detail::conditionals<double>(box, untrusted), untrusted, kind);
}

}  // namespace steerbox
