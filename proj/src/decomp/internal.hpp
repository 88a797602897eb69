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
#include <cmath>
#include <string>
#include <type_traits>

#include "steerbox/box.hpp"

namespace steerbox::detail {

template <class T>
struct Num;

template <>
struct Num<Rational> {
    static bool zero(const Rational &v) { return v == 0; }
    static bool positive(const Rational &v) { return v > 0; }
};

template <>
struct Num<double> {
    static bool zero(double v) { return std::fabs(v) <= kFloatTolerance; }
    static bool positive(double v) { return v > kFloatTolerance; }
};

std::string fmt(const Rational &v);
std::string fmt(double v);

/// Box entry with the untrusted party first: (xu, yt, au, bt).
inline double oriented(const Box &box, Party untrusted, int xu, int yt, int au, int bt) {
    return untrusted == Party::Alice ? box.p(xu, yt, au, bt) : box.p(yt, xu, bt, au);
}

inline const Rational &oriented_exact(const Box &box, Party untrusted, int xu, int yt, int au, int bt) {
    return untrusted == Party::Alice ? box.p_exact(xu, yt, au, bt) : box.p_exact(yt, xu, bt, au);
}

template <class T>
T oriented_value(const Box &box, Party untrusted, int xu, int yt, int au, int bt) {
    if constexpr (std::is_same_v<T, Rational>) {
        return oriented_exact(box, untrusted, xu, yt, au, bt);
    } else {
        return oriented(box, untrusted, xu, yt, au, bt);
    }
}

/// Untrusted marginals m(a|x) and conditional trusted boxes
/// r(a,x) = (q(0|y=0), q(0|y=1)).
template <class T>
struct Conditionals {
    std::array<T, 4> marg{};
    std::array<T, 4> cond0{};
    std::array<T, 4> cond1{};
    std::array<bool, 4> has{};

    const T &m(int a, int x) const { return marg[static_cast<std::size_t>(x * 2 + a)]; }
    const T &r0(int a, int x) const { return cond0[static_cast<std::size_t>(x * 2 + a)]; }
    const T &r1(int a, int x) const { return cond1[static_cast<std::size_t>(x * 2 + a)]; }
    bool present(int a, int x) const { return has[static_cast<std::size_t>(x * 2 + a)]; }
};

template <class T>
Conditionals<T> conditionals(const Box &box, Party untrusted) {
    Conditionals<T> c;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            auto i = static_cast<std::size_t>(x * 2 + a);
            T p00 = oriented_value<T>(box, untrusted, x, 0, a, 0);
            T p01 = oriented_value<T>(box, untrusted, x, 0, a, 1);
            T p10 = oriented_value<T>(box, untrusted, x, 1, a, 0);
            T p11 = oriented_value<T>(box, untrusted, x, 1, a, 1);
            T m = p00 + p01;
            if constexpr (std::is_same_v<T, double>) m = 0.5 * (m + p10 + p11);
            c.marg[i] = m;
            c.has[i] = Num<T>::positive(m);
            if (c.has[i]) {
                c.cond0[i] = p00 / m;
                c.cond1[i] = p10 / m;
            }
        }
    return c;
}

}  // namespace steerbox::detail
