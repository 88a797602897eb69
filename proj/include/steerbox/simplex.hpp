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

#include <cmath>
#include <cstddef>
#include <vector>

#include "steerbox/rational.hpp"

namespace steerbox::lp {

template <class T>
struct Traits;

template <>
struct Traits<Rational> {
    static bool negative(const Rational &v) { return v < 0; }
    static bool positive(const Rational &v) { return v > 0; }
    static bool zero(const Rational &v) { return v == 0; }
};

template <>
struct Traits<double> {
    static constexpr double kEps = 1e-9;
    static bool negative(double v) { return v < -kEps; }
    static bool positive(double v) { return v > kEps; }
    static bool zero(double v) { return std::fabs(v) <= kEps; }
};

enum class Status { Optimal, Infeasible, Unbounded };

template <class T>
struct Result {
    Status status = Status::Infeasible;
    std::vector<T> x;
    T objective{};
    int pivots = 0;
};

/// Minimizes c.x subject to A x = b, x >= 0 with the two-phase tableau simplex
/// and Bland's rule (smallest entering index, smallest leaving basic index on
/// ratio ties). Deterministic; exact when T is Rational.
template <class T>
Result<T> minimize(std::vector<std::vector<T>> a, std::vector<T> b, const std::vector<T> &c) {
    using Tr = Traits<T>;
    const std::size_t n = c.size();
    std::size_t m = a.size();
    Result<T> result;

    for (std::size_t i = 0; i < m; ++i) {
        if (Tr::negative(b[i])) {
            for (auto &v : a[i]) v = -v;
            b[i] = -b[i];
        }
    }

    // Tableau columns: n structural, m artificial.
    const std::size_t cols = n + m;
    std::vector<std::vector<T>> t(m, std::vector<T>(cols, T(0)));
    std::vector<T> rhs = b;
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = T(1);
        basis[i] = n + i;
    }

    auto pivot = [&](std::size_t row, std::size_t col) {
        T inv = T(1) / t[row][col];
        for (auto &v : t[row]) v *= inv;
        rhs[row] *= inv;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == row || Tr::zero(t[i][col])) {
                if (i != row) t[i][col] = T(0);
                continue;
            }
            T f = t[i][col];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[row][j];
            rhs[i] -= f * rhs[row];
        }
        basis[row] = col;
        ++result.pivots;
    };

    // Returns false when unbounded.
    auto run = [&](const std::vector<T> &cost, std::size_t allowed_cols) {
        for (;;) {
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                T r = cost[j];
                for (std::size_t i = 0; i < t.size(); ++i) r -= cost[basis[i]] * t[i][j];
                if (Tr::negative(r)) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed_cols) return true;
            std::size_t leave = t.size();
            T best{};
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (!Tr::positive(t[i][enter])) continue;
                T ratio = rhs[i] / t[i][enter];
                if (leave == t.size() || ratio < best || (!(best < ratio) && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == t.size()) return false;
            pivot(leave, enter);
        }
    };

    std::vector<T> phase1(cols, T(0));
    for (std::size_t j = n; j < cols; ++j) phase1[j] = T(1);
    run(phase1, cols);
    T infeasibility(0);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (basis[i] >= n) infeasibility += rhs[i];
    if (Tr::positive(infeasibility)) {
        result.status = Status::Infeasible;
        return result;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < t.size();) {
        if (basis[i] < n) {
            ++i;
            continue;
        }
        std::size_t col = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!Tr::zero(t[i][j])) {
                col = j;
                break;
            }
        }
        if (col < n) {
            pivot(i, col);
            ++i;
        } else {
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(i));
            rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(i));
            basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    std::vector<T> phase2(cols, T(0));
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    if (!run(phase2, n)) {
        result.status = Status::Unbounded;
        return result;
    }

    result.status = Status::Optimal;
    result.x.assign(n, T(0));
    for (std::size_t i = 0; i < t.size(); ++i) result.x[basis[i]] = rhs[i];
    result.objective = T(0);
    for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    return result;
}

}  // namespace steerbox::lp
