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

// Reference computations written against Eigen only. They share no code with
// the library and back the frozen values in the unit and acceptance tests.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Cx = std::complex<double>;

inline Mat2 projector(const std::array<double, 3> &n, int outcome) {
    double s = outcome == 0 ? 1.0 : -1.0;
    Mat2 m;
    m << Cx(1 + s * n[2], 0), Cx(s * n[0], -s * n[1]), Cx(s * n[0], s * n[1]), Cx(1 - s * n[2], 0);
    return 0.5 * m;
}

inline Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

/// p(ab|xy) = Tr[(A_{a|x} x B_{b|y}) rho], flat index (x<<3)|(y<<2)|(a<<1)|b.
inline std::array<double, 16> born(const Mat4 &rho, const std::array<std::array<double, 3>, 2> &alice,
                                   const std::array<std::array<double, 3>, 2> &bob) {
    std::array<double, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    Mat4 op = kron(projector(alice[x], a), projector(bob[y], b));
                    p[(x << 3) | (y << 2) | (a << 1) | b] = (op * rho).trace().real();
                }
    return p;
}

inline Mat2 trace_a(const Mat4 &m) { return m.block<2, 2>(0, 0) + m.block<2, 2>(2, 2); }

inline Mat2 trace_b(const Mat4 &m) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return out;
}

template <class M>
double entropy(const M &rho) {
    Eigen::SelfAdjointEigenSolver<M> es(rho);
    double s = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double l = es.eigenvalues()(i);
        if (l > 1e-14) s -= l * std::log2(l);
    }
    return s;
}

inline std::array<double, 3> bloch(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Swaps the two qubits so that the measured party is always first.
inline Mat4 swap_parties(const Mat4 &rho) {
    Mat4 out;
    auto idx = [](int k) { return ((k & 1) << 1) | (k >> 1); };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(idx(r), idx(c)) = rho(r, c);
    return out;
}

/// sum_a p_a S(rho_{B|a}) with the first qubit measured along n.
inline double conditional_entropy(const Mat4 &rho, const std::array<double, 3> &n) {
    double h = 0;
    for (int a = 0; a < 2; ++a) {
        Mat4 op = kron(projector(n, a), Mat2::Identity());
        Mat2 post = trace_a(op * rho * op);
        double pa = post.trace().real();
        if (pa > 1e-14) h += pa * entropy<Mat2>(post / pa);
    }
    return h;
}

/// Discord with the first qubit measured: a 0.01 scan of the sphere, then a
/// 1e-4 grid over the +-0.02 neighbourhood of the best coarse cell.
inline double discord_first(const Mat4 &rho) {
    const double pi = std::acos(-1.0);
    double best = 1e300, bt = 0, bp = 0;
    for (double t = 0; t <= pi + 1e-12; t += 0.01)
        for (double p = 0; p < 2 * pi; p += 0.01) {
            double h = conditional_entropy(rho, bloch(t, p));
            if (h < best) best = h, bt = t, bp = p;
        }
    double ct = bt, cp = bp;
    for (int i = -200; i <= 200; ++i)
        for (int j = -200; j <= 200; ++j) {
            double t = ct + 1e-4 * i;
            double p = cp + 1e-4 * j;
            double h = conditional_entropy(rho, bloch(t, p));
            if (h < best) best = h;
        }
    Mat2 ra = trace_b(rho);
    return entropy<Mat2>(ra) - entropy<Mat4>(rho) + best;
}

/// Random two-qubit density matrix G G^dagger / Tr with Gaussian G.
inline Mat4 random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = Cx(g(rng), g(rng));
    Mat4 rho = m * m.adjoint();
    return rho / rho.trace().real();
}

inline std::array<double, 3> random_direction(std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::array<double, 3> n{g(rng), g(rng), g(rng)};
    double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto &v : n) v /= len;
    return n;
}

}  // namespace oracle
