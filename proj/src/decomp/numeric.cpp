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
#include <limits>
#include <random>
#include <thread>

#include "decomp/internal.hpp"
#include "steerbox/decomp.hpp"
#include "steerbox/error.hpp"

namespace steerbox {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Euclidean projection onto the probability simplex.
void project_simplex(const double *in, double *out, int n) {
    std::vector<double> u(in, in + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double css = 0, theta = 0;
    for (int i = 0; i < n; ++i) {
        css += u[static_cast<std::size_t>(i)];
        double t = (css - 1) / (i + 1);
        if (u[static_cast<std::size_t>(i)] - t > 0) theta = t;
    }
    for (int i = 0; i < n; ++i) out[i] = std::max(in[i] - theta, 0.0);
}

struct Problem {
    int d;
    bool qubit;
    std::array<double, 16> target;  // oriented: (xu, yt, au, bt)

    int size() const { return 5 * d; }

    /// Weights, u(0|x), t(0|y) laid out as [w(d) | u(2d) | t(2d)].
    void decode(const std::vector<double> &p, std::vector<double> &out) const {
        out.resize(p.size());
        project_simplex(p.data(), out.data(), d);
        for (int i = d; i < 3 * d; ++i) out[static_cast<std::size_t>(i)] = std::clamp(p[static_cast<std::size_t>(i)], 0.0, 1.0);
        for (int l = 0; l < d; ++l) {
            double &t0 = out[static_cast<std::size_t>(3 * d + 2 * l)];
            double &t1 = out[static_cast<std::size_t>(3 * d + 2 * l + 1)];
            t0 = std::clamp(p[static_cast<std::size_t>(3 * d + 2 * l)], 0.0, 1.0);
            t1 = std::clamp(p[static_cast<std::size_t>(3 * d + 2 * l + 1)], 0.0, 1.0);
            if (qubit) {
                double z = 2 * t0 - 1, x = 2 * t1 - 1;
                double r = std::sqrt(z * z + x * x);
                if (r > 1) {
                    t0 = (z / r + 1) / 2;
                    t1 = (x / r + 1) / 2;
                }
            }
        }
    }

    double ssr(const std::vector<double> &q) const {
        std::array<double, 16> m{};
        for (int l = 0; l < d; ++l) {
            double w = q[static_cast<std::size_t>(l)];
            if (w == 0) continue;
            for (int x = 0; x < 2; ++x) {
                double u0 = q[static_cast<std::size_t>(d + 2 * l + x)];
                for (int y = 0; y < 2; ++y) {
                    double t0 = q[static_cast<std::size_t>(3 * d + 2 * l + y)];
                    double ua[2] = {u0, 1 - u0};
                    double tb[2] = {t0, 1 - t0};
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) m[box_index(x, y, a, b)] += w * ua[a] * tb[b];
                }
            }
        }
        double s = 0;
        for (std::size_t i = 0; i < 16; ++i) s += (m[i] - target[i]) * (m[i] - target[i]);
        return s;
    }
};

struct StartResult {
    double ssr = std::numeric_limits<double>::infinity();
    std::vector<double> params;
    long long evaluations = 0;
};

StartResult nelder_mead(const Problem &prob, std::vector<double> x0, const SolverConfig &cfg, double stop_ssr) {
    const int n = prob.size();
    std::vector<double> scratch;
    StartResult res;
    auto f = [&](const std::vector<double> &p) {
        ++res.evaluations;
        prob.decode(p, scratch);
        return prob.ssr(scratch);
    };

    double step = 0.1;
    double best_prev = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < 6; ++restart) {
        std::vector<std::vector<double>> v(static_cast<std::size_t>(n + 1), x0);
        std::vector<double> fv(static_cast<std::size_t>(n + 1));
        for (int i = 0; i < n; ++i) {
            auto &pt = v[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)];
            pt += pt + step > 1 ? -step : step;
        }
        for (int i = 0; i <= n; ++i) fv[static_cast<std::size_t>(i)] = f(v[static_cast<std::size_t>(i)]);

        std::vector<std::size_t> order(static_cast<std::size_t>(n + 1));
        std::vector<double> c(static_cast<std::size_t>(n)), xr(static_cast<std::size_t>(n)),
            xe(static_cast<std::size_t>(n)), xc(static_cast<std::size_t>(n));
        for (;;) {
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            const auto &best = v[order[0]];
            double size = 0;
            for (int i = 1; i <= n; ++i)
                for (int j = 0; j < n; ++j)
                    size = std::max(size, std::fabs(v[order[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)] -
                                                    best[static_cast<std::size_t>(j)]));
            if (size < cfg.simplex_tolerance || fv[order[0]] <= stop_ssr || res.evaluations >= cfg.max_evaluations) break;

            std::size_t worst = order[static_cast<std::size_t>(n)];
            std::size_t second = order[static_cast<std::size_t>(n - 1)];
            std::fill(c.begin(), c.end(), 0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] += v[order[static_cast<std::size_t>(i)]][static_cast<std::size_t>(j)] / n;
            for (int j = 0; j < n; ++j) xr[static_cast<std::size_t>(j)] = 2 * c[static_cast<std::size_t>(j)] - v[worst][static_cast<std::size_t>(j)];
            double fr = f(xr);
            if (fr < fv[order[0]]) {
                for (int j = 0; j < n; ++j) xe[static_cast<std::size_t>(j)] = 3 * c[static_cast<std::size_t>(j)] - 2 * v[worst][static_cast<std::size_t>(j)];
                double fe = f(xe);
                if (fe < fr) {
                    v[worst] = xe;
                    fv[worst] = fe;
                } else {
                    v[worst] = xr;
                    fv[worst] = fr;
                }
                continue;
            }
            if (fr < fv[second]) {
                v[worst] = xr;
                fv[worst] = fr;
                continue;
            }
            bool outside = fr < fv[worst];
            for (int j = 0; j < n; ++j) {
                double toward = outside ? xr[static_cast<std::size_t>(j)] : v[worst][static_cast<std::size_t>(j)];
                xc[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)] + 0.5 * (toward - c[static_cast<std::size_t>(j)]);
            }
            double fc = f(xc);
            if (fc < std::min(fr, fv[worst])) {
                v[worst] = xc;
                fv[worst] = fc;
                continue;
            }
            for (int i = 1; i <= n; ++i) {
                auto &pt = v[order[static_cast<std::size_t>(i)]];
                for (int j = 0; j < n; ++j) pt[static_cast<std::size_t>(j)] = best[static_cast<std::size_t>(j)] + 0.5 * (pt[static_cast<std::size_t>(j)] - best[static_cast<std::size_t>(j)]);
                fv[order[static_cast<std::size_t>(i)]] = f(pt);
            }
        }
        std::size_t b = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
        if (fv[b] < res.ssr) {
            res.ssr = fv[b];
            res.params = v[b];
        }
        if (res.ssr <= stop_ssr || res.evaluations >= cfg.max_evaluations) break;
        if (best_prev - res.ssr <= 1e-9 * best_prev) break;
        best_prev = res.ssr;
        x0 = res.params;
        step = 0.05;
    }
    return res;
}

}  // namespace

NumericSearch multistart_search(const Box &box, int d, Party untrusted, TrustedKind kind, const SolverConfig &cfg) {
    validate_config(cfg);
    if (d < 1) throw Error(ErrorCode::Config, "hidden-variable dimension must be at least 1");
    Problem prob{d, kind == TrustedKind::QubitMub, {}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) prob.target[box_index(x, y, a, b)] = detail::oriented(box, untrusted, x, y, a, b);

    NumericSearch out;
    out.stats.seed = cfg.seed;
    const double stop_ssr = cfg.feasible_residual * cfg.feasible_residual * 1e-4;
    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());

    std::vector<StartResult> results(static_cast<std::size_t>(cfg.starts));
    auto run_start = [&](int i) {
        std::mt19937_64 rng(splitmix64(cfg.seed + static_cast<std::uint64_t>(i)));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x0(static_cast<std::size_t>(prob.size()));
        for (auto &v : x0) v = unit(rng);
        results[static_cast<std::size_t>(i)] = nelder_mead(prob, std::move(x0), cfg, stop_ssr);
    };

    double best = std::numeric_limits<double>::infinity();
    int done = 0;
    for (int lo = 0; lo < cfg.starts; lo += cfg.batch) {
        int hi = std::min(cfg.starts, lo + cfg.batch);
        if (threads <= 1) {
            for (int i = lo; i < hi; ++i) run_start(i);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    for (int i = lo + static_cast<int>(t); i < hi; i += static_cast<int>(threads)) run_start(i);
                });
            for (auto &th : pool) th.join();
        }
        for (int i = lo; i < hi; ++i) {
            const auto &r = results[static_cast<std::size_t>(i)];
            out.stats.evaluations += r.evaluations;
            if (r.ssr < best) {
                best = r.ssr;
                out.stats.best_start = i;
            }
        }
        done = hi;
        if (std::sqrt(best) <= cfg.feasible_residual) break;
    }
    out.stats.starts = done;
    out.stats.min_residual = std::sqrt(best);
    if (out.stats.best_start < 0) return out;

    std::vector<double> q;
    prob.decode(results[static_cast<std::size_t>(out.stats.best_start)].params, q);
    std::vector<double> w(q.begin(), q.begin() + d);
    std::vector<SinglePartyBox> u, t;
    for (int l = 0; l < d; ++l) {
        u.push_back(SinglePartyBox::from_p0(q[static_cast<std::size_t>(d + 2 * l)], q[static_cast<std::size_t>(d + 2 * l + 1)]));
        t.push_back(SinglePartyBox::from_p0(q[static_cast<std::size_t>(3 * d + 2 * l)], q[static_cast<std::size_t>(3 * d + 2 * l + 1)]));
    }
    out.best = make_model(untrusted, kind, std::move(w), std::move(u), std::move(t));
    return out;
}

}  // namespace steerbox
