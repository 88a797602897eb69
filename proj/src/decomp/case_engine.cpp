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
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "decomp/internal.hpp"
#include "steerbox/decomp.hpp"
#include "steerbox/error.hpp"
#include "steerbox/simplex.hpp"

namespace steerbox {

namespace {

int strategy_output(int k, int x) { return (((k >> 1) & 1) * x) ^ (k & 1); }

std::string strategy_name(int k) { return "P_D^" + std::to_string((k >> 1) & 1) + std::to_string(k & 1); }

std::string group_name(const std::vector<int> &g) {
    std::string s = "{";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) s += ", ";
        s += strategy_name(g[i]);
    }
    return s + "}";
}

std::string entry(int x, int y, int a, int b) {
    std::ostringstream os;
    os << "P(" << a << b << '|' << x << y << ')';
    return os.str();
}

struct CaseSpec {
    std::string family;
    std::string label;
    std::vector<std::vector<int>> groups;
};

std::vector<CaseSpec> enumerate_cases() {
    std::vector<CaseSpec> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            out.push_back({"pair", strategy_name(i) + "+" + strategy_name(j), {{i}, {j}}});
    const std::vector<std::vector<std::vector<int>>> d4 = {
        {{0, 1, 2}, {3}}, {{0, 1, 3}, {2}}, {{0, 2, 3}, {1}}, {{1, 2, 3}, {0}},
        {{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}},
    };
    char letter = 'a';
    for (const auto &g : d4) out.push_back({"d4", std::string("(") + letter++ + ")", g});
    const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    letter = 'a';
    for (const auto &t : triples) {
        out.push_back({"d3", std::string("(") + letter++ + ")", {{t[0], t[1]}, {t[2]}}});
        out.push_back({"d3", std::string("(") + letter++ + ")", {{t[1], t[2]}, {t[0]}}});
        out.push_back({"d3", std::string("(") + letter++ + ")", {{t[0], t[2]}, {t[1]}}});
    }
    return out;
}

/// Zero entries of the box force trusted-box entries of every group holding
/// a contributing strategy to vanish; report the contradictions this causes.
std::vector<std::string> propagate_zeros(const Box &box, Party untrusted, const CaseSpec &spec) {
    std::vector<std::string> trace;
    std::map<std::tuple<int, int, int>, std::vector<std::string>> zero;  // (g, y, b) -> sources
    auto contributors = [&](int x, int a) {
        std::vector<int> out;
        for (int g = 0; g < static_cast<int>(spec.groups.size()); ++g)
            for (int k : spec.groups[static_cast<std::size_t>(g)])
                if (strategy_output(k, x) == a) out.push_back(g);
        return out;
    };
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    if (detail::oriented_exact(box, untrusted, x, y, a, b) != 0) continue;
                    for (int g : contributors(x, a)) {
                        auto &src = zero[{g, y, b}];
                        std::string e = entry(x, y, a, b);
                        if (std::find(src.begin(), src.end(), e) == src.end()) {
                            src.push_back(e);
                            trace.push_back(e + " = 0 forces Q_" + std::to_string(g) + "(" + std::to_string(b) +
                                            "|" + std::to_string(y) + ") = 0 for group " +
                                            group_name(spec.groups[static_cast<std::size_t>(g)]));
                        }
                    }
                }
    std::size_t derivations = trace.size();
    auto join = [](const std::vector<std::string> &v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += " and ";
            s += v[i] + " = 0";
        }
        return s;
    };
    for (int g = 0; g < static_cast<int>(spec.groups.size()); ++g)
        for (int y = 0; y < 2; ++y) {
            auto z0 = zero.find({g, y, 0});
            auto z1 = zero.find({g, y, 1});
            if (z0 != zero.end() && z1 != zero.end()) {
                std::vector<std::string> src = z0->second;
                src.insert(src.end(), z1->second.begin(), z1->second.end());
                trace.push_back("if we want to satisfy " + join(src) + ", then Q_" + std::to_string(g) + "(0|" +
                                std::to_string(y) + ") = Q_" + std::to_string(g) + "(1|" + std::to_string(y) +
                                ") = 0, contradicting normalization");
            }
        }
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const Rational &v = detail::oriented_exact(box, untrusted, x, y, a, b);
                    if (v == 0) continue;
                    auto gs = contributors(x, a);
                    std::vector<std::string> src;
                    bool forced = true;
                    for (int g : gs) {
                        auto it = zero.find({g, y, b});
                        if (it == zero.end()) {
                            forced = false;
                            break;
                        }
                        for (const auto &s : it->second)
                            if (std::find(src.begin(), src.end(), s) == src.end()) src.push_back(s);
                    }
                    if (!forced) continue;
                    if (gs.empty()) {
                        trace.push_back("no strategy in the case outputs a=" + std::to_string(a) + " on x=" +
                                        std::to_string(x) + ", so " + entry(x, y, a, b) + " becomes 0, but " +
                                        entry(x, y, a, b) + " = " + format_rational(v));
                    } else {
                        trace.push_back("if we want to satisfy " + join(src) + ", then " + entry(x, y, a, b) +
                                        " also becomes 0, but " + entry(x, y, a, b) + " = " + format_rational(v));
                    }
                }
    if (trace.size() == derivations) trace.clear();
    return trace;
}

struct LineData {
    Rational p0x, p0y, dx, dy;
    std::array<Rational, 4> s{};  // by x*2+a, present only
    Rational s_min, s_max, lower, upper;
};

std::optional<LineData> fit_line(const detail::Conditionals<Rational> &c) {
    std::vector<int> idx;
    for (int i = 0; i < 4; ++i)
        if (c.has[static_cast<std::size_t>(i)]) idx.push_back(i);
    LineData L;
    L.p0x = c.cond0[static_cast<std::size_t>(idx[0])];
    L.p0y = c.cond1[static_cast<std::size_t>(idx[0])];
    Rational best = 0;
    for (int i : idx) {
        Rational dx = c.cond0[static_cast<std::size_t>(i)] - L.p0x;
        Rational dy = c.cond1[static_cast<std::size_t>(i)] - L.p0y;
        if (dx * dx + dy * dy > best) {
            best = dx * dx + dy * dy;
            L.dx = dx;
            L.dy = dy;
        }
    }
    if (best == 0) return std::nullopt;
    bool first = true;
    for (int i : idx) {
        Rational ex = c.cond0[static_cast<std::size_t>(i)] - L.p0x;
        Rational ey = c.cond1[static_cast<std::size_t>(i)] - L.p0y;
        if (L.dx * ey - L.dy * ex != 0) throw std::logic_error("not collinear");
        Rational s = (ex * L.dx + ey * L.dy) / best;
        L.s[static_cast<std::size_t>(i)] = s;
        if (first || s < L.s_min) L.s_min = s;
        if (first || s > L.s_max) L.s_max = s;
        first = false;
    }
    // Parameter range keeping P0 + s d inside the unit square.
    bool bounded = false;
    for (auto [p, d] : {std::pair{L.p0x, L.dx}, std::pair{L.p0y, L.dy}}) {
        if (d == 0) continue;
        Rational lo = (0 - p) / d, hi = (1 - p) / d;
        if (lo > hi) std::swap(lo, hi);
        if (!bounded || lo > L.lower) L.lower = lo;
        if (!bounded || hi < L.upper) L.upper = hi;
        bounded = true;
    }
    return L;
}

struct CaseSolution {
    bool feasible = false;
    std::optional<HiddenVariableModel> model;
    Rational margin;
};

std::vector<int> flatten(const std::vector<std::vector<int>> &groups) {
    std::vector<int> s;
    for (const auto &g : groups) s.insert(s.end(), g.begin(), g.end());
    return s;
}

CaseSolution solve_single_point(const detail::Conditionals<Rational> &c, Party untrusted,
                                const std::vector<std::vector<int>> &groups) {
    auto strategies = flatten(groups);
    const std::size_t k = strategies.size();
    // Variables: w (k), eps, slack (k).
    const std::size_t n = 2 * k + 1;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            std::vector<Rational> row(n, 0);
            for (std::size_t l = 0; l < k; ++l)
                if (strategy_output(strategies[l], x) == a) row[l] = 1;
            A.push_back(row);
            b.push_back(c.m(a, x));
        }
    for (std::size_t l = 0; l < k; ++l) {
        std::vector<Rational> row(n, 0);
        row[l] = 1;
        row[k] = -1;
        row[k + 1 + l] = -1;
        A.push_back(row);
        b.push_back(0);
    }
    std::vector<Rational> cost(n, 0);
    cost[k] = -1;
    auto res = lp::minimize<Rational>(A, b, cost);
    CaseSolution sol;
    if (res.status != lp::Status::Optimal) return sol;
    sol.margin = res.x[k];
    if (sol.margin <= 0) return sol;
    sol.feasible = true;
    std::size_t pi = 0;
    while (!c.has[pi]) ++pi;
    auto q = SinglePartyBox::from_p0(c.cond0[pi], c.cond1[pi]);
    std::vector<Rational> w(res.x.begin(), res.x.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<SinglePartyBox> u, t;
    for (int s : strategies) {
        u.push_back(SinglePartyBox::deterministic((s >> 1) & 1, s & 1));
        t.push_back(q);
    }
    sol.model = make_model(untrusted, TrustedKind::Unconstrained, std::move(w), std::move(u), std::move(t));
    return sol;
}

CaseSolution solve_on_line(const detail::Conditionals<Rational> &c, const LineData &L, Party untrusted,
                           const std::vector<int> &g0, const std::vector<int> &g1) {
    std::vector<int> strategies = g0;
    strategies.insert(strategies.end(), g1.begin(), g1.end());
    const std::size_t k = strategies.size();
    // Variables: alpha, beta+, beta-, w (k), eps, four slacks, weight slacks (k).
    const std::size_t W = 3, E = 3 + k, S = 4 + k, WS = 8 + k, n = 8 + 2 * k;
    auto in_g0 = [&](std::size_t l) { return l < g0.size(); };
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (int x = 0; x < 2; ++x)
        for (int a = 0; a < 2; ++a) {
            auto i = static_cast<std::size_t>(x * 2 + a);
            if (!c.has[i]) {
                std::vector<Rational> row(n, 0);
                for (std::size_t l = 0; l < k; ++l)
                    if (strategy_output(strategies[l], x) == a) row[W + l] = 1;
                A.push_back(row);
                b.push_back(0);
                continue;
            }
            const Rational &m = c.marg[i];
            for (int grp = 0; grp < 2; ++grp) {
                std::vector<Rational> row(n, 0);
                for (std::size_t l = 0; l < k; ++l)
                    if (in_g0(l) == (grp == 0) && strategy_output(strategies[l], x) == a) row[W + l] = 1;
                Rational sign = grp == 0 ? 1 : -1;
                row[0] = -sign * m * L.s[i];
                row[1] = sign * m;
                row[2] = -sign * m;
                A.push_back(row);
                b.push_back(grp == 0 ? Rational(0) : m);
            }
        }
    auto ineq = [&](Rational ca, Rational cb, std::size_t slack, Rational rhs) {
        std::vector<Rational> row(n, 0);
        row[0] = ca;
        row[1] = cb;
        row[2] = -cb;
        row[S + slack] = 1;
        A.push_back(row);
        b.push_back(rhs);
    };
    ineq(-L.s_min, 1, 0, 0);   // beta <= alpha s_min
    ineq(L.s_max, -1, 1, 1);   // alpha s_max - beta <= 1
    ineq(L.lower, -1, 2, 0);   // alpha L - beta <= 0
    ineq(-L.upper, 1, 3, -1);  // beta + 1 - alpha U <= 0
    for (std::size_t l = 0; l < k; ++l) {
        std::vector<Rational> row(n, 0);
        row[W + l] = 1;
        row[E] = -1;
        row[WS + l] = -1;
        A.push_back(row);
        b.push_back(0);
    }
    std::vector<Rational> cost(n, 0);
    cost[E] = -1;
    auto res = lp::minimize<Rational>(A, b, cost);
    CaseSolution sol;
    if (res.status != lp::Status::Optimal) return sol;
    sol.margin = res.x[E];
    if (sol.margin <= 0) return sol;
    sol.feasible = true;
    Rational alpha = res.x[0];
    Rational beta = res.x[1] - res.x[2];
    Rational sigma1 = beta / alpha;
    Rational sigma0 = (beta + 1) / alpha;
    auto q0 = SinglePartyBox::from_p0(L.p0x + sigma0 * L.dx, L.p0y + sigma0 * L.dy);
    auto q1 = SinglePartyBox::from_p0(L.p0x + sigma1 * L.dx, L.p0y + sigma1 * L.dy);
    std::vector<Rational> w;
    std::vector<SinglePartyBox> u, t;
    for (std::size_t l = 0; l < k; ++l) {
        w.push_back(res.x[W + l]);
        u.push_back(SinglePartyBox::deterministic((strategies[l] >> 1) & 1, strategies[l] & 1));
        t.push_back(in_g0(l) ? q0 : q1);
    }
    sol.model = make_model(untrusted, TrustedKind::Unconstrained, std::move(w), std::move(u), std::move(t));
    return sol;
}

}  // namespace

CaseReport grouping_case_engine(const Box &box, Party untrusted) {
    if (!box.is_exact()) throw Error(ErrorCode::NonRational, "the case engine needs exact rational entries");
    if (!is_nosignaling(box)) throw Error(ErrorCode::Signaling, "the case engine needs a no-signaling box");
    auto c = detail::conditionals<Rational>(box, untrusted);
    CaseReport report;
    report.untrusted = untrusted;

    std::optional<LineData> line;
    bool collinear = true;
    try {
        line = fit_line(c);
    } catch (const std::logic_error &) {
        collinear = false;
    }
    report.single_term = collinear && !line;

    for (const auto &spec : enumerate_cases()) {
        CaseVerdict v;
        v.family = spec.family;
        v.label = spec.label;
        v.groups = spec.groups;
        v.strategies = flatten(spec.groups);
        v.trace = propagate_zeros(box, untrusted, spec);
        CaseSolution sol;
        if (collinear && !line) {
            sol = solve_single_point(c, untrusted, spec.groups);
        } else if (collinear) {
            sol = solve_on_line(c, *line, untrusted, spec.groups[0], spec.groups[1]);
            if (!sol.feasible) sol = solve_on_line(c, *line, untrusted, spec.groups[1], spec.groups[0]);
        }
        v.feasible = sol.feasible;
        if (sol.feasible) {
            if (!(sol.model->reconstruct() == box)) throw std::logic_error("case certificate does not reconstruct");
            v.model = sol.model;
            v.trace.clear();
            v.trace.push_back("feasible: exact weights found with every strategy weight positive");
        } else if (v.trace.empty()) {
            if (!collinear) {
                v.trace.push_back(
                    "the conditional trusted boxes r(a|x) are not collinear, so no two trusted boxes mix into all "
                    "of them");
            } else {
                v.trace.push_back(
                    "zero entries force no contradiction; the exact linear system in the weights and the trusted "
                    "boxes has no solution with every strategy weight positive");
            }
        }
        report.cases.push_back(std::move(v));
    }
    return report;
}

}  // namespace steerbox
