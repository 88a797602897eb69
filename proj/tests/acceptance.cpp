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

// Acceptance gate: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failing criteria (capped at 100).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "steerbox/certify.hpp"
#include "steerbox/decomp.hpp"
#include "steerbox/discord.hpp"
#include "steerbox/quantum.hpp"

using namespace steerbox;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n) / d; }

const std::array<Measurement, 2> kZX{Measurement::sigma_z(), Measurement::sigma_x()};

// Rows (x,y) = 00, 01, 10, 11; columns (a,b) = 00, 01, 10, 11; eighths.
const long long kTable[4][4] = {{4, 2, 0, 2}, {3, 3, 1, 1}, {2, 4, 2, 0}, {3, 3, 1, 1}};

Box frozen_table() {
    std::array<Rational, 16> p{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) p[box_index(x, y, a, b)] = R(kTable[x * 2 + y][a * 2 + b], 8);
    return Box::from_rational(p);
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int n, const std::string &title, double budget_s, const std::function<Outcome()> &body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = budget_s <= 0 || s < budget_s;
    bool ok = o.pass && in_time;
    if (!ok) ++failures;
    char timing[96];
    if (budget_s > 0) {
        std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", s, budget_s);
    } else {
        std::snprintf(timing, sizeof timing, "%.2fs", s);
    }
    std::printf("[%s] criterion %d: %s | %s | %s\n", ok ? "PASS" : "FAIL", n, title.c_str(), o.detail.c_str(),
                timing);
    std::fflush(stdout);
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SolverConfig defaults() { return SolverConfig{}; }

Box random_exact_local(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(0, 6);
    std::vector<Rational> w(16);
    Rational s = 0;
    for (auto &x : w) s += (x = pick(rng) < 4 ? 0 : pick(rng));
    if (s == 0) w[rng() % 16] = s = 1;
    for (auto &x : w) x /= s;
    auto v = deterministic_boxes();
    return mixture(v, w);
}

}  // namespace

int main() {
    const Box table = frozen_table();
    const SolverConfig cfg = defaults();

    criterion(1, "table reproduction (exact, all 16 entries)", 1, [&] {
        Box b = born_box(one_way_discord_state(), kZX, kZX);
        int match = 0;
        for (std::size_t i = 0; i < 16; ++i) match += b.is_exact() && b.exact_values()[i] == table.exact_values()[i];
        return Outcome{match == 16, std::to_string(match) + "/16 entries equal"};
    });

    criterion(2, "three-term model reconstructs exactly, trusted boxes qubit-realizable", 1, [&] {
        std::vector<SinglePartyBox> alice{SinglePartyBox::deterministic(0, 0), SinglePartyBox::deterministic(1, 0),
                                          SinglePartyBox::deterministic(1, 1)};
        std::vector<SinglePartyBox> bob{SinglePartyBox::uniform(), SinglePartyBox::from_p0(R(1), R(1, 2)),
                                        SinglePartyBox::from_p0(R(0), R(1, 2))};
        auto m = make_model(Party::Alice, TrustedKind::QubitMub, std::vector<Rational>{R(1, 2), R(1, 4), R(1, 4)},
                            alice, bob);
        bool exact = m.reconstruct() == table;
        bool disc = std::all_of(bob.begin(), bob.end(), [](const auto &q) { return qubit_mub_realizable(q); });
        return Outcome{exact && disc, std::string("exact=") + (exact ? "yes" : "no") +
                                          " qubit-realizable=" + (disc ? "3/3" : "no")};
    });

    criterion(3, "exact case analysis: 6 pair + 7 d4 + 12 d3 cases infeasible with traces", 10, [&] {
        auto r = grouping_case_engine(table, Party::Alice);
        std::size_t infeasible = 0, traced = 0;
        bool phrase = false;
        for (const auto &c : r.cases) {
            infeasible += !c.feasible;
            traced += !c.trace.empty();
            for (const auto &l : c.trace)
                phrase = phrase ||
                         l.find("if we want to satisfy P(10|00) = 0, then P(00|00) also becomes 0") != std::string::npos;
        }
        bool ok = r.count("pair") == 6 && r.count("d4") == 7 && r.count("d3") == 12 && infeasible == 25 &&
                  traced == 25 && phrase;
        return Outcome{ok, std::to_string(infeasible) + "/25 infeasible, " + std::to_string(traced) +
                               "/25 traced, quoted step " + (phrase ? "found" : "missing")};
    });

    criterion(4, "numeric d=2 Alice-untrusted residual > 1e-6 (2000 starts); d=3 certificate < 1e-10", 120, [&] {
        SolverConfig c = cfg;
        c.starts = 2000;
        auto m2 = multistart_search(table, 2, Party::Alice, TrustedKind::QubitMub, c);
        auto r3 = restricted_feasibility(table, 3, Party::Alice, TrustedKind::QubitMub, c);
        bool d2 = m2.stats.min_residual > 1e-6;
        bool d3 = r3.feasible() && r3.certificate_error < 1e-10;
        return Outcome{d2 && d3, "d=2 min residual " + fmt("%.3e", m2.stats.min_residual) + " over " +
                                     std::to_string(m2.stats.starts) + " starts; d=3 " + verdict_name(r3.verdict) +
                                     " error " + fmt("%.3e", r3.certificate_error)};
    });

    criterion(5, "Bob-untrusted two-term model; not superlocal; SDI steerable A->B only", 0, [&] {
        auto r = restricted_feasibility(table, 2, Party::Bob, TrustedKind::QubitMub, cfg);
        bool model = r.feasible() && r.certificate && r.certificate->reconstruct() == table;
        auto sl = is_superlocal(table, 2, 2, cfg);
        auto rep = classify(table, 2, 2, cfg);
        bool one_way = rep.directions[0].sdi_steerable && !rep.directions[1].sdi_steerable;
        bool ok = model && sl.holds == Tri::No && one_way;
        std::string regions;
        for (const auto &g : rep.regions) regions += (regions.empty() ? "" : ",") + g;
        return Outcome{ok, std::string("two-term exact=") + (model ? "yes" : "no") +
                               " superlocal=" + tri_name(sl.holds) +
                               " SDI A->B=" + (rep.directions[0].sdi_steerable ? "yes" : "no") +
                               " B->A=" + (rep.directions[1].sdi_steerable ? "yes" : "no") +
                               " regions=" + (regions.empty() ? "undetermined" : regions)};
    });

    criterion(6, "discord B->A < 1e-6, A->B > 0.05, A->B within 1e-4 of 1e-4 grid oracle", 30, [&] {
        auto st = one_way_discord_state();
        double ab = discord(st, Direction::AliceToBob).discord;
        double ba = discord(st, Direction::BobToAlice).discord;
        double ref = oracle::discord_first(st.matrix());
        bool ok = std::fabs(ba) < 1e-6 && ab > 0.05 && std::fabs(ab - ref) <= 1e-4;
        return Outcome{ok, "A->B " + fmt("%.9f", ab) + " oracle " + fmt("%.9f", ref) + " B->A " + fmt("%.2e", ba)};
    });

    criterion(7, "CHSH/BB84 family thresholds (CHSH tol 1e-9; residual > 1e-6 at d=2, < 1e-10 at d=4)", 0, [&] {
        std::string bad;
        for (double v : {0.2, 0.5, 0.707, 0.8, 0.9, 1.0}) {
            Box b = noisy_chsh_box(v);
            bool want_local = v < 0.75;
            if (local_membership(b).feasible() != want_local) bad += " chsh-local(" + fmt("%g", v) + ")";
            if (std::fabs(chsh_max(b).value - 2 * std::sqrt(2.0) * v) > 1e-9) bad += " chsh-max(" + fmt("%g", v) + ")";
        }
        for (double v : {0.25, 0.5, 0.707, 1.0}) {
            Box b = bb84_box(v);
            double c = chsh_max(b).value;
            if (!is_nosignaling(b) || std::fabs(c - 2 * v) > 1e-9 || c > 2 + 1e-12) bad += " bb84(" + fmt("%g", v) + ")";
        }
        for (double v : {0.5, 0.707}) {
            for (Party p : {Party::Alice, Party::Bob}) {
                auto r2 = restricted_feasibility(bb84_box(v), 2, p, TrustedKind::QubitMub, cfg);
                if (!r2.residual || r2.residual->min_residual <= 1e-6)
                    bad += " bb84-d2(" + fmt("%g", v) + "," + party_name(p) + ")";
                auto r4 = restricted_feasibility(bb84_box(v), 4, p, TrustedKind::QubitMub, cfg);
                if (!r4.feasible() || r4.certificate_error >= 1e-10)
                    bad += " bb84-d4(" + fmt("%g", v) + "," + party_name(p) + ")";
            }
        }
        return Outcome{bad.empty(), bad.empty() ? "all sampled visibilities agree" : "mismatch:" + bad};
    });

    criterion(8, "LRO orbits 16 + 8, all no-signaling, 100 random mixtures exactly local", 0, [&] {
        auto det = lro_orbit(deterministic_box(0, 0, 0, 0));
        auto pr = lro_orbit(pr_box());
        std::size_t ns = 0;
        for (const auto &b : det) ns += is_nosignaling(b);
        for (const auto &b : pr) ns += is_nosignaling(b);
        std::mt19937_64 rng(8);
        int local = 0;
        for (int t = 0; t < 100; ++t) {
            auto r = local_membership(random_exact_local(rng));
            local += r.feasible() && r.exact();
        }
        bool ok = det.size() == 16 && pr.size() == 8 && ns == 24 && local == 100;
        return Outcome{ok, "orbits " + std::to_string(det.size()) + "+" + std::to_string(pr.size()) + ", NS " +
                               std::to_string(ns) + "/24, exact local " + std::to_string(local) + "/100"};
    });

    criterion(9, "property suites: monotone in d (50 boxes), corpus implication, assemblage identities (100 states)",
              0, [&] {
                  std::mt19937_64 rng(9);
                  SolverConfig c = cfg;
                  c.starts = 64;
                  int monotone = 0;
                  for (int t = 0; t < 50; ++t) {
                      Box b = random_exact_local(rng);
                      bool seen = false, ok = true;
                      for (int d = 1; d <= 4; ++d) {
                          auto r = restricted_feasibility(b, d, Party::Alice, TrustedKind::Unconstrained, c);
                          if (seen && r.infeasible()) ok = false;
                          seen = seen || r.feasible();
                      }
                      monotone += ok && seen;
                  }

                  std::vector<Box> corpus{table, uniform_box(), deterministic_box(0, 0, 0, 0),
                                          born_box(named_state("product-zz"), kZX, kZX)};
                  for (double v : {0.2, 0.5, 0.707}) corpus.push_back(noisy_chsh_box(v));
                  for (double v : {0.25, 0.5, 0.707, 1.0}) corpus.push_back(bb84_box(v));
                  for (int k = 0; k < 3; ++k) corpus.push_back(random_exact_local(rng));
                  int implication = 0, checked = 0;
                  for (const auto &b : corpus) {
                      if (!local_membership(b).feasible()) continue;
                      ++checked;
                      bool one_way_no = false;
                      for (Direction d : {Direction::AliceToBob, Direction::BobToAlice})
                          one_way_no = one_way_no || is_superunsteerable(b, 2, d, cfg).holds == Tri::No;
                      implication += !one_way_no || is_superlocal(b, 2, 2, cfg).holds != Tri::Yes;
                  }

                  int assem = 0;
                  for (int t = 0; t < 100; ++t) {
                      auto st = DensityMatrix::from_matrix(oracle::random_state(rng));
                      auto na = oracle::random_direction(rng), na2 = oracle::random_direction(rng);
                      auto nb = oracle::random_direction(rng), nb2 = oracle::random_direction(rng);
                      std::array<Measurement, 2> ma{Measurement::from_bloch(na[0], na[1], na[2]),
                                                    Measurement::from_bloch(na2[0], na2[1], na2[2])};
                      std::array<Measurement, 2> mb{Measurement::from_bloch(nb[0], nb[1], nb[2]),
                                                    Measurement::from_bloch(nb2[0], nb2[1], nb2[2])};
                      auto as = assemblage(st, ma);
                      Eigen::Matrix2cd bob = reduced_state(st, Party::Bob).matrix();
                      bool consistent = (as.reduced_state() - bob).norm() < 1e-12 &&
                                        (as.sigma(1, 0) + as.sigma(1, 1) - bob).norm() < 1e-12;
                      bool compose = box_from_assemblage(as, mb).max_abs_difference(born_box(st, ma, mb)) < 1e-12;
                      assem += consistent && compose;
                  }
                  bool ok = monotone == 50 && implication == checked && assem == 100;
                  return Outcome{ok, "monotone " + std::to_string(monotone) + "/50, implication " +
                                         std::to_string(implication) + "/" + std::to_string(checked) +
                                         " local corpus boxes, assemblage " + std::to_string(assem) +
                                         "/100 (tol 1e-12)"};
              });

    ReproductionReport full;
    double full_seconds = 0;
    {
        auto t0 = std::chrono::steady_clock::now();
        full = reproduce_claims();
        full_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    criterion(10, "printed two-term tables give p(01|00) = 0 != 1/4 and the report flags it", 0, [&] {
        std::vector<SinglePartyBox> bob{SinglePartyBox::from_p0(R(1), R(1, 2)),
                                        SinglePartyBox::from_p0(R(1, 2), R(1))};
        std::vector<SinglePartyBox> alice{SinglePartyBox::from_p0(R(1), R(1, 2)),
                                          SinglePartyBox::from_p0(R(0), R(1, 2))};
        auto m = make_model(Party::Bob, TrustedKind::QubitMub, std::vector<Rational>{R(1, 2), R(1, 2)}, bob, alice);
        Box printed = m.reconstruct();
        bool entry = printed.p_exact(0, 0, 0, 1) == 0 && table.p_exact(0, 0, 0, 1) == R(1, 4);
        bool flagged = false;
        for (const auto &c : full.claims) {
            if (c.claim_id != "printed-tables-erratum") continue;
            const auto &d = c.details;
            flagged = c.verdict == ClaimVerdict::Erratum && d.contains("x") && d["x"] == 0 && d["y"] == 0 &&
                      d["a"] == 0 && d["b"] == 1;
        }
        return Outcome{entry && flagged, std::string("p(01|00) printed=") + format_rational(printed.p_exact(0, 0, 0, 1)) +
                                             " table=" + format_rational(table.p_exact(0, 0, 0, 1)) +
                                             " report flag " + (flagged ? "present" : "missing")};
    });

    {
        int pass = 0, fail = 0, other = 0;
        for (const auto &c : full.claims) {
            if (c.verdict == ClaimVerdict::Pass || c.verdict == ClaimVerdict::Erratum) {
                ++pass;
            } else if (c.verdict == ClaimVerdict::Fail) {
                ++fail;
            } else {
                ++other;
            }
        }
        bool ok = full_seconds < 300;
        if (!ok) ++failures;
        std::printf("[%s] runtime: full reproduce suite | %zu claims: %d pass/erratum, %d fail, %d inconclusive | "
                    "%.2fs < 300s\n",
                    ok ? "PASS" : "FAIL", full.claims.size(), pass, fail, other, full_seconds);
        for (const auto &c : full.claims)
            if (c.verdict == ClaimVerdict::Fail || c.verdict == ClaimVerdict::Inconclusive)
                std::printf("    claim %s: %s: %s\n", c.claim_id.c_str(), claim_verdict_name(c.verdict),
                            c.evidence.c_str());
    }

    std::printf("%d criterion line(s) failed\n", failures);
    return std::min(failures, 100);
}
