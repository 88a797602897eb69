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

#include "steerbox/certify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "steerbox/error.hpp"

namespace steerbox {

namespace {

std::string num(double v, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

SinglePartyBox p0(const Rational &a, const Rational &b) { return SinglePartyBox::from_p0(a, b); }

Rational r(int n, int d = 1) { return Rational(n, d); }

}  // namespace

// ---------------------------------------------------------------------------
// Classification

ClassificationReport classify(const Box &box, int d_a, int d_b, const SolverConfig &cfg) {
    if (d_a < 1 || d_b < 1) throw Error(ErrorCode::Config, "dimensions must be at least 1");
    if (!is_nosignaling(box)) {
        for (Party side : {Party::Alice, Party::Bob}) {
            try {
                marginal(box, side);
            } catch (const Error &e) {
                throw Error(ErrorCode::Signaling, std::string("no-signaling violated: ") + e.what());
            }
        }
        throw Error(ErrorCode::Signaling, "no-signaling violated");
    }
    ClassificationReport rep;
    rep.d_a = d_a;
    rep.d_b = d_b;
    rep.seed = cfg.seed;
    rep.nosignaling = true;
    rep.chsh = chsh_max(box);
    rep.local = local_membership(box);
    rep.directions[0].direction = Direction::AliceToBob;
    rep.directions[1].direction = Direction::BobToAlice;

    if (!rep.is_local()) {
        for (auto &d : rep.directions) d.sdi_steerable = true;
        rep.regions = {"VIII"};
        rep.notes.push_back("nonlocal box: steerable in both directions, superlocality undefined");
        return rep;
    }
    rep.superlocal = is_superlocal(box, d_a, d_b, cfg);
    for (auto &d : rep.directions) {
        int dim = d.direction == Direction::AliceToBob ? d_a : d_b;
        d.superunsteerable = is_superunsteerable(box, dim, d.direction, cfg);
        d.sdi_steerable = d.superunsteerable->evidence.infeasible();
    }
    Tri sl = rep.superlocal->holds;
    Tri ab = rep.directions[0].superunsteerable->holds;
    Tri ba = rep.directions[1].superunsteerable->holds;
    if (sl == Tri::Yes && ab == Tri::Yes && ba == Tri::Yes) {
        rep.regions = {"IV", "V", "VI"};
    } else if (sl == Tri::No && ((ab == Tri::Yes && ba == Tri::No) || (ab == Tri::No && ba == Tri::Yes))) {
        rep.regions = {"II"};
    }
    return rep;
}

Json classification_to_json(const ClassificationReport &r) {
    Json j;
    j["d_a"] = r.d_a;
    j["d_b"] = r.d_b;
    j["seed"] = r.seed;
    j["nosignaling"] = r.nosignaling;
    j["local"] = r.is_local();
    j["local_evidence"] = feasibility_to_json(r.local);
    j["chsh_max"] = {{"value", r.chsh.value}, {"alpha", r.chsh.alpha}, {"beta", r.chsh.beta}, {"gamma", r.chsh.gamma}};
    j["superlocal"] = r.superlocal ? property_to_json(*r.superlocal) : Json(nullptr);
    Json dirs = Json::array();
    for (const auto &d : r.directions) {
        Json dj;
        dj["direction"] = direction_name(d.direction);
        dj["superunsteerable"] = d.superunsteerable ? property_to_json(*d.superunsteerable) : Json(nullptr);
        dj["sdi_steerable"] = d.sdi_steerable;
        dirs.push_back(dj);
    }
    j["directions"] = dirs;
    j["regions"] = r.regions.empty() ? Json("undetermined") : Json(r.regions);
    j["notes"] = r.notes;
    return j;
}

std::string classification_to_text(const ClassificationReport &r) {
    auto prov = [](const PropertyVerdict &v) {
        std::string s = tri_name(v.holds);
        s += v.exact() ? " [exact]" : " [numeric]";
        if (v.evidence.residual) s += " min residual " + sci(v.evidence.residual->min_residual);
        if (!v.note.empty()) s += " (" + v.note + ")";
        return s;
    };
    std::ostringstream os;
    os << "no-signaling: yes\n";
    os << "local: " << (r.is_local() ? "yes" : "no") << " [" << (r.local.exact() ? "exact" : "numeric") << "]\n";
    os << "CHSH max: " << num(r.chsh.value, 12) << '\n';
    os << "superlocal (d=" << std::min(r.d_a, r.d_b) << "): " << (r.superlocal ? prov(*r.superlocal) : "n/a") << '\n';
    for (const auto &d : r.directions) {
        os << "superunsteerable " << direction_name(d.direction) << ": "
           << (d.superunsteerable ? prov(*d.superunsteerable) : "n/a") << '\n';
        os << "one-sided SDI steerable " << direction_name(d.direction) << ": " << (d.sdi_steerable ? "yes" : "no")
           << '\n';
    }
    os << "region: ";
    if (r.regions.empty()) {
        os << "undetermined";
    } else {
        for (std::size_t i = 0; i < r.regions.size(); ++i) os << (i ? ", " : "") << r.regions[i];
    }
    os << "\nseed: " << r.seed << '\n';
    for (const auto &n : r.notes) os << "note: " << n << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Models

HiddenVariableModel printed_two_term_model() {
    return make_model(Party::Bob, TrustedKind::QubitMub, {r(1, 2), r(1, 2)}, {p0(1, r(1, 2)), p0(r(1, 2), 1)},
                      {p0(1, r(1, 2)), p0(0, r(1, 2))});
}

HiddenVariableModel corrected_two_term_model() {
    return make_model(Party::Bob, TrustedKind::QubitMub, {r(1, 2), r(1, 2)}, {p0(1, r(1, 2)), p0(0, r(1, 2))},
                      {p0(1, r(1, 2)), p0(r(1, 2), 1)});
}

HiddenVariableModel three_term_model() {
    return make_model(Party::Alice, TrustedKind::QubitMub, {r(1, 2), r(1, 4), r(1, 4)},
                      {SinglePartyBox::deterministic(0, 0), SinglePartyBox::deterministic(1, 0),
                       SinglePartyBox::deterministic(1, 1)},
                      {SinglePartyBox::uniform(), p0(1, r(1, 2)), p0(0, r(1, 2))});
}

// ---------------------------------------------------------------------------
// Reproduction

const char *claim_verdict_name(ClaimVerdict v) {
    switch (v) {
        case ClaimVerdict::Pass:
            return "pass";
        case ClaimVerdict::Fail:
            return "fail";
        case ClaimVerdict::Inconclusive:
            return "inconclusive";
        case ClaimVerdict::Erratum:
            return "erratum";
    }
    return "?";
}

bool ReproductionReport::all_pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const Claim &c) {
        return c.verdict == ClaimVerdict::Pass || c.verdict == ClaimVerdict::Erratum;
    });
}

bool ReproductionReport::any_fail() const {
    return std::any_of(claims.begin(), claims.end(), [](const Claim &c) { return c.verdict == ClaimVerdict::Fail; });
}

Json ReproductionReport::to_json() const {
    Json arr = Json::array();
    for (const auto &c : claims) {
        Json j;
        j["claim_id"] = c.claim_id;
        j["anchor"] = c.anchor;
        j["verdict"] = claim_verdict_name(c.verdict);
        j["evidence"] = c.evidence;
        if (!c.details.is_null()) j["details"] = c.details;
        j["seconds"] = c.seconds;
        arr.push_back(j);
    }
    return arr;
}

std::string ReproductionReport::to_text() const {
    std::ostringstream os;
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto &c : claims) {
        std::string tag = claim_verdict_name(c.verdict);
        for (auto &ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << '[' << tag << "] " << c.claim_id << " (" << c.anchor << ")\n    " << c.evidence << "\n";
        ++counts[static_cast<int>(c.verdict)];
    }
    os << "\n" << claims.size() << " claims: " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2]
       << " inconclusive, " << counts[3] << " erratum\n";
    return os.str();
}

namespace {

struct MismatchScan {
    int count = 0;
    std::optional<std::array<int, 4>> first;
    Rational got;
    Rational want;
};

MismatchScan scan_mismatches(const Box &model, const Box &target) {
    MismatchScan s;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    if (model.p_exact(x, y, a, b) == target.p_exact(x, y, a, b)) continue;
                    if (!s.first) {
                        s.first = std::array<int, 4>{x, y, a, b};
                        s.got = model.p_exact(x, y, a, b);
                        s.want = target.p_exact(x, y, a, b);
                    }
                    ++s.count;
                }
    return s;
}

std::string mismatch_text(const MismatchScan &s) {
    const auto &f = *s.first;
    std::ostringstream os;
    os << "first mismatch at (x,y,a,b)=(" << f[0] << ',' << f[1] << ',' << f[2] << ',' << f[3] << "): p(" << f[2]
       << f[3] << '|' << f[0] << f[1] << ") = " << format_rational(s.got) << " vs table " << format_rational(s.want)
       << "; " << s.count << " of 16 entries differ";
    return os.str();
}

ClaimVerdict tri_verdict(Tri got, Tri want) {
    if (got == Tri::Undetermined) return ClaimVerdict::Inconclusive;
    return got == want ? ClaimVerdict::Pass : ClaimVerdict::Fail;
}

struct CorpusEntry {
    std::string name;
    Box box;
    bool zero_discord_b_to_a;
};

std::vector<CorpusEntry> corpus(std::uint64_t seed) {
    std::array<Measurement, 2> zx{Measurement::sigma_z(), Measurement::sigma_x()};
    std::vector<CorpusEntry> c;
    c.push_back({"one-way discordant box", one_way_discord_box(), true});
    c.push_back({"uniform box", uniform_box(), true});
    c.push_back({"deterministic box 0000", deterministic_box(0, 0, 0, 0), true});
    c.push_back({"product state box", born_box(named_state("product-zz"), zx, zx), true});
    for (double v : {0.2, 0.5, 0.707}) c.push_back({"noisy CHSH V=" + num(v), noisy_chsh_box(v), false});
    for (double v : {0.25, 0.5, 0.707, 1.0}) c.push_back({"BB84 V=" + num(v), bb84_box(v), false});
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, 4);
    auto vertices = deterministic_boxes();
    for (int m = 0; m < 3; ++m) {
        std::vector<Rational> w(16);
        Rational total = 0;
        for (auto &v : w) total += (v = pick(rng));
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (auto &v : w) v /= total;
        c.push_back({"random local mixture " + std::to_string(m), mixture(vertices, w), false});
    }
    return c;
}

}  // namespace

ReproductionReport reproduce_claims(const ReproductionOptions &opts) {
    const SolverConfig &cfg = opts.solver;
    validate_config(cfg);
    ReproductionReport report;
    const Box table = one_way_discord_box();
    const DensityMatrix state = one_way_discord_state();

    auto run = [&](std::string id, std::string anchor, const std::function<void(Claim &)> &body) {
        Claim c;
        c.claim_id = std::move(id);
        c.anchor = std::move(anchor);
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception &e) {
            c.verdict = ClaimVerdict::Fail;
            c.evidence = std::string("error: ") + e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.claims.push_back(std::move(c));
    };

    run("correlation-table", "correlation table of the one-way discordant state", [&](Claim &c) {
        std::array<Measurement, 2> zx{Measurement::sigma_z(), Measurement::sigma_x()};
        Box b = born_box(state, zx, zx);
        bool ok = b.is_exact() && b == table;
        c.verdict = ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = ok ? "Born rule with sigma_z, sigma_x on both sides reproduces all 16 entries exactly"
                        : "Born-rule box differs from the table by " + sci(b.max_abs_difference(table));
        c.details = box_to_json(b);
    });

    run("three-term-model", "three-term LHV-LHS model with qubit trusted states", [&](Claim &c) {
        HiddenVariableModel m = three_term_model();
        bool recon = m.reconstruct() == table;
        // Trusted boxes from (|0> + i|1>)/sqrt2, |0>, |1> under sigma_z and sigma_x.
        using C = std::complex<double>;
        const double s = 1 / std::sqrt(2.0);
        std::array<Eigen::Vector2cd, 3> psi;
        psi[0] << C(s, 0), C(0, s);
        psi[1] << 1, 0;
        psi[2] << 0, 1;
        std::array<Measurement, 2> meas{Measurement::sigma_z(), Measurement::sigma_x()};
        bool states_ok = true, disc_ok = true;
        for (int l = 0; l < 3; ++l) {
            const auto &q = m.trusted_responses[static_cast<std::size_t>(l)];
            disc_ok = disc_ok && qubit_mub_realizable(q);
            for (int y = 0; y < 2; ++y) {
                double born = (psi[static_cast<std::size_t>(l)].adjoint() * meas[static_cast<std::size_t>(y)].projector(0) *
                               psi[static_cast<std::size_t>(l)])(0, 0)
                                  .real();
                states_ok = states_ok && std::fabs(born - q.prob(y, 0)) < 1e-12;
            }
        }
        c.verdict = recon && states_ok && disc_ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::string("exact reconstruction: ") + (recon ? "yes" : "no") +
                     "; trusted boxes from the stated qubit states: " + (states_ok ? "yes" : "no") +
                     "; all on the qubit disc: " + (disc_ok ? "yes" : "no");
        c.details = model_to_json(m);
    });

    run("case-enumeration", "exact case analysis for two hidden states", [&](Claim &c) {
        CaseReport cr = grouping_case_engine(table, Party::Alice);
        bool traces = std::all_of(cr.cases.begin(), cr.cases.end(), [](const CaseVerdict &v) { return !v.trace.empty(); });
        bool counts = cr.count("pair") == 6 && cr.count("d4") == 7 && cr.count("d3") == 12;
        c.verdict = cr.all_infeasible() && traces && counts ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        std::size_t infeasible = static_cast<std::size_t>(
            std::count_if(cr.cases.begin(), cr.cases.end(), [](const CaseVerdict &v) { return !v.feasible; }));
        c.evidence = std::to_string(infeasible) + " of " + std::to_string(cr.cases.size()) +
                     " enumerated cases (6 pairs, 7 four-to-two, 12 three-to-two groupings) infeasible, each with a "
                     "contradiction trace";
        c.details = case_report_to_json(cr);
    });

    FeasibilityResult alice2 = restricted_feasibility(table, 2, Party::Alice, TrustedKind::QubitMub, cfg);

    run("two-term-alice-exact", "minimal dimension three for Alice-untrusted models", [&](Claim &c) {
        TwoTermGeometry g = two_term_geometry(table, Party::Alice, TrustedKind::QubitMub);
        c.verdict = g.two_term ? ClaimVerdict::Fail : ClaimVerdict::Pass;
        c.evidence = g.two_term ? "claim refuted: an exact two-term Alice-untrusted model with qubit trusted boxes "
                                  "reconstructs the table (" +
                                      g.reason + "); it mixes P_D^00 into both hidden states, a case the "
                                                 "enumeration does not cover"
                                : "complete two-term test: " + g.reason;
        if (g.model) c.details = model_to_json(*g.model);
    });

    run("two-term-alice-numeric", "minimal dimension three for Alice-untrusted models", [&](Claim &c) {
        const auto &res = *alice2.residual;
        if (res.min_residual > cfg.residual_threshold) {
            c.verdict = ClaimVerdict::Pass;
        } else if (res.min_residual <= cfg.feasible_residual) {
            c.verdict = ClaimVerdict::Fail;
        } else {
            c.verdict = ClaimVerdict::Inconclusive;
        }
        c.evidence = "multi-start search at d=2: " + std::to_string(res.starts) + " starts, seed " +
                     std::to_string(res.seed) + ", min residual " + sci(res.min_residual) + " (threshold " +
                     sci(cfg.residual_threshold) + ")";
        c.details = feasibility_to_json(alice2);
    });

    run("three-term-numeric", "three-term LHV-LHS model with qubit trusted states", [&](Claim &c) {
        NumericSearch ns = multistart_search(table, 3, Party::Alice, TrustedKind::QubitMub, cfg);
        c.verdict = ns.stats.min_residual < cfg.feasible_residual ? ClaimVerdict::Pass
                    : ns.stats.min_residual > cfg.residual_threshold ? ClaimVerdict::Fail
                                                                     : ClaimVerdict::Inconclusive;
        c.evidence = "multi-start search at d=3 reaches residual " + sci(ns.stats.min_residual) + " after " +
                     std::to_string(ns.stats.starts) + " starts";
        if (ns.best) c.details = model_to_json(*ns.best);
    });

    run("two-term-bob-model", "two-term Bob-untrusted model", [&](Claim &c) {
        HiddenVariableModel m = opts.printed_tables ? printed_two_term_model() : corrected_two_term_model();
        Box b = m.reconstruct();
        if (b == table) {
            c.verdict = ClaimVerdict::Pass;
            c.evidence = std::string(opts.printed_tables ? "printed" : "corrected") +
                         " two-term model reconstructs the table exactly; all trusted boxes on the qubit disc";
        } else {
            c.verdict = ClaimVerdict::Fail;
            c.evidence = std::string(opts.printed_tables ? "printed" : "corrected") +
                         " two-term model does not reconstruct the table: " + mismatch_text(scan_mismatches(b, table));
        }
        c.details = model_to_json(m);
    });

    run("two-term-bob-search", "no superunsteerability from Bob to Alice", [&](Claim &c) {
        FeasibilityResult fr = restricted_feasibility(table, 2, Party::Bob, TrustedKind::QubitMub, cfg);
        c.verdict = fr.feasible() ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::string("restricted feasibility at d=2, Bob untrusted: ") + verdict_name(fr.verdict) +
                     (fr.exact() ? " (exact certificate)" : "");
        c.details = feasibility_to_json(fr);
    });

    run("printed-tables-erratum", "two-term Bob-untrusted model", [&](Claim &c) {
        MismatchScan s = scan_mismatches(printed_two_term_model().reconstruct(), table);
        if (s.count == 0) {
            c.verdict = ClaimVerdict::Pass;
            c.evidence = "printed tables reconstruct the table";
            return;
        }
        c.verdict = ClaimVerdict::Erratum;
        c.evidence = "printed tables do not reconstruct the table; " + mismatch_text(s);
        const auto &f = *s.first;
        c.details = {{"x", f[0]},
                     {"y", f[1]},
                     {"a", f[2]},
                     {"b", f[3]},
                     {"printed_value", format_rational(s.got)},
                     {"table_value", format_rational(s.want)},
                     {"mismatches", s.count}};
    });

    ClassificationReport cls = classify(table, 2, 2, cfg);

    run("superunsteerable-a-to-b", "super-unsteerability from Alice to Bob", [&](Claim &c) {
        const auto &v = *cls.directions[0].superunsteerable;
        c.verdict = tri_verdict(v.holds, Tri::Yes);
        c.evidence = std::string("superunsteerable A->B at d=2: ") + tri_name(v.holds) + " (" +
                     verdict_name(v.evidence.verdict) + (v.evidence.exact() ? ", exact" : "") + ")";
        c.details = property_to_json(v);
    });

    run("superunsteerable-b-to-a", "no superunsteerability from Bob to Alice", [&](Claim &c) {
        const auto &v = *cls.directions[1].superunsteerable;
        c.verdict = tri_verdict(v.holds, Tri::No);
        c.evidence = std::string("superunsteerable B->A at d=2: ") + tri_name(v.holds) + " (" +
                     verdict_name(v.evidence.verdict) + (v.evidence.exact() ? ", exact" : "") + ")";
        c.details = property_to_json(v);
    });

    run("not-superlocal", "two-term model read as an LHV-LHV model", [&](Claim &c) {
        const auto &v = *cls.superlocal;
        c.verdict = tri_verdict(v.holds, Tri::No);
        c.evidence = std::string("superlocal at d_A=d_B=2: ") + tri_name(v.holds);
        c.details = property_to_json(v);
    });

    run("one-way-sdi", "one-way superunsteerable region of the hierarchy", [&](Claim &c) {
        bool ab = cls.directions[0].sdi_steerable, ba = cls.directions[1].sdi_steerable;
        bool region2 = cls.regions == std::vector<std::string>{"II"};
        c.verdict = ab && !ba && region2 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::string("SDI steerable A->B: ") + (ab ? "yes" : "no") + ", B->A: " + (ba ? "yes" : "no") +
                     ", region: " + (cls.regions.empty() ? std::string("undetermined") : cls.regions.front());
        c.details = classification_to_json(cls);
    });

    run("discord-asymmetry", "nonzero discord from Alice to Bob, zero from Bob to Alice", [&](Claim &c) {
        DiscordResult ab = discord(state, Direction::AliceToBob);
        DiscordResult ba = discord(state, Direction::BobToAlice);
        c.verdict = ab.discord > 0.05 && ba.discord < 1e-6 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = "D(A->B) = " + num(ab.discord, 12) + ", D(B->A) = " + sci(ba.discord);
        c.details = {{"a_to_b", discord_to_json(ab)}, {"b_to_a", discord_to_json(ba)}};
    });

    run("discord-structure", "quantum-classical state", [&](Claim &c) {
        bool qc = is_quantum_classical(state);
        bool cq = is_classical_quantum(state);
        c.verdict = qc && !cq ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::string("quantum-classical (Bob classical): ") + (qc ? "yes" : "no") +
                     "; classical-quantum: " + (cq ? "yes" : "no");
    });

    run("chsh-family", "noisy CHSH family", [&](Claim &c) {
        bool ok = true;
        std::ostringstream os;
        for (double v : {0.2, 0.5, 0.707, 0.8, 0.9, 1.0}) {
            Box b = noisy_chsh_box(v);
            bool local = local_membership(b).feasible();
            double chsh = chsh_max(b).value;
            bool good = local == (v < 1 / std::sqrt(2.0)) && std::fabs(chsh - 2 * std::sqrt(2.0) * v) <= 1e-9;
            ok = ok && good;
            os << "V=" << v << ": " << (local ? "local" : "nonlocal") << ", CHSH " << num(chsh, 10) << "; ";
        }
        c.verdict = ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = os.str();
    });

    run("chsh-superlocal", "noisy CHSH family superlocality", [&](Claim &c) {
        PropertyVerdict v = is_superlocal(noisy_chsh_box(0.5), 2, 2, cfg);
        c.verdict = tri_verdict(v.holds, Tri::Yes);
        c.evidence = std::string("noisy CHSH V=0.5 superlocal at d=2: ") + tri_name(v.holds) +
                     (v.evidence.residual ? ", min residual " + sci(v.evidence.residual->min_residual) : "");
        c.details = property_to_json(v);
    });

    run("bb84-family", "white-noise BB84 family", [&](Claim &c) {
        bool ok = true;
        std::ostringstream os;
        for (double v : {0.25, 0.5, 0.707, 1.0}) {
            Box b = bb84_box(v);
            double chsh = chsh_max(b).value;
            bool good = is_nosignaling(b) && std::fabs(chsh - 2 * v) <= 1e-9 && chsh <= 2 + 1e-12;
            ok = ok && good;
            os << "V=" << v << ": CHSH " << num(chsh, 10) << "; ";
        }
        c.verdict = ok ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = os.str();
    });

    run("bb84-two-way", "BB84 family: two-way superunsteerability and superlocality", [&](Claim &c) {
        ClaimVerdict verdict = ClaimVerdict::Pass;
        auto merge = [&](ClaimVerdict v) {
            if (v == ClaimVerdict::Fail || (v == ClaimVerdict::Inconclusive && verdict == ClaimVerdict::Pass)) verdict = v;
        };
        std::ostringstream os;
        Json details = Json::array();
        for (double v : {0.5, 0.707}) {
            Box b = bb84_box(v);
            for (Party p : {Party::Alice, Party::Bob}) {
                FeasibilityResult d2 = restricted_feasibility(b, 2, p, TrustedKind::QubitMub, cfg);
                FeasibilityResult d4 = restricted_feasibility(b, 4, p, TrustedKind::QubitMub, cfg);
                ClaimVerdict v2 = d2.residual->min_residual > cfg.residual_threshold ? ClaimVerdict::Pass
                                  : d2.residual->min_residual <= cfg.feasible_residual ? ClaimVerdict::Fail
                                                                                       : ClaimVerdict::Inconclusive;
                merge(v2);
                merge(d4.feasible() && d4.certificate_error < cfg.feasible_residual ? ClaimVerdict::Pass
                                                                                    : ClaimVerdict::Inconclusive);
                os << "V=" << v << ' ' << party_name(p) << " untrusted: d=2 min residual "
                   << sci(d2.residual->min_residual) << ", d=4 " << verdict_name(d4.verdict) << "; ";
                details.push_back({{"v", v}, {"untrusted", party_name(p)}, {"d2", feasibility_to_json(d2)},
                                   {"d4", feasibility_to_json(d4)}});
            }
        }
        ClassificationReport bc = classify(bb84_box(0.5), 2, 2, cfg);
        merge(bc.regions == std::vector<std::string>{"IV", "V", "VI"} ? ClaimVerdict::Pass : ClaimVerdict::Fail);
        os << "V=0.5 classification: superlocal " << tri_name(bc.superlocal->holds) << ", superunsteerable A->B "
           << tri_name(bc.directions[0].superunsteerable->holds) << ", B->A "
           << tri_name(bc.directions[1].superunsteerable->holds);
        c.verdict = verdict;
        c.evidence = os.str();
        c.details = details;
    });

    run("lro-orbits", "local polytope vertices and PR boxes", [&](Claim &c) {
        auto det = lro_orbit(deterministic_box(0, 0, 0, 0));
        auto pr = lro_orbit(pr_box());
        bool ns = std::all_of(det.begin(), det.end(), [](const Box &b) { return is_nosignaling(b); }) &&
                  std::all_of(pr.begin(), pr.end(), [](const Box &b) { return is_nosignaling(b); });
        c.verdict = det.size() == 16 && pr.size() == 8 && ns ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = "deterministic orbit " + std::to_string(det.size()) + ", PR orbit " + std::to_string(pr.size()) +
                     ", all no-signaling: " + (ns ? "yes" : "no");
    });

    auto corpus_boxes = corpus(cfg.seed);
    std::vector<ClassificationReport> corpus_reports;
    for (const auto &e : corpus_boxes) corpus_reports.push_back(classify(e.box, 2, 2, cfg));

    run("corpus-implication", "not superunsteerable in one direction implies not superlocal", [&](Claim &c) {
        int checked = 0, violations = 0;
        std::ostringstream os;
        for (std::size_t i = 0; i < corpus_boxes.size(); ++i) {
            const auto &rep = corpus_reports[i];
            if (!rep.is_local()) continue;
            bool some_not = rep.directions[0].superunsteerable->holds == Tri::No ||
                            rep.directions[1].superunsteerable->holds == Tri::No;
            if (!some_not) continue;
            ++checked;
            if (rep.superlocal->holds == Tri::Yes) {
                ++violations;
                os << corpus_boxes[i].name << " violates; ";
            }
        }
        c.verdict = violations == 0 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::to_string(corpus_boxes.size()) + " corpus boxes, " + std::to_string(checked) +
                     " with the premise, " + std::to_string(violations) + " violations. " + os.str();
    });

    run("discord-necessity", "nonzero discord from Bob to Alice is necessary", [&](Claim &c) {
        int checked = 0, violations = 0;
        for (std::size_t i = 0; i < corpus_boxes.size(); ++i) {
            if (!corpus_boxes[i].zero_discord_b_to_a) continue;
            ++checked;
            const auto &d = corpus_reports[i].directions[1];
            if (d.superunsteerable && d.superunsteerable->holds == Tri::Yes) ++violations;
        }
        c.verdict = violations == 0 ? ClaimVerdict::Pass : ClaimVerdict::Fail;
        c.evidence = std::to_string(checked) + " boxes from states with zero B->A discord, " +
                     std::to_string(violations) + " reported superunsteerable B->A";
    });

    return report;
}

void write_reproduction(const ReproductionReport &report, const std::string &out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir + "': " + ec.message());
    write_text_file((std::filesystem::path(out_dir) / "report.json").string(), report.to_json().dump(2) + "\n");
    write_text_file((std::filesystem::path(out_dir) / "report.txt").string(), report.to_text());
}

}  // namespace steerbox
