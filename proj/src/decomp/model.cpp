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

#include "steerbox/decomp.hpp"
#include "steerbox/error.hpp"
#include "steerbox/simplex.hpp"

namespace steerbox {

const char *trusted_kind_name(TrustedKind kind) {
    return kind == TrustedKind::QubitMub ? "qubit-mub" : "unconstrained";
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Feasible:
            return "feasible";
        case Verdict::InfeasibleNumeric:
            return "infeasible-numeric";
        case Verdict::InfeasibleExact:
            return "infeasible-exact";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

const char *tri_name(Tri t) {
    switch (t) {
        case Tri::Yes:
            return "yes";
        case Tri::No:
            return "no";
        case Tri::Undetermined:
            return "undetermined";
    }
    return "?";
}

bool qubit_mub_realizable(const SinglePartyBox &q) {
    if (q.is_exact()) {
        Rational z = 2 * q.prob_exact(0, 0) - 1;
        Rational x = 2 * q.prob_exact(1, 0) - 1;
        return z * z + x * x <= 1;
    }
    double z = 2 * q.prob(0, 0) - 1;
    double x = 2 * q.prob(1, 0) - 1;
    return z * z + x * x <= 1 + kQubitDiscSlack;
}

bool HiddenVariableModel::is_exact() const {
    if (!exact_weights) return false;
    auto exact = [](const SinglePartyBox &b) { return b.is_exact(); };
    return std::all_of(untrusted_responses.begin(), untrusted_responses.end(), exact) &&
           std::all_of(trusted_responses.begin(), trusted_responses.end(), exact);
}

void HiddenVariableModel::validate() const {
    std::size_t d = weights.size();
    if (d == 0 || untrusted_responses.size() != d || trusted_responses.size() != d ||
        (exact_weights && exact_weights->size() != d)) {
        throw Error(ErrorCode::InvalidArgument, "hidden-variable model has inconsistent term counts");
    }
    if (exact_weights) {
        Rational s = 0;
        for (const auto &w : *exact_weights) {
            if (w < 0) throw Error(ErrorCode::InvalidArgument, "negative model weight");
            s += w;
        }
        if (s != 1) throw Error(ErrorCode::InvalidArgument, "model weights sum to " + format_rational(s));
    } else {
        double s = 0;
        for (double w : weights) {
            if (!(w >= 0)) throw Error(ErrorCode::InvalidArgument, "negative model weight");
            s += w;
        }
        if (std::fabs(s - 1) > kNormalizationTolerance) {
            throw Error(ErrorCode::InvalidArgument, "model weights do not sum to 1");
        }
    }
    if (trusted_kind == TrustedKind::QubitMub) {
        for (std::size_t l = 0; l < d; ++l) {
            if (!qubit_mub_realizable(trusted_responses[l])) {
                throw Error(ErrorCode::InvalidArgument,
                            "trusted response " + std::to_string(l) + " is outside the qubit disc");
            }
        }
    }
}

Box HiddenVariableModel::reconstruct() const {
    validate();
    bool alice_untrusted = untrusted == Party::Alice;
    if (is_exact()) {
        std::array<Rational, 16> p{};
        for (std::size_t l = 0; l < weights.size(); ++l) {
            const auto &u = untrusted_responses[l];
            const auto &t = trusted_responses[l];
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const Rational &pa = alice_untrusted ? u.prob_exact(x, a) : t.prob_exact(x, a);
                            const Rational &pb = alice_untrusted ? t.prob_exact(y, b) : u.prob_exact(y, b);
                            p[box_index(x, y, a, b)] += (*exact_weights)[l] * pa * pb;
                        }
        }
        return Box::from_rational(p);
    }
    std::array<double, 16> p{};
    for (std::size_t l = 0; l < weights.size(); ++l) {
        const auto &u = untrusted_responses[l];
        const auto &t = trusted_responses[l];
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        double pa = alice_untrusted ? u.prob(x, a) : t.prob(x, a);
                        double pb = alice_untrusted ? t.prob(y, b) : u.prob(y, b);
                        p[box_index(x, y, a, b)] += weights[l] * pa * pb;
                    }
    }
    return Box::from_double(p);
}

HiddenVariableModel HiddenVariableModel::padded(int d) const {
    HiddenVariableModel m = *this;
    while (m.dimension() < d) {
        m.weights.push_back(0);
        if (m.exact_weights) m.exact_weights->push_back(0);
        m.untrusted_responses.push_back(SinglePartyBox::deterministic(0, 0));
        m.trusted_responses.push_back(SinglePartyBox::uniform());
    }
    return m;
}

HiddenVariableModel make_model(Party untrusted, TrustedKind kind, std::vector<Rational> weights,
                               std::vector<SinglePartyBox> untrusted_responses,
                               std::vector<SinglePartyBox> trusted_responses) {
    HiddenVariableModel m;
    m.untrusted = untrusted;
    m.trusted_kind = kind;
    for (const auto &w : weights) m.weights.push_back(to_double(w));
    m.exact_weights = std::move(weights);
    m.untrusted_responses = std::move(untrusted_responses);
    m.trusted_responses = std::move(trusted_responses);
    m.validate();
    return m;
}

HiddenVariableModel make_model(Party untrusted, TrustedKind kind, std::vector<double> weights,
                               std::vector<SinglePartyBox> untrusted_responses,
                               std::vector<SinglePartyBox> trusted_responses) {
    HiddenVariableModel m;
    m.untrusted = untrusted;
    m.trusted_kind = kind;
    m.weights = std::move(weights);
    m.untrusted_responses = std::move(untrusted_responses);
    m.trusted_responses = std::move(trusted_responses);
    m.validate();
    return m;
}

bool CaseReport::all_infeasible() const {
    return std::none_of(cases.begin(), cases.end(), [](const CaseVerdict &c) { return c.feasible; });
}

std::size_t CaseReport::count(std::string_view family) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [&](const CaseVerdict &c) { return c.family == family; }));
}

bool FeasibilityResult::exact() const {
    if (verdict == Verdict::InfeasibleExact) return true;
    return verdict == Verdict::Feasible && certificate && certificate->is_exact();
}

void validate_config(const SolverConfig &cfg) {
    if (cfg.starts < 0) throw Error(ErrorCode::Config, "starts must be non-negative");
    if (!(cfg.residual_threshold > 0) || !(cfg.feasible_residual > 0) || !(cfg.simplex_tolerance > 0)) {
        throw Error(ErrorCode::Config, "thresholds must be positive");
    }
    if (cfg.feasible_residual > cfg.residual_threshold) {
        throw Error(ErrorCode::Config, "feasible residual exceeds the infeasibility threshold");
    }
    if (cfg.batch < 1 || cfg.max_evaluations < 1 || cfg.threads < 0) {
        throw Error(ErrorCode::Config, "batch, evaluation budget and thread count must be positive");
    }
}

namespace {

template <class T>
lp::Result<T> vertex_lp(const std::array<T, 16> &p) {
    auto vertices = deterministic_boxes();
    std::vector<std::vector<T>> a(17, std::vector<T>(16, T(0)));
    std::vector<T> b(17, T(0));
    for (std::size_t i = 0; i < 16; ++i) {
        for (std::size_t k = 0; k < 16; ++k) {
            if (vertices[k].p_exact((i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1) == 1) a[i][k] = T(1);
        }
        b[i] = p[i];
    }
    for (std::size_t k = 0; k < 16; ++k) a[16][k] = T(1);
    b[16] = T(1);
    return lp::minimize<T>(a, b, std::vector<T>(16, T(0)));
}

HiddenVariableModel vertex_model(const std::vector<double> &w, const std::optional<std::vector<Rational>> &exact) {
    std::vector<SinglePartyBox> u, t;
    std::vector<Rational> we;
    std::vector<double> wd;
    for (int k = 0; k < 16; ++k) {
        bool keep = exact ? (*exact)[static_cast<std::size_t>(k)] != 0 : w[static_cast<std::size_t>(k)] > 0;
        if (!keep) continue;
        u.push_back(SinglePartyBox::deterministic((k >> 3) & 1, (k >> 2) & 1));
        t.push_back(SinglePartyBox::deterministic((k >> 1) & 1, k & 1));
        if (exact) we.push_back((*exact)[static_cast<std::size_t>(k)]);
        wd.push_back(w[static_cast<std::size_t>(k)]);
    }
    if (exact) return make_model(Party::Alice, TrustedKind::Unconstrained, std::move(we), std::move(u), std::move(t));
    return make_model(Party::Alice, TrustedKind::Unconstrained, std::move(wd), std::move(u), std::move(t));
}

}  // namespace

FeasibilityResult local_membership(const Box &box) {
    if (!is_nosignaling(box)) {
        throw Error(ErrorCode::Signaling, "local membership requires a no-signaling box");
    }
    FeasibilityResult r;
    r.dimension = 16;
    if (box.is_exact()) {
        auto res = vertex_lp<Rational>(box.exact_values());
        r.provenance.push_back("exact rational simplex over the 16 deterministic vertices (" +
                               std::to_string(res.pivots) + " pivots)");
        if (res.status != lp::Status::Optimal) {
            r.verdict = Verdict::InfeasibleExact;
            return r;
        }
        std::vector<double> wd;
        for (const auto &v : res.x) wd.push_back(to_double(v));
        r.vertex_weights = wd;
        r.exact_vertex_weights = res.x;
        r.certificate = vertex_model(wd, res.x);
        r.verdict = Verdict::Feasible;
        r.certificate_error = 0;
        return r;
    }
    auto res = vertex_lp<double>(box.values());
    r.provenance.push_back("floating simplex over the 16 deterministic vertices, tolerance 1e-9 (" +
                           std::to_string(res.pivots) + " pivots)");
    if (res.status != lp::Status::Optimal) {
        r.verdict = Verdict::InfeasibleNumeric;
        return r;
    }
    std::vector<double> w = res.x;
    double s = 0;
    for (double &v : w) {
        v = std::max(v, 0.0);
        s += v;
    }
    for (double &v : w) v /= s;
    r.vertex_weights = w;
    r.certificate = vertex_model(w, std::nullopt);
    r.certificate_error = r.certificate->reconstruct().max_abs_difference(box);
    r.verdict = Verdict::Feasible;
    return r;
}

}  // namespace steerbox
