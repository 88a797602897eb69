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
#include <sstream>

#include "steerbox/decomp.hpp"
#include "steerbox/error.hpp"

namespace steerbox {

namespace {

double certificate_error(const HiddenVariableModel &m, const Box &box) {
    Box r = m.reconstruct();
    if (r.is_exact() && box.is_exact()) return r == box ? 0.0 : r.max_abs_difference(box);
    return r.max_abs_difference(box);
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

/// Groups a vertex decomposition by the untrusted party's strategy; the
/// trusted side becomes the mixture of its deterministic responses.
std::optional<HiddenVariableModel> group_by_untrusted(const FeasibilityResult &local, Party untrusted) {
    if (!local.exact_vertex_weights && !local.vertex_weights) return std::nullopt;
    bool exact = local.exact_vertex_weights.has_value();
    std::vector<Rational> we;
    std::vector<double> wd;
    std::vector<SinglePartyBox> u, t;
    for (int s = 0; s < 4; ++s) {
        Rational ew = 0;
        std::array<Rational, 2> et{0, 0};
        double dw = 0;
        std::array<double, 2> dt{0, 0};
        for (int k = 0; k < 16; ++k) {
            int su = untrusted == Party::Alice ? k >> 2 : k & 3;
            int st = untrusted == Party::Alice ? k & 3 : k >> 2;
            if (su != s) continue;
            for (int y = 0; y < 2; ++y) {
                int out = (((st >> 1) & 1) * y) ^ (st & 1);
                if (exact && out == 0) et[static_cast<std::size_t>(y)] += (*local.exact_vertex_weights)[static_cast<std::size_t>(k)];
                if (out == 0) dt[static_cast<std::size_t>(y)] += (*local.vertex_weights)[static_cast<std::size_t>(k)];
            }
            if (exact) ew += (*local.exact_vertex_weights)[static_cast<std::size_t>(k)];
            dw += (*local.vertex_weights)[static_cast<std::size_t>(k)];
        }
        if (exact ? ew == 0 : dw <= 0) continue;
        u.push_back(SinglePartyBox::deterministic((s >> 1) & 1, s & 1));
        if (exact) {
            we.push_back(ew);
            t.push_back(SinglePartyBox::from_p0(et[0] / ew, et[1] / ew));
        } else {
            wd.push_back(dw);
            t.push_back(SinglePartyBox::from_p0(std::clamp(dt[0] / dw, 0.0, 1.0), std::clamp(dt[1] / dw, 0.0, 1.0)));
        }
    }
    if (exact) return make_model(untrusted, TrustedKind::Unconstrained, std::move(we), std::move(u), std::move(t));
    double s = 0;
    for (double w : wd) s += w;
    for (double &w : wd) w /= s;
    return make_model(untrusted, TrustedKind::Unconstrained, std::move(wd), std::move(u), std::move(t));
}

}  // namespace

FeasibilityResult restricted_feasibility(const Box &box, int d, Party untrusted, TrustedKind kind,
                                         const SolverConfig &cfg) {
    validate_config(cfg);
    if (d < 1) throw Error(ErrorCode::Config, "hidden-variable dimension must be at least 1");
    if (!is_nosignaling(box)) throw Error(ErrorCode::Signaling, "restricted feasibility requires a no-signaling box");

    FeasibilityResult r;
    r.dimension = d;
    r.untrusted = untrusted;
    r.trusted_kind = kind;

    auto accept = [&](HiddenVariableModel m, const std::string &route) {
        double err = certificate_error(m, box);
        bool ok = box.is_exact() && m.is_exact() ? err == 0 : err <= cfg.feasible_residual;
        if (!ok) {
            r.provenance.push_back(route + ": certificate rejected, reconstruction error " + sci(err));
            return false;
        }
        if (m.dimension() < d) m = m.padded(d);
        r.certificate = std::move(m);
        r.certificate_error = err;
        r.verdict = Verdict::Feasible;
        r.provenance.push_back(route + (r.certificate->is_exact() ? " (exact)" : " (numeric)"));
        return true;
    };

    TwoTermGeometry geom = two_term_geometry(box, untrusted, kind);
    if (d <= 2) r.provenance.push_back("two-term test: " + geom.reason);
    if (geom.model && (d >= 2 ? geom.two_term : geom.single_term) && geom.model->dimension() <= d) {
        accept(*geom.model, "two-term construction from conditional trusted boxes");
    }

    if (!r.feasible() && d >= 4 && kind == TrustedKind::Unconstrained) {
        FeasibilityResult local = local_membership(box);
        if (local.feasible()) {
            if (auto m = group_by_untrusted(local, untrusted)) accept(*m, "vertex decomposition grouped by strategy");
        }
    }

    if (cfg.starts > 0) {
        NumericSearch ns = multistart_search(box, d, untrusted, kind, cfg);
        r.residual = ns.stats;
        std::ostringstream os;
        os << "multi-start search: " << ns.stats.starts << " starts, seed " << ns.stats.seed << ", min residual "
           << sci(ns.stats.min_residual);
        r.provenance.push_back(os.str());
        if (!r.feasible() && ns.best && ns.stats.min_residual <= cfg.feasible_residual) {
            accept(*ns.best, "multi-start search");
        }
    }

    if (d == 2 && box.is_exact()) r.cases = grouping_case_engine(box, untrusted);

    if (r.feasible()) return r;
    if (d <= 2 && box.is_exact()) {
        r.verdict = Verdict::InfeasibleExact;
    } else if (r.residual && r.residual->min_residual > cfg.residual_threshold) {
        r.verdict = Verdict::InfeasibleNumeric;
    } else {
        r.verdict = Verdict::Inconclusive;
    }
    return r;
}

PropertyVerdict is_superlocal(const Box &box, int d_a, int d_b, const SolverConfig &cfg) {
    if (d_a < 1 || d_b < 1) throw Error(ErrorCode::Config, "dimensions must be at least 1");
    FeasibilityResult local = local_membership(box);
    if (!local.feasible()) throw Error(ErrorCode::Nonlocal, "superlocality is defined for local boxes only");
    PropertyVerdict v;
    v.precondition = local;
    v.evidence = restricted_feasibility(box, std::min(d_a, d_b), Party::Alice, TrustedKind::Unconstrained, cfg);
    v.holds = v.evidence.feasible() ? Tri::No : v.evidence.infeasible() ? Tri::Yes : Tri::Undetermined;
    return v;
}

PropertyVerdict is_superunsteerable(const Box &box, int d_untrusted, Direction direction, const SolverConfig &cfg) {
    Party untrusted = steering_party(direction);
    PropertyVerdict v;
    v.evidence = restricted_feasibility(box, d_untrusted, untrusted, TrustedKind::QubitMub, cfg);
    if (v.evidence.feasible()) {
        v.holds = Tri::No;
        return v;
    }
    if (d_untrusted >= 4) {
        v.holds = Tri::Undetermined;
        v.note = "no LHV-LHS model found even at the unsteerability certification dimension";
        return v;
    }
    v.precondition = restricted_feasibility(box, 4, untrusted, TrustedKind::QubitMub, cfg);
    if (!v.precondition->feasible()) {
        v.holds = Tri::Undetermined;
        v.note = "unsteerability not certified: no qubit LHV-LHS model found at d=4";
        return v;
    }
    v.holds = v.evidence.infeasible() ? Tri::Yes : Tri::Undetermined;
    return v;
}

}  // namespace steerbox
