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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steerbox/box.hpp"

namespace steerbox {

enum class TrustedKind { Unconstrained, QubitMub };
const char *trusted_kind_name(TrustedKind kind);

inline constexpr double kQubitDiscSlack = 1e-10;

/// (2q(0|0)-1)^2 + (2q(0|1)-1)^2 <= 1, exactly for rational boxes and with
/// kQubitDiscSlack otherwise.
bool qubit_mub_realizable(const SinglePartyBox &q);

/// p(ab|xy) = sum_l w_l u_l(.|.) t_l(.|.), where u is the untrusted party's
/// response and t the trusted party's.
struct HiddenVariableModel {
    Party untrusted = Party::Alice;
    TrustedKind trusted_kind = TrustedKind::Unconstrained;
    std::vector<double> weights;
    std::optional<std::vector<Rational>> exact_weights;
    std::vector<SinglePartyBox> untrusted_responses;
    std::vector<SinglePartyBox> trusted_responses;

    int dimension() const noexcept { return static_cast<int>(weights.size()); }
    bool is_exact() const;
    /// Throws InvalidArgument when sizes, weights or the trusted kind are off.
    void validate() const;
    Box reconstruct() const;
    /// Appends zero-weight terms up to `d`.
    HiddenVariableModel padded(int d) const;
};

HiddenVariableModel make_model(Party untrusted, TrustedKind kind, std::vector<Rational> weights,
                               std::vector<SinglePartyBox> untrusted_responses,
                               std::vector<SinglePartyBox> trusted_responses);
HiddenVariableModel make_model(Party untrusted, TrustedKind kind, std::vector<double> weights,
                               std::vector<SinglePartyBox> untrusted_responses,
                               std::vector<SinglePartyBox> trusted_responses);

enum class Verdict { Feasible, InfeasibleNumeric, InfeasibleExact, Inconclusive };
const char *verdict_name(Verdict v);

struct ResidualStats {
    double min_residual = 0;
    int starts = 0;
    int best_start = -1;
    std::uint64_t seed = 0;
    long long evaluations = 0;
};

/// Deterministic strategy k applies a = alpha x xor beta with (alpha, beta) =
/// (k >> 1, k & 1); labels "00", "01", "10", "11".
struct CaseVerdict {
    std::string family;  // "pair", "d4", "d3"
    std::string label;   // "P_D^00+P_D^01", "(a)", ...
    std::vector<int> strategies;
    std::vector<std::vector<int>> groups;
    bool feasible = false;
    std::vector<std::string> trace;
    std::optional<HiddenVariableModel> model;
};

struct CaseReport {
    Party untrusted = Party::Alice;
    bool single_term = false;
    std::vector<CaseVerdict> cases;

    bool all_infeasible() const;
    std::size_t count(std::string_view family) const;
};

struct FeasibilityResult {
    Verdict verdict = Verdict::Inconclusive;
    int dimension = 0;
    Party untrusted = Party::Alice;
    TrustedKind trusted_kind = TrustedKind::Unconstrained;
    std::optional<HiddenVariableModel> certificate;
    double certificate_error = 0;
    std::optional<ResidualStats> residual;
    std::optional<CaseReport> cases;
    /// Local-polytope weights over deterministic_boxes(), when computed.
    std::optional<std::vector<double>> vertex_weights;
    std::optional<std::vector<Rational>> exact_vertex_weights;
    std::vector<std::string> provenance;

    bool feasible() const noexcept { return verdict == Verdict::Feasible; }
    bool infeasible() const noexcept {
        return verdict == Verdict::InfeasibleExact || verdict == Verdict::InfeasibleNumeric;
    }
    bool exact() const;
};

struct SolverConfig {
    int starts = 2000;
    std::uint64_t seed = 20170512;
    double residual_threshold = 1e-6;
    double feasible_residual = 1e-10;
    double simplex_tolerance = 1e-12;
    int max_evaluations = 40000;
    int batch = 64;
    int threads = 0;  // 0: hardware concurrency
};

void validate_config(const SolverConfig &cfg);

FeasibilityResult local_membership(const Box &box);

struct TwoTermGeometry {
    bool single_term = false;
    bool two_term = false;
    std::string reason;
    std::optional<HiddenVariableModel> model;
};

/// Complete decision for d <= 2: the conditional trusted boxes
/// r(a,x) = p(.,b|x,.)/p(a|x) must be collinear, and on the disc for qubit-mub.
TwoTermGeometry two_term_geometry(const Box &box, Party untrusted, TrustedKind kind);

CaseReport grouping_case_engine(const Box &box, Party untrusted = Party::Alice);

struct NumericSearch {
    ResidualStats stats;
    std::optional<HiddenVariableModel> best;
};

NumericSearch multistart_search(const Box &box, int d, Party untrusted, TrustedKind kind,
                                const SolverConfig &cfg);

FeasibilityResult restricted_feasibility(const Box &box, int d, Party untrusted, TrustedKind kind,
                                         const SolverConfig &cfg = {});

enum class Tri { Yes, No, Undetermined };
const char *tri_name(Tri t);

struct PropertyVerdict {
    Tri holds = Tri::Undetermined;
    FeasibilityResult evidence;
    std::optional<FeasibilityResult> precondition;
    std::string note;

    bool exact() const { return holds != Tri::Undetermined && evidence.exact(); }
};

PropertyVerdict is_superlocal(const Box &box, int d_a, int d_b, const SolverConfig &cfg = {});
PropertyVerdict is_superunsteerable(const Box &box, int d_untrusted, Direction direction,
                                    const SolverConfig &cfg = {});

}  // namespace steerbox
