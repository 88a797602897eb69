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
#include <optional>
#include <string>
#include <vector>

#include "steerbox/decomp.hpp"
#include "steerbox/io.hpp"

namespace steerbox {

struct DirectionReport {
    Direction direction = Direction::AliceToBob;
    std::optional<PropertyVerdict> superunsteerable;
    bool sdi_steerable = false;
};

struct ClassificationReport {
    int d_a = 2;
    int d_b = 2;
    std::uint64_t seed = 0;
    bool nosignaling = false;
    FeasibilityResult local;
    ChshMax chsh{};
    std::optional<PropertyVerdict> superlocal;
    std::array<DirectionReport, 2> directions;
    std::vector<std::string> regions;  // empty: undetermined
    std::vector<std::string> notes;

    bool is_local() const { return local.feasible(); }
};

ClassificationReport classify(const Box &box, int d_a, int d_b, const SolverConfig &cfg = {});
Json classification_to_json(const ClassificationReport &r);
std::string classification_to_text(const ClassificationReport &r);

/// The printed two-term model for the one-way discordant box (Bob untrusted)
/// and the corrected one that reconstructs it.
HiddenVariableModel printed_two_term_model();
HiddenVariableModel corrected_two_term_model();
/// Three-term model with Alice untrusted and qubit trusted boxes.
HiddenVariableModel three_term_model();

enum class ClaimVerdict { Pass, Fail, Inconclusive, Erratum };
const char *claim_verdict_name(ClaimVerdict v);

struct Claim {
    std::string claim_id;
    std::string anchor;
    ClaimVerdict verdict = ClaimVerdict::Fail;
    std::string evidence;
    Json details;
    double seconds = 0;
};

struct ReproductionOptions {
    SolverConfig solver;
    /// Evaluate the printed two-term tables in place of the corrected ones.
    bool printed_tables = false;
};

struct ReproductionReport {
    std::vector<Claim> claims;

    bool all_pass() const;
    bool any_fail() const;
    Json to_json() const;
    std::string to_text() const;
};

ReproductionReport reproduce_claims(const ReproductionOptions &opts = {});
/// Writes report.json and report.txt into `out_dir` (created if missing).
void write_reproduction(const ReproductionReport &report, const std::string &out_dir);

}  // namespace steerbox
