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

#include <string>

#include <json.hpp>

#include "steerbox/box.hpp"
#include "steerbox/decomp.hpp"
#include "steerbox/discord.hpp"
#include "steerbox/quantum.hpp"

namespace steerbox {

using Json = nlohmann::ordered_json;

/// {"scenario": "2222", "mode": "rational"|"float", "p": p[x][y][a][b]}.
/// Rational entries are "num/den" strings.
Json box_to_json(const Box &box);
Box box_from_json(const Json &j);

/// {"dimension": n, "rho": [[[re, im], ...], ...]}; entries may be numbers or
/// rational strings. An all-string matrix is read exactly.
Json state_to_json(const DensityMatrix &state);
DensityMatrix state_from_json(const Json &j);

/// "one-way-discord", "maximally-mixed", "product-zz".
DensityMatrix named_state(const std::string &name);

Json single_party_to_json(const SinglePartyBox &q);
Json model_to_json(const HiddenVariableModel &m);
Json case_report_to_json(const CaseReport &r);
Json feasibility_to_json(const FeasibilityResult &r);
Json property_to_json(const PropertyVerdict &v);
Json discord_to_json(const DiscordResult &r);

Json parse_json_text(const std::string &text);
Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace steerbox
