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

#include <steerbox.h>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

std::string take(char *s) {
    std::string out = s ? s : "";
    steerbox_string_free(s);
    return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
    EXPECT_STREQ(steerbox_version(), "0.1.0");
    EXPECT_STREQ(steerbox_status_name(STEERBOX_OK), "ok");
    EXPECT_STREQ(steerbox_status_name(STEERBOX_E_SIGNALING), "signaling-box");
}

TEST(CApi, FamilyEntriesAndProperties) {
    steerbox_box *b = nullptr;
    ASSERT_EQ(steerbox_box_family("bb84", 0.5, &b), STEERBOX_OK);
    double p = 0;
    ASSERT_EQ(steerbox_box_entry(b, 0, 0, 0, 0, &p), STEERBOX_OK);
    EXPECT_DOUBLE_EQ(p, 0.375);
    int flag = 0;
    EXPECT_EQ(steerbox_box_is_exact(b, &flag), STEERBOX_OK);
    EXPECT_EQ(flag, 1);
    EXPECT_EQ(steerbox_box_is_nosignaling(b, &flag), STEERBOX_OK);
    EXPECT_EQ(flag, 1);
    double chsh = 0;
    EXPECT_EQ(steerbox_box_chsh_max(b, &chsh), STEERBOX_OK);
    EXPECT_DOUBLE_EQ(chsh, 1.0);
    EXPECT_EQ(steerbox_box_entry(b, 2, 0, 0, 0, &p), STEERBOX_E_INVALID_ARGUMENT);
    steerbox_box_free(b);
}

TEST(CApi, ErrorsCarryMessages) {
    steerbox_box *b = nullptr;
    EXPECT_EQ(steerbox_box_family("chsh", 1.5, &b), STEERBOX_E_RANGE);
    EXPECT_EQ(b, nullptr);
    EXPECT_NE(std::string(steerbox_last_error()).find("visibility"), std::string::npos);
    EXPECT_EQ(steerbox_box_family("nope", 0.5, &b), STEERBOX_E_INVALID_ARGUMENT);
    EXPECT_EQ(steerbox_box_from_json("{not json", &b), STEERBOX_E_PARSE);
    EXPECT_EQ(steerbox_box_from_json(nullptr, &b), STEERBOX_E_INVALID_ARGUMENT);
    EXPECT_EQ(steerbox_box_load("/nonexistent/x.json", &b), STEERBOX_E_IO);
    steerbox_state *s = nullptr;
    EXPECT_EQ(steerbox_state_named("bell", &s), STEERBOX_E_INVALID_ARGUMENT);
}

TEST(CApi, JsonRoundTripThroughFile) {
    steerbox_box *b = nullptr;
    ASSERT_EQ(steerbox_box_family("one-way-discord", 0, &b), STEERBOX_OK);
    auto path = (std::filesystem::temp_directory_path() / "steerbox_capi_box.json").string();
    ASSERT_EQ(steerbox_box_save(b, path.c_str()), STEERBOX_OK);
    steerbox_box *c = nullptr;
    ASSERT_EQ(steerbox_box_load(path.c_str(), &c), STEERBOX_OK);
    char *j1 = nullptr;
    char *j2 = nullptr;
    ASSERT_EQ(steerbox_box_to_json(b, &j1), STEERBOX_OK);
    ASSERT_EQ(steerbox_box_to_json(c, &j2), STEERBOX_OK);
    EXPECT_EQ(take(j1), take(j2));
    steerbox_box *d = nullptr;
    char *j3 = nullptr;
    ASSERT_EQ(steerbox_box_to_json(c, &j3), STEERBOX_OK);
    std::string text = take(j3);
    ASSERT_EQ(steerbox_box_from_json(text.c_str(), &d), STEERBOX_OK);
    steerbox_box_free(b);
    steerbox_box_free(c);
    steerbox_box_free(d);
    std::remove(path.c_str());
}

TEST(CApi, AnalyzeAndFeasibility) {
    steerbox_box *b = nullptr;
    ASSERT_EQ(steerbox_box_family("uniform", 0, &b), STEERBOX_OK);
    steerbox_config cfg;
    steerbox_config_default(&cfg);
    cfg.starts = 32;
    char *json = nullptr;
    char *text = nullptr;
    ASSERT_EQ(steerbox_analyze(b, 2, 2, &cfg, &json, &text), STEERBOX_OK);
    EXPECT_NE(take(json).find("\"regions\""), std::string::npos);
    EXPECT_NE(take(text).find("local: yes"), std::string::npos);
    char *res = nullptr;
    ASSERT_EQ(steerbox_restricted_feasibility(b, 1, STEERBOX_ALICE, STEERBOX_TRUSTED_QUBIT_MUB, &cfg, &res),
              STEERBOX_OK);
    EXPECT_NE(take(res).find("\"feasible\""), std::string::npos);
    cfg.residual_threshold = -1;
    EXPECT_EQ(steerbox_analyze(b, 2, 2, &cfg, nullptr, nullptr), STEERBOX_E_CONFIG);
    steerbox_box_free(b);

    steerbox_box *pr = nullptr;
    ASSERT_EQ(steerbox_box_family("pr", 0, &pr), STEERBOX_OK);
    steerbox_config_default(&cfg);
    ASSERT_EQ(steerbox_analyze(pr, 2, 2, &cfg, &json, nullptr), STEERBOX_OK);
    EXPECT_NE(take(json).find("VIII"), std::string::npos);
    steerbox_box_free(pr);
}

TEST(CApi, Discord) {
    steerbox_state *s = nullptr;
    ASSERT_EQ(steerbox_state_named("one-way-discord", &s), STEERBOX_OK);
    double ab = 0, ba = 1;
    ASSERT_EQ(steerbox_discord(s, STEERBOX_A_TO_B, &ab, nullptr), STEERBOX_OK);
    ASSERT_EQ(steerbox_discord(s, STEERBOX_B_TO_A, &ba, nullptr), STEERBOX_OK);
    EXPECT_GT(ab, 0.05);
    EXPECT_LT(ba, 1e-6);
    steerbox_state_free(s);
    steerbox_state *bad = nullptr;
    EXPECT_EQ(steerbox_state_from_json(R"({"rho":[[2,0],[0,0]]})", &bad), STEERBOX_E_INVALID_STATE);
}
