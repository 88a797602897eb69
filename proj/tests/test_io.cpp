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

#include <gtest/gtest.h>

#include <random>

#include "steerbox/certify.hpp"
#include "steerbox/error.hpp"
#include "steerbox/io.hpp"
#include "steerbox/quantum.hpp"

using namespace steerbox;

namespace {

ErrorCode code_of(auto &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no steerbox::Error thrown";
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(BoxJson, RationalRoundTripIsBitExact) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, 9);
    auto v = deterministic_boxes();
    for (int t = 0; t < 25; ++t) {
        std::vector<Rational> w(16);
        Rational s = 0;
        for (auto &x : w) s += (x = pick(rng));
        for (auto &x : w) x /= s;
        Box b = mixture(v, w);
        Json j = box_to_json(b);
        EXPECT_EQ(j["mode"], "rational");
        EXPECT_EQ(box_from_json(parse_json_text(j.dump())), b);
    }
}

TEST(BoxJson, FloatRoundTripIsBitExact) {
    Box b = noisy_chsh_box(0.707);
    Box back = box_from_json(parse_json_text(box_to_json(b).dump()));
    EXPECT_FALSE(back.is_exact());
    EXPECT_EQ(back.values(), b.values());
}

TEST(BoxJson, ScenarioAndEncoding) {
    Json j = box_to_json(one_way_discord_box());
    EXPECT_EQ(j["scenario"]["inputs_a"], 2);
    EXPECT_EQ(j["scenario"]["outputs_b"], 2);
    EXPECT_EQ(j["p"][0][0][0][1], "1/4");
    EXPECT_EQ(j["p"][0][1][0][0], "3/8");
}

TEST(BoxJson, ModeSelection) {
    Json j = box_to_json(uniform_box().as_float());
    EXPECT_FALSE(box_from_json(j).is_exact());
    j["mode"] = "rational";
    EXPECT_TRUE(box_from_json(j).is_exact());
    EXPECT_EQ(box_from_json(j), uniform_box());
}

TEST(BoxJson, Errors) {
    EXPECT_EQ(code_of([] { parse_json_text("{"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { box_from_json(Json::object()); }), ErrorCode::Parse);
    Json j = box_to_json(uniform_box());
    j["scenario"]["inputs_a"] = 3;
    EXPECT_EQ(code_of([&] { box_from_json(j); }), ErrorCode::Parse);
    j = box_to_json(uniform_box());
    j["p"][0][0][0][0] = "1/2";
    EXPECT_EQ(code_of([&] { box_from_json(j); }), ErrorCode::InvalidBox);
    j = box_to_json(uniform_box());
    j["p"][1].erase(1);
    EXPECT_EQ(code_of([&] { box_from_json(j); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([] { read_json_file("/nonexistent/box.json"); }), ErrorCode::Io);
}

TEST(StateJson, RoundTrips) {
    for (const char *name : {"one-way-discord", "maximally-mixed", "product-zz"}) {
        auto s = named_state(name);
        auto back = state_from_json(parse_json_text(state_to_json(s).dump()));
        EXPECT_LT((back.matrix() - s.matrix()).norm(), 1e-15) << name;
        EXPECT_EQ(back.exact().has_value(), s.exact().has_value());
    }
    EXPECT_EQ(code_of([] { named_state("bell"); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { state_from_json(parse_json_text(R"({"rho":[[1,0],[0,1]]})")); }),
              ErrorCode::InvalidState);
}

TEST(Reports, FeasibilityJsonCarriesVerdictAndCertificate) {
    auto r = local_membership(uniform_box());
    Json j = feasibility_to_json(r);
    EXPECT_EQ(j["verdict"], verdict_name(Verdict::Feasible));
    EXPECT_TRUE(j["exact"].get<bool>());
    EXPECT_TRUE(j.contains("vertex_weights"));
}

TEST(Reports, ClassificationOfUniformBox) {
    SolverConfig cfg;
    cfg.starts = 64;
    auto rep = classify(uniform_box(), 2, 2, cfg);
    EXPECT_TRUE(rep.is_local());
    ASSERT_TRUE(rep.superlocal);
    EXPECT_EQ(rep.superlocal->holds, Tri::No);
    for (const auto &d : rep.directions) {
        ASSERT_TRUE(d.superunsteerable);
        EXPECT_EQ(d.superunsteerable->holds, Tri::No);
        EXPECT_FALSE(d.sdi_steerable);
    }
    Json j = classification_to_json(rep);
    EXPECT_TRUE(j.contains("regions"));
    EXPECT_NE(classification_to_text(rep).find("local: yes"), std::string::npos);
}

TEST(Reports, ClassificationOfPrBox) {
    auto rep = classify(pr_box(), 2, 2);
    EXPECT_FALSE(rep.is_local());
    EXPECT_EQ(rep.regions, std::vector<std::string>{"VIII"});
    EXPECT_TRUE(rep.directions[0].sdi_steerable);
    EXPECT_TRUE(rep.directions[1].sdi_steerable);
}

TEST(Reports, ClassifyRejectsSignalingBoxes) {
    std::array<Rational, 16> t{};
    t[0] = t[4] = t[11] = t[14] = 1;
    EXPECT_EQ(code_of([&] { classify(Box::from_rational(t), 2, 2); }), ErrorCode::Signaling);
}

TEST(Models, ThreeTermAndCorrectedModelsReconstruct) {
    EXPECT_EQ(three_term_model().reconstruct(), one_way_discord_box());
    EXPECT_EQ(three_term_model().dimension(), 3);
    EXPECT_EQ(corrected_two_term_model().reconstruct(), one_way_discord_box());
    Box printed = printed_two_term_model().reconstruct();
    EXPECT_EQ(printed.p_exact(0, 0, 0, 1), Rational(0));
    EXPECT_NE(printed, one_way_discord_box());
}
