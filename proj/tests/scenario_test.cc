// Copyright 2026 The AAO Games Authors
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

#include "aao/scenario.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "json.hpp"
#include "test_util.hpp"

namespace aao {
namespace {

using Json = nlohmann::json;

Json ExampleJson() {
  std::ifstream in(testing::SourcePath("scenarios/pursuit_example.scenario"));
  return Json::parse(in);
}

Json ExplicitJson() {
  return Json::parse(R"({
    "schema_version": 1,
    "explicit": {
      "A": [[0.5]],
      "players": [
        {"B": [[1.0]], "Q": [[-1.0]], "R": [[1.0]], "S_f": [[-1.0]]},
        {"B": [[1.0]], "Q": [[2.0]], "R": [[1.0]], "S_f": [[2.0]]}
      ],
      "t0": 0.0, "tf": 2.0, "x0": [1.0]
    },
    "run": {"mode": "nash"}
  })");
}

std::string ErrorOf(const Json& j) {
  try {
    ParseScenario(j.dump());
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioTest, ShippedScenarioParses) {
  const Scenario s = testing::ExampleScenario();
  ASSERT_TRUE(s.pursuit.has_value());
  EXPECT_FALSE(s.explicit_game.has_value());
  EXPECT_EQ(s.tf(), 10.0);
  EXPECT_EQ(s.run.capture_radius, 0.1);
  EXPECT_EQ(s.run.dt, 1e-3);
  EXPECT_EQ(s.run.mode, Mode::kNash);
  EXPECT_EQ(s.InitialState(), testing::ExampleX0());
  const GameDefinition g = s.Game();
  EXPECT_EQ(g.num_players(), 4u);
  EXPECT_EQ(g.opponent_weighting, OpponentWeighting::kSignReversed);
  EXPECT_EQ(s.BoundQ(), SymmetricMatrix::Zero(6));
}

TEST(ScenarioTest, ExplicitGameParses) {
  const Scenario s = ParseScenario(ExplicitJson().dump());
  ASSERT_TRUE(s.explicit_game.has_value());
  EXPECT_EQ(s.Game().A, Matrix{{0.5}});
  EXPECT_EQ(s.Game().players[1].Q, SymmetricMatrix(Matrix{{2.0}}));
  EXPECT_EQ(s.InitialState(), Vector{1.0});
  EXPECT_EQ(s.Game().opponent_weighting, OpponentWeighting::kStandard);
}

TEST(ScenarioTest, DefaultsFilledIn) {
  Json j = ExampleJson();
  j["run"] = Json::object({{"mode", "team"}});
  const Scenario s = ParseScenario(j.dump());
  EXPECT_EQ(s.run.mode, Mode::kTeam);
  EXPECT_TRUE(s.run.alphas.empty());
  EXPECT_EQ(s.run.dt, 1e-3);
  EXPECT_EQ(s.run.rq_sample_stride, 10u);
  EXPECT_EQ(s.run.solution_stride, 1u);
  EXPECT_FALSE(s.run.bound_q.has_value());
}

TEST(ScenarioTest, NonPositiveDtRejected) {
  Json j = ExampleJson();
  j["run"]["dt"] = -1.0;
  const std::string err = ErrorOf(j);
  EXPECT_NE(err.find("dt must be positive"), std::string::npos) << err;
  EXPECT_EQ(err.rfind("$.run.dt", 0), 0u) << err;
  j["run"]["dt"] = 0.0;
  EXPECT_NE(ErrorOf(j).find("dt must be positive"), std::string::npos);
}

TEST(ScenarioTest, UnknownKeyReportsPath) {
  Json j = ExampleJson();
  j["run"]["foo"] = 1;
  EXPECT_EQ(ErrorOf(j).rfind("$.run.foo: unknown key", 0), 0u);
  j = ExampleJson();
  j["pursuit"]["pursuers"][1]["rr"] = 1;
  EXPECT_EQ(ErrorOf(j).rfind("$.pursuit.pursuers[1].rr", 0), 0u);
  j = ExampleJson();
  j["extra"] = true;
  EXPECT_EQ(ErrorOf(j).rfind("$.extra", 0), 0u);
}

TEST(ScenarioTest, ExactlyOneGameSection) {
  Json j = ExampleJson();
  j["explicit"] = ExplicitJson()["explicit"];
  EXPECT_NE(ErrorOf(j).find("exactly one"), std::string::npos);
  j.erase("explicit");
  j.erase("pursuit");
  EXPECT_NE(ErrorOf(j).find("exactly one"), std::string::npos);
}

TEST(ScenarioTest, SchemaVersionChecked) {
  Json j = ExampleJson();
  j["schema_version"] = 2;
  EXPECT_EQ(ErrorOf(j).rfind("$.schema_version", 0), 0u);
  j.erase("schema_version");
  EXPECT_EQ(ErrorOf(j).rfind("$.schema_version", 0), 0u);
  EXPECT_THROW(ParseScenario("{not json"), ScenarioError);
}

TEST(ScenarioTest, DimensionMismatchNamesMatrix) {
  Json j = ExplicitJson();
  j["explicit"]["players"][1]["R"] = Json::parse("[[1.0, 0.0], [0.0, 1.0]]");
  const std::string err = ErrorOf(j);
  EXPECT_NE(err.find("dimension mismatch"), std::string::npos) << err;
  EXPECT_NE(err.find("R[1]"), std::string::npos) << err;
  j = ExplicitJson();
  j["explicit"]["x0"] = Json::parse("[1.0, 2.0]");
  EXPECT_NE(ErrorOf(j), "");
}

TEST(ScenarioTest, TeamWeightsValidated) {
  Json j = ExampleJson();
  j["run"]["mode"] = "team";
  j["run"]["alphas"] = Json::parse("[0.5, 0.5]");
  EXPECT_EQ(ErrorOf(j).rfind("$.run.alphas", 0), 0u);
  j["run"]["alphas"] = Json::parse("[0.5, 0.6, -0.1]");
  EXPECT_EQ(ErrorOf(j).rfind("$.run.alphas", 0), 0u);
  j["run"]["alphas"] = Json::parse("[0.5, 0.25, 0.25]");
  EXPECT_EQ(ParseScenario(j.dump()).run.alphas, (std::vector<double>{0.5, 0.25, 0.25}));
}

TEST(ScenarioTest, ModeAndWeightingParse) {
  EXPECT_EQ(ParseMode("team"), Mode::kTeam);
  EXPECT_THROW(ParseMode("coop"), std::invalid_argument);
  Json j = ExampleJson();
  j["pursuit"]["opponent_weighting"] = "flipped";
  EXPECT_EQ(ErrorOf(j).rfind("$.pursuit.opponent_weighting", 0), 0u);
}

TEST(ScenarioTest, EmitParseRoundTrip) {
  for (const Json& j : {ExampleJson(), ExplicitJson()}) {
    Json doc = j;
    doc["run"]["alphas"] = Json::array();
    doc["run"]["dt"] = 0.1 + 0.2;  // not exactly representable in short form
    const Scenario s = ParseScenario(doc.dump());
    const std::string once = EmitScenario(s);
    const Scenario back = ParseScenario(once);
    EXPECT_EQ(EmitScenario(back), once);
    EXPECT_EQ(back.run.dt, s.run.dt);
    EXPECT_EQ(back.Game().A, s.Game().A);
    for (std::size_t i = 0; i < s.Game().num_players(); ++i) {
      EXPECT_EQ(back.Game().players[i].S_f, s.Game().players[i].S_f);
      EXPECT_EQ(back.Game().players[i].R, s.Game().players[i].R);
    }
    EXPECT_EQ(back.InitialState(), s.InitialState());
  }
}

TEST(ScenarioTest, SetTfUpdatesGame) {
  Scenario s = testing::ExampleScenario();
  s.set_tf(4.0);
  EXPECT_EQ(s.tf(), 4.0);
  EXPECT_EQ(s.Game().tf, 4.0);
}

}  // namespace
}  // namespace aao
