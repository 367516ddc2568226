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

#include "aao/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_util.hpp"

namespace aao {
namespace {

namespace fs = std::filesystem;

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("aao_experiment_") + info->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Scenario ExampleIn(const std::string& sub, double tf = 2.0) const {
    Scenario s = testing::ExampleScenario();
    s.set_tf(tf);
    s.run.output_dir = (dir_ / sub).string();
    return s;
  }

  static std::string Slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  static std::size_t Lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  fs::path dir_;
};

TEST_F(ExperimentTest, NashCheckReportsSums) {
  const Scenario s = ExampleIn("nash");
  const RunResult r = aao::Run(s, Stage::kCheck);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_TRUE(r.validation.aao_compliant);
  EXPECT_NEAR(r.conditions.sum_q_pd.witness, 0.25, 1e-12);
  EXPECT_NEAR(r.conditions.sum_sf_pd.witness, 0.25, 1e-12);
  const std::string text = Slurp(dir_ / "nash" / "conditions.txt");
  EXPECT_NE(text.find("sum_Q_pd = true  min_eigenvalue = 0.25"), std::string::npos);
  EXPECT_NE(text.find("solver_status = not_run"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "nash" / "summary.txt"));
  EXPECT_FALSE(fs::exists(dir_ / "nash" / "solution.csv"));
}

TEST_F(ExperimentTest, TeamCheckReportsReducedSums) {
  Scenario s = ExampleIn("team");
  s.run.mode = Mode::kTeam;
  const RunResult r = aao::Run(s, Stage::kCheck);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_FALSE(r.conditions.sum_q_pd.pass);
  EXPECT_NEAR(r.conditions.sum_q_pd.witness, -47.0 / 12.0, 1e-12);
  EXPECT_NEAR(r.conditions.sum_sf_pd.witness, -143.0 / 12.0, 1e-12);
  const std::string text = Slurp(dir_ / "team" / "conditions.txt");
  EXPECT_NE(text.find("sum_Q_pd = false  min_eigenvalue = -3.9166"), std::string::npos);
}

TEST_F(ExperimentTest, NonCompliantGameIsValidationError) {
  Scenario s = ExampleIn("bad");
  s.pursuit->evader.q_scale = 1.0;
  const RunResult r = aao::Run(s, Stage::kSolve);
  EXPECT_EQ(r.exit_code, kExitValidation);
  EXPECT_NE(r.message.find("Q[0]"), std::string::npos) << r.message;
  EXPECT_FALSE(r.solve.has_value());
}

TEST_F(ExperimentTest, StandardWeightingBlowsUp) {
  Scenario s = testing::ExampleScenarioStandard();
  s.run.output_dir = (dir_ / "std").string();
  const RunResult r = aao::Run(s, Stage::kSolve);
  EXPECT_EQ(r.exit_code, kExitBlowUp);
  ASSERT_TRUE(r.solve.has_value());
  EXPECT_EQ(r.solve->solution.status, SolveStatus::kBlowUp);
  EXPECT_GT(r.solve->solution.event_time, 9.0);
  EXPECT_TRUE(fs::exists(dir_ / "std" / "conditions.txt"));
}

TEST_F(ExperimentTest, ZeroHorizonTrajectoryIsInitialState) {
  Scenario s = ExampleIn("zero", 0.0);
  const RunResult r = aao::Run(s, Stage::kSimulate);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  ASSERT_TRUE(r.trajectory.has_value());
  ASSERT_EQ(r.trajectory->x.size(), 1u);
  EXPECT_EQ(r.trajectory->x[0], testing::ExampleX0());
  const std::string csv = Slurp(dir_ / "zero" / "trajectory.csv");
  EXPECT_EQ(Lines(csv), 2u);
  EXPECT_EQ(csv.rfind("t,x1,", 0), 0u);
  EXPECT_NE(csv.find("\n0,2,13,7,9,-10,14,"), std::string::npos);
}

TEST_F(ExperimentTest, SimulateWritesConsistentFiles) {
  const Scenario s = ExampleIn("sim");
  const RunResult r = aao::Run(s, Stage::kSimulate);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const fs::path d = dir_ / "sim";
  const std::size_t points = r.trajectory->grid.num_points();
  EXPECT_EQ(points, 2001u);
  EXPECT_EQ(Lines(Slurp(d / "trajectory.csv")), points + 1);
  EXPECT_EQ(Lines(Slurp(d / "distances.csv")), points + 1);
  EXPECT_EQ(Lines(Slurp(d / "tracks.csv")), points + 1);
  EXPECT_EQ(Slurp(d / "distances.csv").rfind("t,d1,d2,d3\n", 0), 0u);
  // Every tenth grid point, 4 players, 36 entries each, plus header.
  EXPECT_EQ(Lines(Slurp(d / "solution.csv")), 201u * 4u * 36u + 1u);
  const std::string summary = Slurp(d / "summary.txt");
  EXPECT_NE(summary.find("sim_status = Complete"), std::string::npos);
  EXPECT_NE(summary.find("J4 = "), std::string::npos);
  ASSERT_TRUE(r.pursuit.has_value());
  EXPECT_EQ(r.pursuit->final_distances.size(), 3u);
}

TEST_F(ExperimentTest, OutputsAreDeterministic) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(aao::Run(ExampleIn(sub), Stage::kSimulate).exit_code, kExitOk);
  }
  for (const char* f : {"trajectory.csv", "distances.csv", "tracks.csv",
                        "solution.csv", "conditions.txt", "summary.txt"}) {
    EXPECT_EQ(Slurp(dir_ / "a" / f), Slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(ExperimentTest, SweepShapeAndCrossCheck) {
  Scenario s = ExampleIn("sweep");
  s.run.dt = 2e-3;
  const std::vector<double> tfs = {1.0, 2.0, 3.0};
  const SweepResult r = RunSweep(s, tfs, {Mode::kNash, Mode::kTeam}, true);
  ASSERT_EQ(r.cells.size(), 6u);
  EXPECT_EQ(r.cells[0].mode, Mode::kNash);
  EXPECT_EQ(r.cells[1].mode, Mode::kTeam);
  EXPECT_EQ(r.cells[4].tf, 3.0);
  for (const auto& c : r.cells) {
    EXPECT_FALSE(c.diverged);
    EXPECT_EQ(c.final_distances.size(), 3u);
  }
  ASSERT_TRUE(r.cross_check_max_diff.has_value());
  EXPECT_LE(*r.cross_check_max_diff, 1e-6);

  const std::string csv = FormatSweepCsv(r);
  EXPECT_EQ(Lines(csv), 7u);
  EXPECT_EQ(csv.rfind("mode,tf,d1,d2,d3,captured\n", 0), 0u);
  WriteSweep(s, r);
  EXPECT_EQ(Slurp(dir_ / "sweep" / "sweep.csv"), csv);
  EXPECT_NE(Slurp(dir_ / "sweep" / "sweep_meta.txt").find("cross_check_max_diff"),
            std::string::npos);
}

TEST_F(ExperimentTest, SweepMatchesSingleRuns) {
  Scenario s = ExampleIn("single", 3.0);
  s.run.dt = 2e-3;
  const SweepResult sweep = RunSweep(s, {3.0}, {Mode::kNash});
  const RunResult run = aao::Run(s, Stage::kSimulate);
  ASSERT_EQ(run.exit_code, kExitOk);
  EXPECT_EQ(sweep.cells[0].final_distances, run.pursuit->final_distances);
}

TEST_F(ExperimentTest, SolveModeTeamMapsGainsBack) {
  const GameDefinition g = ExampleIn("x").Game();
  const ModeSolution m = SolveMode(g, Mode::kTeam, {}, 1e-2);
  ASSERT_TRUE(m.solution.complete());
  ASSERT_TRUE(m.team.has_value());
  EXPECT_EQ(m.solved.num_players(), 2u);
  ASSERT_EQ(m.player_gains.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(m.player_gains[i].K.front().rows(), 2u);
  }
  EXPECT_EQ(m.player_gains[0].K.back(), m.solved_gains[0].K.back());
}

TEST(WriteFileAtomicTest, ReplacesContent) {
  const fs::path p = fs::temp_directory_path() / "aao_atomic_test.txt";
  WriteFileAtomic(p.string(), "one");
  WriteFileAtomic(p.string(), "two");
  std::ifstream in(p);
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "two");
  EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
  fs::remove(p);
}

}  // namespace
}  // namespace aao
