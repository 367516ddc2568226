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

// End-to-end runs over a scenario: condition checks, the backward solve,
// forward simulation, CSV/text emission and horizon sweeps.

#ifndef AAO_EXPERIMENT_HPP_
#define AAO_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "aao/analysis.hpp"
#include "aao/game.hpp"
#include "aao/riccati.hpp"
#include "aao/scenario.hpp"
#include "aao/sim.hpp"
#include "aao/team.hpp"

namespace aao {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitBlowUp = 3,
  kExitDivergence = 4,
};

// A solved game in either mode. For team mode, `solved` is the reduced
// two-player game and `player_gains` maps back to the original players.
struct ModeSolution {
  Mode mode = Mode::kNash;
  GameDefinition original;
  GameDefinition solved;
  std::optional<TeamGame> team;
  RiccatiSolution solution;
  std::vector<FeedbackGain> solved_gains;  // empty unless complete
  std::vector<FeedbackGain> player_gains;  // empty unless complete
};

// Solves the game on a grid with spacing dt over [game.t0, game.tf].
ModeSolution SolveMode(const GameDefinition& game, Mode mode,
                       const std::vector<double>& alphas, double dt);

enum class Stage { kCheck, kSolve, kSimulate };

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  ValidationReport validation;
  ConditionsReport conditions;
  std::optional<ModeSolution> solve;
  std::optional<Trajectory> trajectory;
  std::optional<PursuitReport> pursuit;
};

// Writes conditions.txt and summary.txt (all stages), solution.csv (solve
// and later), trajectory.csv, distances.csv and tracks.csv (simulate) into
// scenario.run.output_dir.
RunResult Run(const Scenario& scenario, Stage stage);

struct SweepCell {
  Mode mode = Mode::kNash;
  double tf = 0.0;
  bool diverged = false;
  std::string status;
  std::vector<double> final_distances;
  bool captured = false;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // tf-major, modes in request order
  // Largest |d_slice − d_fresh| over all cells when cross-checking.
  std::optional<double> cross_check_max_diff;
};

// Fresh solve and simulation per (tf, mode). With cross_check, also reads
// each horizon off one solve at max(tf_list) and compares final distances.
SweepResult RunSweep(const Scenario& scenario,
                     const std::vector<double>& tf_list,
                     const std::vector<Mode>& modes, bool cross_check = false);

// sweep.csv layout: mode,tf,d1..dk,captured.
std::string FormatSweepCsv(const SweepResult& r);

// Writes sweep.csv and sweep_meta.txt into output_dir.
void WriteSweep(const Scenario& scenario, const SweepResult& r);

// Writes `content` to a temporary sibling and renames it into place.
void WriteFileAtomic(const std::string& path, const std::string& content);

std::string FormatSolutionCsv(const RiccatiSolution& sol, std::size_t stride);
std::string FormatTrajectoryCsv(const Trajectory& traj);
std::string FormatDistancesCsv(const Trajectory& traj, const PursuitReport& r);
std::string FormatTracksCsv(const Trajectory& traj, const Vector& evader_start);

}  // namespace aao

#endif  // AAO_EXPERIMENT_HPP_
