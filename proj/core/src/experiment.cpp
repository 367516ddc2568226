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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "aao/format.hpp"

namespace aao {
namespace {

namespace fs = std::filesystem;

TeamWeights WeightsFor(const GameDefinition& game,
                       const std::vector<double>& alphas) {
  if (alphas.empty()) return TeamWeights::Uniform(game.num_players() - 1);
  return TeamWeights{alphas};
}

// The game whose sums and couplings the conditions report describes.
GameDefinition ConditionsGame(const Scenario& s, const GameDefinition& game) {
  if (s.run.mode == Mode::kNash) return game;
  return BuildTeamGame(game, WeightsFor(game, s.run.alphas)).reduced;
}

std::string Join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += FormatReal(v[i]);
  }
  return out;
}

std::string OutPath(const Scenario& s, const char* name) {
  return (fs::path(s.run.output_dir) / name).string();
}

void WriteSummary(const Scenario& s, const RunResult& r, Stage stage) {
  std::ostringstream os;
  const GameDefinition game = s.Game();
  os << "stage = "
     << (stage == Stage::kCheck   ? "check"
         : stage == Stage::kSolve ? "solve"
                                  : "simulate")
     << "\n";
  os << "mode = " << ToString(s.run.mode) << "\n";
  if (s.run.mode == Mode::kTeam) {
    os << "alphas = " << Join(WeightsFor(game, s.run.alphas).alpha) << "\n";
  }
  os << "opponent_weighting = " << ToString(game.opponent_weighting) << "\n";
  os << "players = " << game.num_players() << "\n";
  os << "state_dim = " << game.n() << "\n";
  os << "t0 = " << FormatReal(s.t0()) << "\n";
  os << "tf = " << FormatReal(s.tf()) << "\n";
  os << "dt = " << FormatReal(s.run.dt) << "\n";
  os << "aao_compliant = " << (r.validation.aao_compliant ? "true" : "false")
     << "\n";
  if (const auto bad = r.validation.FirstFailure()) {
    os << "first_violation = " << bad->matrix << "  witness = "
       << FormatReal(bad->witness) << "\n";
  }
  if (r.solve) {
    const auto& sol = r.solve->solution;
    os << "steps = " << sol.grid.steps() << "\n";
    os << "solver_status = " << ToString(sol.status) << "\n";
    if (!sol.complete()) {
      os << "event_time = " << FormatReal(sol.event_time) << "\n";
      os << "reason = " << sol.reason << "\n";
    }
  }
  if (r.trajectory) {
    const auto& traj = *r.trajectory;
    os << "sim_status = " << ToString(traj.status) << "\n";
    if (traj.status == SimStatus::kDiverged) {
      os << "divergence_time = " << FormatReal(traj.divergence_time) << "\n";
    }
    for (std::size_t i = 0; i < traj.J.size(); ++i) {
      os << "J" << i + 1 << " = " << FormatReal(traj.J[i]) << "\n";
    }
    if (r.solve && r.solve->team && traj.status == SimStatus::kComplete) {
      const auto& tg = *r.solve->team;
      double jt = 0.0;
      for (std::size_t j = 0; j < tg.weights.alpha.size(); ++j) {
        jt += tg.weights.alpha[j] * traj.J[j + 1];
      }
      os << "J_team = " << FormatReal(jt) << "\n";
    }
    os << "x_final = " << Join(traj.x.back()) << "\n";
  }
  if (r.pursuit) {
    os << "final_distances = " << Join(r.pursuit->final_distances) << "\n";
    if (r.pursuit->capture_time) {
      os << "capture_time = " << FormatReal(*r.pursuit->capture_time) << "\n";
      os << "captured_by = " << *r.pursuit->captured_by + 1 << "\n";
    } else {
      os << "capture_time = none\n";
    }
    os << "tracks = convention-dependent (evader_start = "
       << Join(s.pursuit ? s.pursuit->evader_start : Vector{0.0, 0.0})
       << ")\n";
  }
  if (!r.message.empty()) os << "message = " << r.message << "\n";
  WriteFileAtomic(OutPath(s, "summary.txt"), os.str());
}

}  // namespace

void WriteFileAtomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

ModeSolution SolveMode(const GameDefinition& game, Mode mode,
                       const std::vector<double>& alphas, double dt) {
  ModeSolution ms;
  ms.mode = mode;
  ms.original = game;
  if (mode == Mode::kTeam) {
    ms.team = BuildTeamGame(game, WeightsFor(game, alphas));
    ms.solved = ms.team->reduced;
  } else {
    ms.solved = game;
  }
  ms.solution =
      SolveCoupled(ms.solved, TimeGrid::FromStep(game.t0, game.tf, dt));
  if (!ms.solution.complete()) return ms;
  ms.solved_gains = Gains(ms.solved, ms.solution);
  if (ms.team) {
    ms.player_gains.push_back(ms.solved_gains[0]);
    for (auto& g : TeamGainsToPlayers(*ms.team, ms.solved_gains[1])) {
      ms.player_gains.push_back(std::move(g));
    }
  } else {
    ms.player_gains = ms.solved_gains;
  }
  return ms;
}

RunResult Run(const Scenario& scenario, Stage stage) {
  CheckRunConfig(scenario);
  RunResult r;
  const GameDefinition game = scenario.Game();
  const GameDefinition cond_game = ConditionsGame(scenario, game);
  r.validation = Validate(game);
  r.conditions = StaticConditions(cond_game);

  auto finish = [&](int code) {
    r.exit_code = code;
    WriteFileAtomic(OutPath(scenario, "conditions.txt"),
                    FormatConditions(r.conditions));
    WriteSummary(scenario, r, stage);
    return r;
  };

  if (!r.validation.aao_compliant) {
    const auto bad = *r.validation.FirstFailure();
    r.message = "validation failed: " + bad.matrix + " is not " +
                ToString(bad.required) + " (witness " +
                FormatReal(bad.witness) + ")";
    return finish(kExitValidation);
  }
  if (stage == Stage::kCheck) return finish(kExitOk);

  r.solve = SolveMode(game, scenario.run.mode, scenario.run.alphas,
                      scenario.run.dt);
  const RiccatiSolution& sol = r.solve->solution;
  VerifyOptions vo;
  vo.rq_sample_stride = scenario.run.rq_sample_stride;
  vo.x0_norm = EuclideanNorm(scenario.InitialState());
  vo.radius = scenario.run.capture_radius;
  if (!(*vo.x0_norm > 0.0)) vo.x0_norm.reset();
  r.conditions = VerifySolution(r.solve->solved, sol, scenario.BoundQ(), vo);
  WriteFileAtomic(OutPath(scenario, "solution.csv"),
                  FormatSolutionCsv(sol, scenario.run.solution_stride));
  if (!sol.complete()) {
    r.message = "solver " + ToString(sol.status) + " at t = " +
                FormatReal(sol.event_time) + ": " + sol.reason;
    return finish(kExitBlowUp);
  }
  if (stage == Stage::kSolve) return finish(kExitOk);

  r.trajectory =
      Simulate(game, r.solve->player_gains, scenario.InitialState());
  const Trajectory& traj = *r.trajectory;
  WriteFileAtomic(OutPath(scenario, "trajectory.csv"),
                  FormatTrajectoryCsv(traj));
  if (game.n() % 2 == 0) {
    r.pursuit = ComputePursuitReport(traj, scenario.run.capture_radius);
    WriteFileAtomic(OutPath(scenario, "distances.csv"),
                    FormatDistancesCsv(traj, *r.pursuit));
  }
  if (scenario.pursuit) {
    WriteFileAtomic(OutPath(scenario, "tracks.csv"),
                    FormatTracksCsv(traj, scenario.pursuit->evader_start));
  }
  if (traj.status == SimStatus::kDiverged) {
    r.message = "simulation diverged at t = " +
                FormatReal(traj.divergence_time);
    return finish(kExitDivergence);
  }
  return finish(kExitOk);
}

std::string FormatSolutionCsv(const RiccatiSolution& sol, std::size_t stride) {
  std::ostringstream os;
  os << "t,player,row,col,value\n";
  if (sol.S.empty()) return os.str();
  stride = std::max<std::size_t>(stride, 1);
  const std::size_t last = sol.grid.steps();
  for (std::size_t k = sol.first_valid_index; k <= last; ++k) {
    if ((k - sol.first_valid_index) % stride != 0 && k != last) continue;
    const std::string t = FormatReal(sol.grid.At(k));
    for (std::size_t i = 0; i < sol.S[k].size(); ++i) {
      const Matrix& s = sol.S[k][i];
      for (std::size_t a = 0; a < s.rows(); ++a) {
        for (std::size_t b = 0; b < s.cols(); ++b) {
          os << t << ',' << i + 1 << ',' << a + 1 << ',' << b + 1 << ','
             << FormatReal(s(a, b)) << '\n';
        }
      }
    }
  }
  return os.str();
}

std::string FormatTrajectoryCsv(const Trajectory& traj) {
  std::ostringstream os;
  os << "t";
  if (!traj.x.empty()) {
    for (std::size_t r = 0; r < traj.x.front().size(); ++r) os << ",x" << r + 1;
    for (std::size_t i = 0; i < traj.u.front().size(); ++i) {
      for (std::size_t c = 0; c < traj.u.front()[i].size(); ++c) {
        os << ",u" << i + 1 << "_" << c + 1;
      }
    }
  }
  os << "\n";
  for (std::size_t k = 0; k < traj.x.size(); ++k) {
    os << FormatReal(traj.grid.At(k));
    for (double v : traj.x[k]) os << ',' << FormatReal(v);
    for (const auto& u : traj.u[k]) {
      for (double v : u) os << ',' << FormatReal(v);
    }
    os << "\n";
  }
  return os.str();
}

std::string FormatDistancesCsv(const Trajectory& traj,
                               const PursuitReport& r) {
  std::ostringstream os;
  os << "t";
  const std::size_t k = r.final_distances.size();
  for (std::size_t j = 0; j < k; ++j) os << ",d" << j + 1;
  os << "\n";
  for (std::size_t t = 0; t < r.distances.size(); ++t) {
    os << FormatReal(traj.grid.At(t));
    for (double d : r.distances[t]) os << ',' << FormatReal(d);
    os << "\n";
  }
  return os.str();
}

std::string FormatTracksCsv(const Trajectory& traj,
                            const Vector& evader_start) {
  const auto tracks = AbsoluteTracks(traj, evader_start);
  std::ostringstream os;
  os << "t,evader_x,evader_y";
  if (!tracks.empty()) {
    for (std::size_t j = 1; j < tracks.front().size(); ++j) {
      os << ",p" << j << "_x,p" << j << "_y";
    }
  }
  os << "\n";
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    os << FormatReal(traj.grid.At(t));
    for (const auto& p : tracks[t]) {
      os << ',' << FormatReal(p[0]) << ',' << FormatReal(p[1]);
    }
    os << "\n";
  }
  return os.str();
}

SweepResult RunSweep(const Scenario& scenario,
                     const std::vector<double>& tf_list,
                     const std::vector<Mode>& modes, bool cross_check) {
  CheckRunConfig(scenario);
  if (tf_list.empty()) throw std::invalid_argument("sweep: empty tf list");
  if (modes.empty()) throw std::invalid_argument("sweep: no modes");
  for (double tf : tf_list) {
    if (!(tf > scenario.t0())) {
      throw std::invalid_argument("sweep: every tf must exceed t0");
    }
  }
  const double radius = scenario.run.capture_radius;
  const Vector& x0 = scenario.InitialState();

  auto simulate_cell = [&](SweepCell& cell, const GameDefinition& game,
                           const std::vector<FeedbackGain>& gains) {
    const Trajectory traj = Simulate(game, gains, x0);
    if (traj.status == SimStatus::kDiverged) {
      cell.diverged = true;
      cell.status = "Diverged";
      return;
    }
    const PursuitReport rep = ComputePursuitReport(traj, radius);
    cell.final_distances = rep.final_distances;
    cell.captured = rep.capture_time.has_value();
    cell.status = "Complete";
  };

  SweepResult result;
  for (double tf : tf_list) {
    Scenario s = scenario;
    s.set_tf(tf);
    const GameDefinition game = s.Game();
    for (Mode mode : modes) {
      SweepCell cell;
      cell.mode = mode;
      cell.tf = tf;
      const ModeSolution ms = SolveMode(game, mode, s.run.alphas, s.run.dt);
      if (!ms.solution.complete()) {
        cell.diverged = true;
        cell.status = ToString(ms.solution.status);
      } else {
        simulate_cell(cell, game, ms.player_gains);
      }
      result.cells.push_back(std::move(cell));
    }
  }

  if (cross_check) {
    // The game is time invariant, so the horizon-tf solution is the tail of
    // the longest solve shifted to start at t0.
    const double tmax = *std::max_element(tf_list.begin(), tf_list.end());
    Scenario s = scenario;
    s.set_tf(tmax);
    const GameDefinition long_game = s.Game();
    double worst = 0.0;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const ModeSolution ms =
          SolveMode(long_game, modes[m], s.run.alphas, s.run.dt);
      if (!ms.solution.complete()) continue;
      for (std::size_t c = 0; c < tf_list.size(); ++c) {
        const SweepCell& fresh = result.cells[c * modes.size() + m];
        if (fresh.diverged) continue;
        const double tf = tf_list[c];
        const std::size_t steps =
            TimeGrid::FromStep(s.t0(), tf, s.run.dt).steps();
        RiccatiSolution slice;
        slice.grid = TimeGrid(s.t0(), tf, steps);
        slice.S.assign(ms.solution.S.end() - static_cast<long>(steps + 1),
                       ms.solution.S.end());
        Scenario cs = scenario;
        cs.set_tf(tf);
        const GameDefinition game = cs.Game();
        ModeSolution sliced = ms;
        sliced.solution = slice;
        sliced.solved_gains = Gains(ms.solved, slice);
        sliced.player_gains.clear();
        if (ms.team) {
          sliced.player_gains.push_back(sliced.solved_gains[0]);
          for (auto& g : TeamGainsToPlayers(*ms.team, sliced.solved_gains[1])) {
            sliced.player_gains.push_back(std::move(g));
          }
        } else {
          sliced.player_gains = sliced.solved_gains;
        }
        SweepCell cell;
        simulate_cell(cell, game, sliced.player_gains);
        if (cell.diverged) {
          worst = std::numeric_limits<double>::infinity();
          continue;
        }
        for (std::size_t j = 0; j < cell.final_distances.size(); ++j) {
          worst = std::max(worst, std::abs(cell.final_distances[j] -
                                           fresh.final_distances[j]));
        }
      }
    }
    result.cross_check_max_diff = worst;
  }
  return result;
}

std::string FormatSweepCsv(const SweepResult& r) {
  std::size_t k = 0;
  for (const auto& c : r.cells) k = std::max(k, c.final_distances.size());
  std::ostringstream os;
  os << "mode,tf";
  for (std::size_t j = 0; j < k; ++j) os << ",d" << j + 1;
  os << ",captured\n";
  for (const auto& c : r.cells) {
    os << ToString(c.mode) << ',' << FormatReal(c.tf);
    for (std::size_t j = 0; j < k; ++j) {
      os << ',' << (c.diverged ? "diverged" : FormatReal(c.final_distances[j]));
    }
    os << ',' << (c.diverged ? "diverged" : c.captured ? "true" : "false")
       << "\n";
  }
  return os.str();
}

void WriteSweep(const Scenario& scenario, const SweepResult& r) {
  WriteFileAtomic(OutPath(scenario, "sweep.csv"), FormatSweepCsv(r));
  std::ostringstream os;
  const GameDefinition game = scenario.Game();
  os << "dt = " << FormatReal(scenario.run.dt) << "  # shared by all modes\n";
  os << "opponent_weighting = " << ToString(game.opponent_weighting) << "\n";
  if (game.num_players() >= 2) {
    os << "alphas = " << Join(WeightsFor(game, scenario.run.alphas).alpha)
       << "\n";
  }
  os << "capture_radius = " << FormatReal(scenario.run.capture_radius) << "\n";
  if (r.cross_check_max_diff) {
    os << "cross_check_max_diff = " << FormatReal(*r.cross_check_max_diff)
       << "\n";
  }
  WriteFileAtomic(OutPath(scenario, "sweep_meta.txt"), os.str());
}

}  // namespace aao
