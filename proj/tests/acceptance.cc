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

// Acceptance runner: one PASS/FAIL line per criterion.
//
//   aao_acceptance               run every criterion
//   aao_acceptance --criterion N run criterion N only
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aao/analysis.hpp"
#include "aao/experiment.hpp"
#include "aao/sim.hpp"
#include "aao/team.hpp"
#include "test_util.hpp"

namespace aao {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const std::vector<double> kTfs = {2, 4, 6, 8, 10, 12, 14};
const double kTableTol = 0.02;

// Rows P1..P3, columns tf = 2..14.
const double kNashTable[3][7] = {
    {8.25, 1.42, 0.25, 0.03, 0.00, 0.00, 0.00},
    {9.59, 2.22, 0.40, 0.05, 0.00, 0.00, 0.00},
    {7.19, 1.29, 0.16, 0.02, 0.00, 0.00, 0.00}};
const double kTeamTable[3][7] = {
    {1.90, 1.34, 0.91, 0.61, 0.41, 0.27, 0.18},
    {5.94, 4.18, 2.85, 1.92, 1.28, 0.85, 0.57},
    {7.39, 5.21, 3.55, 2.38, 1.59, 1.06, 0.70}};

std::vector<double> Thirds() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }

Scenario Example(Mode mode) {
  Scenario s = testing::ExampleScenario();
  s.run.mode = mode;
  s.run.dt = 1e-3;
  if (mode == Mode::kTeam) s.run.alphas = Thirds();
  return s;
}

Outcome CompareTable(const SweepResult& r, const double table[3][7]) {
  double worst = 0.0;
  std::string where;
  std::size_t compared = 0;
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    const SweepCell& cell = r.cells[c];
    if (cell.diverged) return {false, "tf=" + Num(cell.tf) + " diverged (" + cell.status + ")"};
    for (std::size_t p = 0; p < 3; ++p) {
      const double diff = std::abs(cell.final_distances[p] - table[p][c]);
      ++compared;
      if (diff > worst) {
        worst = diff;
        where = "P" + std::to_string(p + 1) + " tf=" + Num(cell.tf) + ": got " +
                Num(cell.final_distances[p]) + " vs " + Num(table[p][c]);
      }
    }
  }
  return {compared == 21 && worst <= kTableTol,
          std::to_string(compared) + " values, max |diff| = " + Num(worst) +
              " (tol " + Num(kTableTol) + ")" + (where.empty() ? "" : ", worst " + where)};
}

Outcome NashTable() {
  return CompareTable(RunSweep(Example(Mode::kNash), kTfs, {Mode::kNash}), kNashTable);
}

Outcome TeamTable() {
  const Scenario s = Example(Mode::kTeam);
  Outcome o = CompareTable(RunSweep(s, kTfs, {Mode::kTeam}), kTeamTable);
  const SweepResult long_run = RunSweep(s, {18.0}, {Mode::kTeam});
  const SweepCell& cell = long_run.cells.front();
  const bool ok18 = !cell.diverged && std::abs(cell.final_distances[0] - 0.08) <= kTableTol &&
                    cell.captured;
  o.detail += "; tf=18 P1 = " + (cell.diverged ? std::string("diverged")
                                               : Num(cell.final_distances[0])) +
              " (0.08 +/- 0.02), captured = " + (cell.captured ? "true" : "false");
  o.pass = o.pass && ok18;
  return o;
}

Outcome Witnesses() {
  const GameDefinition g = Example(Mode::kNash).Game();
  const ConditionsReport nash = StaticConditions(g);
  const TeamGame tg = BuildTeamGame(g, TeamWeights{Thirds()});
  const ConditionsReport team = StaticConditions(tg.reduced);
  const bool pass = std::abs(nash.sum_q_pd.witness - 0.25) <= 1e-9 &&
                    std::abs(nash.sum_sf_pd.witness - 0.25) <= 1e-9 &&
                    std::abs(team.sum_q_pd.witness + 3.92) <= 0.005 &&
                    std::abs(team.sum_sf_pd.witness + 11.92) <= 0.005;
  return {pass, "nash " + Num(nash.sum_q_pd.witness) + " / " + Num(nash.sum_sf_pd.witness) +
                    " (0.25 +/- 1e-9), team " + Num(team.sum_q_pd.witness) + " / " +
                    Num(team.sum_sf_pd.witness) + " (-3.92 / -11.92 +/- 0.005)"};
}

std::vector<GameDefinition> RandomGames() {
  std::mt19937_64 rng(20260415);
  std::vector<GameDefinition> games;
  for (int i = 0; i < 20; ++i) games.push_back(testing::RandomDiagonalGame(rng));
  return games;
}

RiccatiSolution SolveOn(const GameDefinition& g, double dt = 1e-3) {
  return SolveCoupled(g, TimeGrid::FromStep(g.t0, g.tf, dt));
}

// Largest λ_max(S_0) and smallest λ_min(S_i), i ≥ 1, over the grid.
std::pair<double, double> DefinitenessWitness(const RiccatiSolution& sol) {
  double s0_max = -INFINITY, others_min = INFINITY;
  for (std::size_t k = 0; k < sol.grid.num_points(); ++k) {
    s0_max = std::max(s0_max, SymEigenvalues(sol.At(k, 0)).values.back());
    for (std::size_t i = 1; i < sol.num_players(); ++i) {
      others_min = std::min(others_min, SymEigenvalues(sol.At(k, i)).values.front());
    }
  }
  return {s0_max, others_min};
}

Outcome Definiteness() {
  const GameDefinition example = Example(Mode::kNash).Game();
  std::vector<std::pair<std::string, GameDefinition>> games = {{"example", example}};
  const auto random = RandomGames();
  for (std::size_t i = 0; i < random.size(); ++i) {
    games.push_back({"random#" + std::to_string(i), random[i]});
  }
  double s0_max = -INFINITY, others_min = INFINITY;
  for (const auto& [name, g] : games) {
    const RiccatiSolution sol = SolveOn(g);
    if (!sol.complete()) return {false, name + ": solve " + ToString(sol.status)};
    const auto [a, b] = DefinitenessWitness(sol);
    s0_max = std::max(s0_max, a);
    others_min = std::min(others_min, b);
  }
  return {s0_max < 1e-9 && others_min > -1e-9,
          std::to_string(games.size()) + " games, max lambda_max(S_opponent) = " +
              Num(s0_max) + ", min lambda_min(S_others) = " + Num(others_min) +
              " (tol 1e-9)"};
}

Outcome Envelope() {
  double worst_norm_gap = -INFINITY, worst_slack = INFINITY;
  const auto games = RandomGames();
  for (std::size_t gi = 0; gi < games.size(); ++gi) {
    const GameDefinition& g = games[gi];
    const RiccatiSolution sol = SolveOn(g);
    if (!sol.complete()) return {false, "random#" + std::to_string(gi) + " solve failed"};
    const LQBound lq = SolveLQ(g, SymmetricMatrix::Zero(g.n()), sol.grid);
    for (std::size_t k = 0; k < sol.grid.num_points(); ++k) {
      Matrix gap = -1.0 * sol.At(k, 0).matrix();
      for (std::size_t i = 0; i < sol.num_players(); ++i) {
        const double nrm = FrobNorm(sol.At(k, i));
        worst_norm_gap = std::max(worst_norm_gap, nrm - lq.lq_bar);
        if (i >= 1) gap += sol.At(k, i).matrix();
      }
      const SymmetricMatrix lower = SymmetricMatrix::Symmetrize(gap);
      const SymmetricMatrix upper =
          SymmetricMatrix::Symmetrize(lq.L[k].matrix() - gap);
      worst_slack = std::min({worst_slack, SymEigenvalues(lower).values.front(),
                              SymEigenvalues(upper).values.front()});
    }
  }
  return {worst_norm_gap <= 0.0 && worst_slack >= -1e-7,
          "20 games, max(tr{S Sᵀ} - lq_bar) = " + Num(worst_norm_gap) +
              ", min ordering eigenvalue = " + Num(worst_slack) + " (slack -1e-7)"};
}

Outcome ScalarOracle() {
  const GameDefinition g = testing::ScalarLqr();
  const RiccatiSolution sol = SolveOn(g);
  const double s0 = sol.At(0, 0)(0, 0);
  const Trajectory traj = Simulate(g, Gains(g, sol), {1.0});
  auto s_at = [&](std::size_t steps) {
    return SolveCoupled(g, TimeGrid(0.0, 1.0, steps)).At(0, 0)(0, 0);
  };
  const std::size_t coarse = 10;
  const double ref = s_at(coarse * 8);
  const double ratio = std::abs(s_at(coarse) - ref) / std::abs(s_at(2 * coarse) - ref);
  const double e_s = std::abs(s0 - std::tanh(1.0));
  const double e_j = std::abs(traj.J[0] - 0.5 * std::tanh(1.0));
  return {e_s <= 1e-6 && e_j <= 1e-5 && std::abs(ratio - 16.0) <= 4.0,
          "|S(t0) - tanh 1| = " + Num(e_s) + " (1e-6), |J - tanh(1)/2| = " + Num(e_j) +
              " (1e-5), order ratio = " + Num(ratio) + " (16 +/- 4)"};
}

Outcome Lyapunov() {
  const GameDefinition g = Example(Mode::kNash).Game();
  const RiccatiSolution sol = SolveOn(g);
  if (!sol.complete()) return {false, "solve " + ToString(sol.status)};
  const Vector x0 = testing::ExampleX0();
  const Trajectory traj = Simulate(g, Gains(g, sol), x0);
  const std::vector<double> v = LyapunovValues(traj, sol);
  double max_increase = -INFINITY;
  for (std::size_t k = 1; k < v.size(); ++k) max_increase = std::max(max_increase, v[k] - v[k - 1]);
  std::string detail = "max V increase = " + Num(max_increase) + " (slack 1e-9)";
  try {
    const LyapunovReport rep = LyapunovCheck(g, traj, sol);
    const double t_min = MinHorizon(g, sol, EuclideanNorm(x0), 0.1);
    Scenario s = Example(Mode::kNash);
    s.set_tf(s.t0() + t_min);
    const GameDefinition g2 = s.Game();
    const RiccatiSolution sol2 = SolveOn(g2);
    double final_norm = INFINITY;
    if (sol2.complete()) {
      final_norm = EuclideanNorm(Simulate(g2, Gains(g2, sol2), x0).x.back());
    }
    detail += ", exponential bound " + std::string(rep.exponential_bound ? "holds" : "fails") +
              ", min_horizon = " + Num(t_min) + ", |x(tf)| = " + Num(final_norm) + " (0.1)";
    return {rep.strictly_decreasing && rep.exponential_bound && std::isfinite(t_min) &&
                t_min > 0.0 && final_norm <= 0.1,
            detail};
  } catch (const NotApplicableError& e) {
    return {false, detail + "; " + e.what()};
  }
}

Outcome Stationarity() {
  const GameDefinition g = Example(Mode::kNash).Game();
  const RiccatiSolution sol = SolveOn(g);
  if (!sol.complete()) return {false, "solve " + ToString(sol.status)};
  const auto gains = Gains(g, sol);
  const Vector x0 = testing::ExampleX0();
  const Trajectory base = Simulate(g, gains, x0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  const double eps = 1e-3;
  double worst = -INFINITY;
  std::string where;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    for (int d = 0; d < 3; ++d) {
      Matrix dir(g.num_inputs(i), g.n());
      for (std::size_t r = 0; r < dir.rows(); ++r) {
        for (std::size_t c = 0; c < dir.cols(); ++c) dir(r, c) = normal(rng);
      }
      dir *= 1.0 / std::sqrt(FrobNorm(dir));
      const auto probe = StationarityProbe(g, gains, x0, i, dir, {-eps, eps});
      if (probe[0].diverged || probe[1].diverged) {
        return {false, "player " + std::to_string(i + 1) + " probe diverged"};
      }
      const double slope = (probe[1].J - probe[0].J) / (2.0 * eps);
      const double excess = std::abs(slope) / (1.0 + std::abs(base.J[i]));
      if (excess > worst) {
        worst = excess;
        where = "player " + std::to_string(i + 1) + " slope " + Num(slope) +
                ", J " + Num(base.J[i]);
      }
    }
  }
  return {worst <= 1e-3, "max |slope|/(1+|J|) = " + Num(worst) + " (1e-3), worst " + where};
}

Outcome TeamConsistency() {
  const GameDefinition g = Example(Mode::kTeam).Game();
  const ModeSolution m = SolveMode(g, Mode::kTeam, Thirds(), 1e-3);
  if (!m.solution.complete()) return {false, "solve " + ToString(m.solution.status)};
  const TeamGame& tg = *m.team;
  double worst_a = 0.0;
  for (std::size_t k = 0; k < m.solution.grid.num_points(); ++k) {
    Matrix mono = tg.reduced.A;
    for (std::size_t j = 0; j < 2; ++j) mono -= tg.reduced.players[j].B * m.solved_gains[j].K[k];
    Matrix split = g.A;
    for (std::size_t j = 0; j < g.num_players(); ++j) split -= g.players[j].B * m.player_gains[j].K[k];
    worst_a = std::max(worst_a, (mono - split).MaxAbs());
  }
  const Vector x0 = testing::ExampleX0();
  const Trajectory team_traj = Simulate(tg.reduced, m.solved_gains, x0);
  const Trajectory traj = Simulate(g, m.player_gains, x0);
  double weighted = 0.0;
  for (std::size_t j = 0; j < 3; ++j) weighted += tg.weights.alpha[j] * traj.J[j + 1];
  const double rel = std::abs(team_traj.J[1] - weighted) / std::abs(weighted);
  return {worst_a <= 1e-12 && rel <= 1e-9,
          "max |A_mono - A_split| = " + Num(worst_a) + " (1e-12), J_T rel diff = " +
              Num(rel) + " (1e-9)"};
}

std::map<std::string, std::string> OutputsOf(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    out[e.path().filename().string()] = buf.str();
  }
  return out;
}

Outcome Determinism() {
  const fs::path root = fs::temp_directory_path() / "aao_acceptance_determinism";
  std::size_t files = 0;
  std::string detail;
  bool pass = true;
  for (const auto& entry : fs::directory_iterator(testing::SourcePath("scenarios"))) {
    if (entry.path().extension() != ".scenario") continue;
    std::map<std::string, std::string> runs[2];
    for (int rep = 0; rep < 2; ++rep) {
      Scenario s = LoadScenario(entry.path().string());
      const fs::path dir = root / (entry.path().stem().string() + std::to_string(rep));
      fs::remove_all(dir);
      s.run.output_dir = dir.string();
      Run(s, Stage::kSimulate);
      runs[rep] = OutputsOf(dir);
      fs::remove_all(dir);
    }
    std::size_t csvs = 0;
    for (const auto& [name, body] : runs[0]) {
      if (name.size() < 4 || name.substr(name.size() - 4) != ".csv") continue;
      ++csvs;
      if (!runs[1].count(name) || runs[1].at(name) != body) {
        pass = false;
        detail += " " + entry.path().filename().string() + "/" + name + " differs;";
      }
    }
    files += csvs;
  }
  fs::remove_all(root);
  return {pass && files > 0, std::to_string(files) + " CSV files compared" + detail};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& Criteria() {
  static const std::vector<Criterion> kAll = {
      {1, "Nash table reproduction", NashTable},
      {2, "Team-Nash table reproduction", TeamTable},
      {3, "condition witnesses", Witnesses},
      {4, "solution definiteness", Definiteness},
      {5, "bounded envelope and ordering", Envelope},
      {6, "scalar oracle", ScalarOracle},
      {7, "Lyapunov decay and minimum horizon", Lyapunov},
      {8, "Nash stationarity", Stationarity},
      {9, "team consistency", TeamConsistency},
      {10, "determinism", Determinism},
  };
  return kAll;
}

}  // namespace
}  // namespace aao

int main(int argc, char** argv) {
  CLI::App app{"AAO acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-10)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : aao::Criteria()) {
    if (only != 0 && c.id != only) continue;
    aao::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " ("
              << c.name << "): " << o.detail << std::endl;
  }
  return all_pass ? 0 : 1;
}
