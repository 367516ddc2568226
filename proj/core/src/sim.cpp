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

#include "aao/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aao {
namespace {

constexpr double kDecreaseSlack = 1e-9;
constexpr double kBoundSlack = 1e-6;

Vector Axpy(const Vector& x, double h, const Vector& k) {
  Vector out(x.size());
  for (std::size_t r = 0; r < x.size(); ++r) out[r] = x[r] + h * k[r];
  return out;
}

void CheckGains(const GameDefinition& game,
                const std::vector<FeedbackGain>& gains, const TimeGrid& grid) {
  if (gains.size() != game.num_players()) {
    throw std::invalid_argument("Simulate: need one gain per player");
  }
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const auto& g = gains[i];
    if (g.K.size() != g.grid.num_points()) {
      throw std::invalid_argument("Simulate: gain table does not match grid");
    }
    if (g.grid.t0() > grid.t0() || g.grid.tf() < grid.tf()) {
      throw std::invalid_argument("Simulate: gains do not cover [t0, tf]");
    }
    for (const auto& k : g.K) {
      if (k.rows() != game.num_inputs(i) || k.cols() != game.n()) {
        throw std::invalid_argument("Simulate: gain shape mismatch for player " +
                                    std::to_string(i));
      }
    }
  }
}

Matrix ClosedLoopAt(const GameDefinition& game,
                    const std::vector<FeedbackGain>& gains, double t) {
  Matrix a = game.A;
  for (std::size_t j = 0; j < gains.size(); ++j) {
    a -= game.players[j].B * GainAt(gains[j], t);
  }
  return a;
}

bool Finite(const Vector& x, double threshold) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return EuclideanNorm(x) <= threshold;
}

}  // namespace

std::string ToString(SimStatus s) {
  return s == SimStatus::kComplete ? "Complete" : "Diverged";
}

Trajectory Simulate(const GameDefinition& game,
                    const std::vector<FeedbackGain>& gains, const Vector& x0,
                    const SimOptions& options) {
  CheckDimensions(game);
  if (x0.size() != game.n()) {
    throw std::invalid_argument("Simulate: x0 has dimension " +
                                std::to_string(x0.size()) + ", expected " +
                                std::to_string(game.n()));
  }
  if (gains.empty()) throw std::invalid_argument("Simulate: no gains");
  const TimeGrid& gain_grid = gains.front().grid;
  const TimeGrid grid =
      options.steps == 0
          ? gain_grid
          : TimeGrid(gain_grid.t0(), gain_grid.tf(), options.steps);
  CheckGains(game, gains, grid);

  Trajectory traj;
  traj.grid = grid;
  traj.x.reserve(grid.num_points());
  traj.x.push_back(x0);
  const double h = grid.dt();
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    const double t = grid.At(k);
    const Matrix a0 = ClosedLoopAt(game, gains, t);
    const Matrix a_mid = ClosedLoopAt(game, gains, t + 0.5 * h);
    const Matrix a1 = ClosedLoopAt(game, gains, grid.At(k + 1));
    const Vector& x = traj.x.back();
    const Vector k1 = a0 * x;
    const Vector k2 = a_mid * Axpy(x, 0.5 * h, k1);
    const Vector k3 = a_mid * Axpy(x, 0.5 * h, k2);
    const Vector k4 = a1 * Axpy(x, h, k3);
    Vector next(x.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
      next[r] = x[r] + h / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
    }
    if (!Finite(next, options.divergence_threshold)) {
      traj.status = SimStatus::kDiverged;
      traj.divergence_time = grid.At(k + 1);
      break;
    }
    traj.x.push_back(std::move(next));
  }

  traj.u.resize(traj.x.size());
  for (std::size_t k = 0; k < traj.x.size(); ++k) {
    const double t = grid.At(k);
    for (std::size_t i = 0; i < gains.size(); ++i) {
      Vector u = GainAt(gains[i], t) * traj.x[k];
      for (double& v : u) v = -v;
      traj.u[k].push_back(std::move(u));
    }
  }
  if (traj.status == SimStatus::kComplete) traj.J = ComputeCosts(game, traj);
  return traj;
}

double SimpsonIntegral(const std::vector<double>& f, double h) {
  if (f.size() < 2) return 0.0;
  const std::size_t n = f.size() - 1;
  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  const std::size_t simpson_end = n % 2 == 0 ? n : n - 3;
  double sum = 0.0;
  if (simpson_end > 0) {
    double acc = f[0] + f[simpson_end];
    for (std::size_t k = 1; k < simpson_end; ++k) {
      acc += (k % 2 == 1 ? 4.0 : 2.0) * f[k];
    }
    sum += h / 3.0 * acc;
  }
  if (simpson_end != n) {
    const std::size_t s = simpson_end;
    sum += 3.0 * h / 8.0 *
           (f[s] + 3.0 * f[s + 1] + 3.0 * f[s + 2] + f[s + 3]);
  }
  return sum;
}

std::vector<double> ComputeCosts(const GameDefinition& game,
                                 const Trajectory& traj) {
  const std::size_t m = game.num_players();
  std::vector<double> J(m, 0.0);
  if (traj.x.empty()) return J;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = game.players[i];
    const SymmetricMatrix r = EffectiveControlWeight(game, i);
    std::vector<double> f(traj.x.size());
    for (std::size_t k = 0; k < traj.x.size(); ++k) {
      f[k] = QuadraticForm(p.Q, traj.x[k]) + QuadraticForm(r, traj.u[k][i]);
    }
    J[i] = 0.5 * QuadraticForm(p.S_f, traj.x.back()) +
           0.5 * SimpsonIntegral(f, traj.grid.dt());
  }
  return J;
}

PursuitReport ComputePursuitReport(const Trajectory& traj,
                                   double capture_radius) {
  if (traj.x.empty()) throw std::invalid_argument("empty trajectory");
  const std::size_t n = traj.x.front().size();
  if (n % 2 != 0) {
    throw std::invalid_argument("pursuit report needs an even state dimension");
  }
  const std::size_t k = n / 2;
  PursuitReport rep;
  rep.distances.reserve(traj.x.size());
  for (std::size_t t = 0; t < traj.x.size(); ++t) {
    const Vector& x = traj.x[t];
    std::vector<double> d(k);
    std::size_t best = 0;
    for (std::size_t j = 0; j < k; ++j) {
      d[j] = std::hypot(x[2 * j], x[2 * j + 1]);
      if (d[j] < d[best]) best = j;
    }
    if (!rep.capture_time && d[best] <= capture_radius) {
      rep.capture_time = traj.grid.At(t);
      rep.captured_by = best;
    }
    rep.distances.push_back(std::move(d));
  }
  rep.final_distances = rep.distances.back();
  return rep;
}

std::vector<std::vector<Vector>> AbsoluteTracks(const Trajectory& traj,
                                                const Vector& evader_start) {
  if (evader_start.size() != 2) {
    throw std::invalid_argument("AbsoluteTracks: evader start must be planar");
  }
  std::vector<std::vector<Vector>> tracks;
  if (traj.x.empty()) return tracks;
  const std::size_t k = traj.x.front().size() / 2;
  const double h = traj.grid.dt();
  Vector evader = evader_start;
  for (std::size_t t = 0; t < traj.x.size(); ++t) {
    if (t > 0) {
      const Vector& a = traj.u[t - 1][0];
      const Vector& b = traj.u[t][0];
      if (a.size() != 2) {
        throw std::invalid_argument("AbsoluteTracks: evader control must be 2-D");
      }
      for (std::size_t c = 0; c < 2; ++c) evader[c] += 0.5 * h * (a[c] + b[c]);
    }
    std::vector<Vector> row{evader};
    for (std::size_t j = 0; j < k; ++j) {
      row.push_back({evader[0] - traj.x[t][2 * j],
                     evader[1] - traj.x[t][2 * j + 1]});
    }
    tracks.push_back(std::move(row));
  }
  return tracks;
}

std::vector<double> LyapunovValues(const Trajectory& traj,
                                   const RiccatiSolution& sol) {
  if (!(traj.grid == sol.grid)) {
    throw std::invalid_argument(
        "LyapunovValues: trajectory and solution grids differ");
  }
  if (!sol.complete()) {
    throw std::invalid_argument("LyapunovValues: incomplete solution");
  }
  std::vector<double> v;
  v.reserve(traj.x.size());
  for (std::size_t k = 0; k < traj.x.size(); ++k) {
    v.push_back(QuadraticForm(ComputeP(sol, k), traj.x[k]));
  }
  return v;
}

LyapunovReport LyapunovCheck(const GameDefinition& game,
                             const Trajectory& traj,
                             const RiccatiSolution& sol) {
  LyapunovReport rep;
  rep.constants = ComputeLyapunovConstants(game, sol);
  rep.decay_rate = rep.constants.q_hat_min / rep.constants.p_max;
  rep.V = LyapunovValues(traj, sol);
  const double t0 = traj.grid.t0();
  const double v0 = rep.V.front();
  const double x0_sq = [&] {
    const double nrm = EuclideanNorm(traj.x.front());
    return nrm * nrm;
  }();
  const double cond = rep.constants.p_max / rep.constants.p_min;
  rep.max_increase = -std::numeric_limits<double>::infinity();
  rep.max_bound_excess = -std::numeric_limits<double>::infinity();
  rep.max_ratio_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rep.V.size(); ++k) {
    const double decay = std::exp(-rep.decay_rate * (traj.grid.At(k) - t0));
    if (k > 0) {
      rep.max_increase = std::max(rep.max_increase, rep.V[k] - rep.V[k - 1]);
    }
    rep.max_bound_excess = std::max(
        rep.max_bound_excess, rep.V[k] - v0 * decay * (1.0 + kBoundSlack));
    if (x0_sq > 0.0) {
      const double nrm = EuclideanNorm(traj.x[k]);
      rep.max_ratio_excess =
          std::max(rep.max_ratio_excess,
                   nrm * nrm / x0_sq - cond * decay * (1.0 + kBoundSlack));
    }
  }
  if (rep.V.size() < 2) rep.max_increase = 0.0;
  if (x0_sq == 0.0) rep.max_ratio_excess = 0.0;
  rep.strictly_decreasing = rep.max_increase <= kDecreaseSlack;
  rep.exponential_bound = rep.max_bound_excess <= 0.0;
  rep.ratio_bound = rep.max_ratio_excess <= 0.0;
  return rep;
}

std::vector<ProbePoint> StationarityProbe(const GameDefinition& game,
                                          const std::vector<FeedbackGain>& gains,
                                          const Vector& x0, std::size_t player,
                                          const Matrix& direction,
                                          const std::vector<double>& epsilons,
                                          const SimOptions& options) {
  if (player >= gains.size()) {
    throw std::out_of_range("StationarityProbe: player index out of range");
  }
  const auto& base = gains[player];
  if (base.K.empty() || direction.rows() != base.K.front().rows() ||
      direction.cols() != base.K.front().cols()) {
    throw std::invalid_argument(
        "StationarityProbe: direction must be shaped like K_i");
  }
  std::vector<ProbePoint> out;
  for (double eps : epsilons) {
    std::vector<FeedbackGain> perturbed = gains;
    if (eps != 0.0) {
      for (auto& k : perturbed[player].K) k += direction * eps;
    }
    const Trajectory traj = Simulate(game, perturbed, x0, options);
    ProbePoint p{eps, std::numeric_limits<double>::quiet_NaN(), false};
    if (traj.status == SimStatus::kComplete) {
      p.J = traj.J[player];
    } else {
      p.diverged = true;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace aao
