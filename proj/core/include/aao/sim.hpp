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

///////////////////////////////////////////////////////////////////////////////
//
// Forward closed-loop simulation ẋ = (A − Σ_j B_j K_j(t)) x, per-player costs
//
//   J_i = ½ x(tf)ᵀ S_if x(tf) + ½ ∫ (xᵀ Q_i x + u_iᵀ R_i u_i) dt,
//
// pursuit distances and capture, the Lyapunov decay checks on V = xᵀ P x and
// a finite-difference probe of the Nash property.
//
// Under OpponentWeighting::kSignReversed the opponent's running control
// cost uses −R_0, consistent with its signed coupling.
//
///////////////////////////////////////////////////////////////////////////////

#ifndef AAO_SIM_HPP_
#define AAO_SIM_HPP_

#include <optional>
#include <string>
#include <vector>

#include "aao/analysis.hpp"
#include "aao/game.hpp"
#include "aao/matrix.hpp"
#include "aao/riccati.hpp"

namespace aao {

enum class SimStatus { kComplete, kDiverged };

std::string ToString(SimStatus s);

struct SimOptions {
  // Forward step count; 0 reuses the gain grid.
  std::size_t steps = 0;
  // Divergence threshold on the Euclidean state norm.
  double divergence_threshold = 1e12;
};

struct Trajectory {
  TimeGrid grid;
  std::vector<Vector> x;               // x[k]
  std::vector<std::vector<Vector>> u;  // u[k][i]
  std::vector<double> J;               // per player, empty unless complete
  SimStatus status = SimStatus::kComplete;
  double divergence_time = 0.0;
  // Number of stored grid points (the full grid unless diverged).
  std::size_t size() const { return x.size(); }
};

// Classic RK4 with linearly interpolated gains. Throws std::invalid_argument
// on shape mismatches or when the gains do not cover the simulation grid.
Trajectory Simulate(const GameDefinition& game,
                    const std::vector<FeedbackGain>& gains, const Vector& x0,
                    const SimOptions& options = {});

// Composite Simpson over the stored grid (3/8 rule closes an odd count).
std::vector<double> ComputeCosts(const GameDefinition& game,
                                 const Trajectory& traj);

// Composite Simpson of uniformly spaced samples f[0..N] with spacing h.
double SimpsonIntegral(const std::vector<double>& f, double h);

struct PursuitReport {
  std::vector<std::vector<double>> distances;  // distances[k][j]
  std::optional<double> capture_time;
  std::optional<std::size_t> captured_by;  // pursuer index, 0-based
  std::vector<double> final_distances;
};

// Block j of the state is a planar displacement; d_j = ‖x_j‖₂. Capture is
// the first grid time with min_j d_j <= radius, ties to the lowest index.
PursuitReport ComputePursuitReport(const Trajectory& traj,
                                   double capture_radius);

// Absolute positions (evader first, then pursuers) for plotting. Assumes
// the pursuit layout: the evader moves with u_0, pursuer j sits at
// p_E − x_j. The result depends on the chosen evader start.
std::vector<std::vector<Vector>> AbsoluteTracks(const Trajectory& traj,
                                                const Vector& evader_start);

struct LyapunovReport {
  LyapunovConstants constants;
  double decay_rate = 0.0;  // λ_min(Q̂)/λ_max(P)
  std::vector<double> V;
  bool strictly_decreasing = false;
  bool exponential_bound = false;
  bool ratio_bound = false;
  // Worst violations (<= 0 when the check passes).
  double max_increase = 0.0;
  double max_bound_excess = 0.0;
  double max_ratio_excess = 0.0;
};

// V(t_k) = x_kᵀ P(t_k) x_k. The trajectory grid must equal the solution grid.
std::vector<double> LyapunovValues(const Trajectory& traj,
                                   const RiccatiSolution& sol);

// Throws NotApplicableError when the boundedness hypotheses fail.
LyapunovReport LyapunovCheck(const GameDefinition& game,
                             const Trajectory& traj,
                             const RiccatiSolution& sol);

struct ProbePoint {
  double epsilon = 0.0;
  double J = 0.0;
  bool diverged = false;
};

// Re-simulates with K_i(t) + ε·direction for each ε, others fixed.
std::vector<ProbePoint> StationarityProbe(const GameDefinition& game,
                                          const std::vector<FeedbackGain>& gains,
                                          const Vector& x0, std::size_t player,
                                          const Matrix& direction,
                                          const std::vector<double>& epsilons,
                                          const SimOptions& options = {});

}  // namespace aao

#endif  // AAO_SIM_HPP_
