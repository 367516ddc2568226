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
// Backward integration of the M-coupled Riccati differential equations
//
//   Ṡ_i = −[S_i A + Aᵀ S_i + Q_i + S_i H_i S_i − Σ_j (S_i H_j S_j + S_j H_j S_i)]
//   S_i(tf) = S_if
//
// with fixed-step classic RK4, and the closed-loop Nash feedback gains
// u_i = −K_i(t) x, K_i = R_i⁻¹ B_iᵀ S_i.
//
///////////////////////////////////////////////////////////////////////////////

#ifndef AAO_RICCATI_HPP_
#define AAO_RICCATI_HPP_

#include <string>
#include <vector>

#include "aao/game.hpp"
#include "aao/matrix.hpp"

namespace aao {

// Uniform grid t_k = t0 + k·dt, k = 0..steps. A zero-length horizon
// (tf == t0) is represented with steps == 0 and a single grid point.
class TimeGrid {
 public:
  TimeGrid() = default;
  // Throws std::invalid_argument unless tf > t0 and steps >= 1, or
  // tf == t0 and steps == 0.
  TimeGrid(double t0, double tf, std::size_t steps);

  // Step count round((tf − t0)/dt), at least 1 for a positive horizon.
  static TimeGrid FromStep(double t0, double tf, double dt);

  double t0() const { return t0_; }
  double tf() const { return tf_; }
  std::size_t steps() const { return steps_; }
  std::size_t num_points() const { return steps_ + 1; }
  double dt() const { return steps_ == 0 ? 0.0 : (tf_ - t0_) / steps_; }
  // Exactly tf at k == steps.
  double At(std::size_t k) const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_ = 0.0;
  double tf_ = 0.0;
  std::size_t steps_ = 0;
};

enum class SolveStatus { kComplete, kBlowUp, kNumericalFailure };

std::string ToString(SolveStatus s);

struct RiccatiSolution {
  TimeGrid grid;
  // S[k][i] = S_i(t_k). Entries with k < first_valid_index are unset when
  // the integration stopped early.
  std::vector<std::vector<SymmetricMatrix>> S;
  SolveStatus status = SolveStatus::kComplete;
  // Grid time of the first offending step (BlowUp / NumericalFailure).
  double event_time = 0.0;
  std::string reason;
  std::size_t first_valid_index = 0;
  // Max symmetry residual of the unsymmetrized RK4 updates.
  double max_symmetry_residual = 0.0;

  bool complete() const { return status == SolveStatus::kComplete; }
  std::size_t num_players() const { return S.empty() ? 0 : S.back().size(); }
  const SymmetricMatrix& At(std::size_t k, std::size_t i) const {
    return S[k][i];
  }
};

struct SolverOptions {
  // Blow-up threshold on the squared Frobenius norm tr{S Sᵀ}.
  double blowup_threshold = 1e12;
};

// dS_i/dt for every player, each symmetrized.
std::vector<SymmetricMatrix> RiccatiRhs(const GameDefinition& game,
                                        const std::vector<SymmetricMatrix>& S);

// Same, with the signed couplings precomputed (hot path of the solver).
std::vector<SymmetricMatrix> RiccatiRhs(const GameDefinition& game,
                                        const std::vector<SymmetricMatrix>& H,
                                        const std::vector<SymmetricMatrix>& S);

// RK4 backward from grid.tf() to grid.t0(), symmetrizing after every stage.
// A NaN/Inf entry or tr{S_i S_iᵀ} > blowup_threshold ends the integration
// with status kBlowUp at the first offending grid time. The game's own
// t0/tf are ignored in favour of the grid.
RiccatiSolution SolveCoupled(const GameDefinition& game, const TimeGrid& grid,
                             const SolverOptions& options = {});

struct FeedbackGain {
  std::size_t player = 0;
  TimeGrid grid;
  std::vector<Matrix> K;  // m_i x n per grid point
};

// K_i(t_k) = R_i⁻¹ B_iᵀ S_i(t_k) (signed weight for the opponent under
// kSignReversed). Throws std::invalid_argument for an incomplete solution.
std::vector<FeedbackGain> Gains(const GameDefinition& game,
                                const RiccatiSolution& sol);

// Linear interpolation between bracketing grid points; exact at grid points.
// Throws std::out_of_range for t outside [t0, tf].
Matrix GainAt(const FeedbackGain& gain, double t);

}  // namespace aao

#endif  // AAO_RICCATI_HPP_
