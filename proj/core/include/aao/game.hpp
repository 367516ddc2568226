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
// All-Against-One linear-quadratic differential game data model.
//
// Dynamics and costs:
//      ẋ = A x + Σ_j B_j u_j,                                x(t0) = x0
//      J_i = ½ x(tf)ᵀ S_if x(tf) + ½ ∫ [xᵀ Q_i x + u_iᵀ R_i u_i] dt
//
// Player 0 is ALWAYS the opposing player (S_0f < 0, Q_0 < 0); players
// 1..M-1 regulate (S_if >= 0, Q_i >= 0). Every R_i must be positive definite.
// Indices are zero-based throughout the library.
//
// OpponentWeighting selects how the opponent's control weight enters the
// equilibrium equations. kStandard uses R_0 as given. kSignReversed uses
// −R_0 for player 0 (so H_0 = −B_0 R_0⁻¹ B_0ᵀ in the Riccati equations, the
// gain and the cost integrand) while R_0 itself is stored and validated as a
// positive-definite matrix.
//
///////////////////////////////////////////////////////////////////////////////

#ifndef AAO_GAME_HPP_
#define AAO_GAME_HPP_

#include <optional>
#include <string>
#include <vector>

#include "aao/matrix.hpp"

namespace aao {

enum class OpponentWeighting { kStandard, kSignReversed };

std::string ToString(OpponentWeighting w);
// Accepts "standard" or "sign_reversed".
OpponentWeighting ParseOpponentWeighting(const std::string& s);

struct PlayerData {
  Matrix B;             // n x m_i
  SymmetricMatrix Q;    // n x n
  SymmetricMatrix R;    // m_i x m_i
  SymmetricMatrix S_f;  // n x n
};

struct GameDefinition {
  Matrix A;  // n x n
  std::vector<PlayerData> players;
  double t0 = 0.0;
  double tf = 1.0;
  OpponentWeighting opponent_weighting = OpponentWeighting::kStandard;

  std::size_t n() const { return A.rows(); }
  std::size_t num_players() const { return players.size(); }
  std::size_t num_inputs(std::size_t i) const { return players[i].B.cols(); }
};

struct DefinitenessVerdict {
  std::string matrix;      // e.g. "Q[0]"
  Definiteness required;
  double witness;          // λ_max for ND/NSD requirements, λ_min otherwise
  bool pass;
};

struct ValidationReport {
  bool aao_compliant = false;
  std::vector<DefinitenessVerdict> verdicts;

  // First failing verdict, if any.
  std::optional<DefinitenessVerdict> FirstFailure() const;
};

// Throws std::invalid_argument naming the offending matrix when dimensions
// are inconsistent, fewer than two players are given, or tf < t0.
void CheckDimensions(const GameDefinition& game);

// Definiteness verdicts for every weight matrix; aao_compliant iff all pass.
ValidationReport Validate(const GameDefinition& game,
                          double tol = kDefaultDefinitenessTol);

// −1 for the opponent under kSignReversed, +1 otherwise.
double ControlWeightSign(const GameDefinition& game, std::size_t i);

// H_i = B_i R_i⁻¹ B_iᵀ, symmetrized. Throws std::domain_error when R_i is
// numerically singular (condition estimate > 1e12).
SymmetricMatrix ControlCoupling(const GameDefinition& game, std::size_t i);

// ControlWeightSign(i) · H_i: the coupling that enters the Riccati equations
// and the closed-loop matrix.
SymmetricMatrix SignedCoupling(const GameDefinition& game, std::size_t i);
std::vector<SymmetricMatrix> SignedCouplings(const GameDefinition& game);

// ControlWeightSign(i) · R_i: the weight that enters gains and costs.
SymmetricMatrix EffectiveControlWeight(const GameDefinition& game,
                                       std::size_t i);

// Ā = A − Σ_j H_j S_j with signed couplings.
Matrix ClosedLoopA(const GameDefinition& game,
                   const std::vector<SymmetricMatrix>& S);

struct PlayerWeights {
  double sf_scale = 1.0;
  double q_scale = 1.0;
  double r_scale = 1.0;
};

// Planar k-pursuer / one-evader game. State block j (j = 0..k-1) is the
// displacement from pursuer j to the evader, x_j = p_E − p_Pj.
struct PursuitParams {
  std::size_t num_pursuers = 3;
  PlayerWeights evader{-18.0, -6.0, 1.0};
  std::vector<PlayerWeights> pursuers{
      {1.0, 0.5, 150.0}, {1.0, 0.5, 150.0}, {16.25, 5.25, 150.0}};
  double t0 = 0.0;
  double tf = 10.0;
  double capture_radius = 0.1;
  Vector x0{2.0, 13.0, 7.0, 9.0, -10.0, 14.0};
  // Absolute evader start, used only to render absolute tracks.
  Vector evader_start{0.0, 0.0};
  OpponentWeighting opponent_weighting = OpponentWeighting::kStandard;
};

// Throws std::invalid_argument when capture_radius <= 0, the pursuer weight
// list does not match num_pursuers, or x0 has the wrong dimension.
void CheckPursuitParams(const PursuitParams& p);

// A = 0 (2k x 2k); B_0 = 1_k ⊗ I_2; B_j = −e_j ⊗ I_2 for pursuer j;
// S_f, Q = scale · (I_k ⊗ I_2); R = scale · I_2.
GameDefinition BuildPursuitExample(const PursuitParams& p);

}  // namespace aao

#endif  // AAO_GAME_HPP_
