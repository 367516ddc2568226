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

// Team reduction: players 1..M-1 merge into a single team player whose cost
// is the α-weighted sum of their costs. The reduced two-player game is
// solved with the ordinary coupled solver and the team gain is split back
// into per-player gains.

#ifndef AAO_TEAM_HPP_
#define AAO_TEAM_HPP_

#include <vector>

#include "aao/game.hpp"
#include "aao/matrix.hpp"
#include "aao/riccati.hpp"

namespace aao {

struct TeamWeights {
  std::vector<double> alpha;  // one per team member

  // Uniform 1/members.
  static TeamWeights Uniform(std::size_t members);
};

// Throws std::invalid_argument unless every α > 0, the count matches and
// Σα = 1 within 1e-12.
void CheckTeamWeights(const TeamWeights& w, std::size_t members);

struct TeamSlot {
  std::size_t player = 0;  // original player index (>= 1)
  std::size_t offset = 0;  // first row of u_T
  std::size_t size = 0;
};

struct TeamGame {
  GameDefinition reduced;  // player 0 = opponent, player 1 = team
  std::vector<TeamSlot> slot_map;
  TeamWeights weights;
};

// S_Tf = Σ α_i S_f[i+1], Q_T = Σ α_i Q[i+1], R_T = blkdiag(α_i R[i+1]),
// B_T = [B_1 … B_{M-1}]. Opponent data is copied unchanged.
TeamGame BuildTeamGame(const GameDefinition& game, const TeamWeights& w);

// Slices u_T by slot. Throws on a length mismatch.
std::vector<Vector> SplitTeamControl(const TeamGame& tg, const Vector& u_team);

// Row-slices K_T(t_k) into one gain per team member, numbered by original
// player index.
std::vector<FeedbackGain> TeamGainsToPlayers(const TeamGame& tg,
                                             const FeedbackGain& team_gain);

}  // namespace aao

#endif  // AAO_TEAM_HPP_
