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

#include "aao/team.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aao {

TeamWeights TeamWeights::Uniform(std::size_t members) {
  if (members == 0) throw std::invalid_argument("team has no members");
  return {std::vector<double>(members, 1.0 / static_cast<double>(members))};
}

void CheckTeamWeights(const TeamWeights& w, std::size_t members) {
  if (w.alpha.size() != members) {
    throw std::invalid_argument("alphas: expected " + std::to_string(members) +
                                " weights, got " +
                                std::to_string(w.alpha.size()));
  }
  for (double a : w.alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("alphas: every weight must be positive");
    }
  }
  const double sum = std::accumulate(w.alpha.begin(), w.alpha.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("alphas: weights must sum to 1");
  }
}

TeamGame BuildTeamGame(const GameDefinition& game, const TeamWeights& w) {
  CheckDimensions(game);
  const std::size_t m = game.num_players();
  if (m < 2) {
    throw std::invalid_argument("team reduction needs at least two players");
  }
  CheckTeamWeights(w, m - 1);
  const std::size_t n = game.n();

  TeamGame tg;
  tg.weights = w;
  tg.reduced.A = game.A;
  tg.reduced.t0 = game.t0;
  tg.reduced.tf = game.tf;
  tg.reduced.opponent_weighting = game.opponent_weighting;
  tg.reduced.players.push_back(game.players[0]);

  Matrix sf(n, n);
  Matrix q(n, n);
  std::vector<Matrix> b_blocks;
  std::vector<Matrix> r_blocks;
  std::size_t offset = 0;
  for (std::size_t i = 1; i < m; ++i) {
    const auto& p = game.players[i];
    const double a = w.alpha[i - 1];
    sf += p.S_f.matrix() * a;
    q += p.Q.matrix() * a;
    b_blocks.push_back(p.B);
    r_blocks.push_back(p.R.matrix() * a);
    tg.slot_map.push_back({i, offset, p.B.cols()});
    offset += p.B.cols();
  }
  tg.reduced.players.push_back(PlayerData{
      HorizontalConcat(b_blocks), SymmetricMatrix::Symmetrize(q),
      SymmetricMatrix::Symmetrize(BlockDiag(r_blocks)),
      SymmetricMatrix::Symmetrize(sf)});
  return tg;
}

std::vector<Vector> SplitTeamControl(const TeamGame& tg,
                                     const Vector& u_team) {
  const std::size_t total = tg.reduced.num_inputs(1);
  if (u_team.size() != total) {
    throw std::invalid_argument("SplitTeamControl: u_T has length " +
                                std::to_string(u_team.size()) + ", expected " +
                                std::to_string(total));
  }
  std::vector<Vector> out;
  for (const auto& slot : tg.slot_map) {
    out.emplace_back(u_team.begin() + slot.offset,
                     u_team.begin() + slot.offset + slot.size);
  }
  return out;
}

std::vector<FeedbackGain> TeamGainsToPlayers(const TeamGame& tg,
                                             const FeedbackGain& team_gain) {
  const std::size_t total = tg.reduced.num_inputs(1);
  std::vector<FeedbackGain> out;
  for (const auto& slot : tg.slot_map) {
    FeedbackGain g{slot.player, team_gain.grid, {}};
    g.K.reserve(team_gain.K.size());
    for (const auto& k : team_gain.K) {
      if (k.rows() != total) {
        throw std::invalid_argument(
            "TeamGainsToPlayers: gain rows do not match the team slots");
      }
      g.K.push_back(k.Block(slot.offset, 0, slot.size, k.cols()));
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace aao
