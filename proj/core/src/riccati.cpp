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

#include "aao/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aao {
namespace {

using State = std::vector<SymmetricMatrix>;

// s + h·k, symmetrized; records the pre-symmetrization residual.
State Axpy(const State& s, double h, const State& k, double* residual) {
  State out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    Matrix m = s[i].matrix() + k[i].matrix() * h;
    auto sym = SymmetricMatrix::Symmetrize(m);
    *residual = std::max(*residual, (m - sym.matrix()).MaxAbs());
    out.push_back(std::move(sym));
  }
  return out;
}

bool Finite(const State& s, double threshold, std::size_t* offender) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].matrix().AllFinite() || FrobNorm(s[i]) > threshold) {
      *offender = i;
      return false;
    }
  }
  return true;
}

}  // namespace

TimeGrid::TimeGrid(double t0, double tf, std::size_t steps)
    : t0_(t0), tf_(tf), steps_(steps) {
  if (!std::isfinite(t0) || !std::isfinite(tf)) {
    throw std::invalid_argument("TimeGrid: non-finite endpoint");
  }
  const bool degenerate = tf == t0 && steps == 0;
  if (!degenerate && !(tf > t0 && steps >= 1)) {
    throw std::invalid_argument(
        "TimeGrid: need tf > t0 with steps >= 1 (or tf == t0 with 0 steps)");
  }
}

TimeGrid TimeGrid::FromStep(double t0, double tf, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (tf == t0) return TimeGrid(t0, tf, 0);
  const double n = std::llround((tf - t0) / dt);
  return TimeGrid(t0, tf, static_cast<std::size_t>(std::max(1.0, n)));
}

double TimeGrid::At(std::size_t k) const {
  if (k >= steps_) return tf_;
  return t0_ + static_cast<double>(k) * dt();
}

std::string ToString(SolveStatus s) {
  switch (s) {
    case SolveStatus::kComplete:
      return "Complete";
    case SolveStatus::kBlowUp:
      return "BlowUp";
    case SolveStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "?";
}

std::vector<SymmetricMatrix> RiccatiRhs(const GameDefinition& game,
                                        const std::vector<SymmetricMatrix>& H,
                                        const std::vector<SymmetricMatrix>& S) {
  const std::size_t m = game.num_players();
  if (S.size() != m || H.size() != m) {
    throw std::invalid_argument("RiccatiRhs: need one matrix per player");
  }
  // T_j = H_j S_j and U = Σ_j T_j, so that
  //   Σ_j (S_i H_j S_j + S_j H_j S_i) = S_i U + Uᵀ S_i.
  std::vector<Matrix> t;
  t.reserve(m);
  Matrix u(game.n(), game.n());
  for (std::size_t j = 0; j < m; ++j) {
    t.push_back(H[j].matrix() * S[j].matrix());
    u += t.back();
  }
  const Matrix ut = u.Transpose();
  std::vector<SymmetricMatrix> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Matrix& si = S[i].matrix();
    const Matrix sa = si * game.A;
    Matrix bracket = sa + sa.Transpose();
    bracket += game.players[i].Q.matrix();
    bracket += si * t[i];
    bracket -= si * u;
    bracket -= ut * si;
    bracket *= -1.0;
    out.push_back(SymmetricMatrix::Symmetrize(bracket));
  }
  return out;
}

std::vector<SymmetricMatrix> RiccatiRhs(const GameDefinition& game,
                                        const std::vector<SymmetricMatrix>& S) {
  return RiccatiRhs(game, SignedCouplings(game), S);
}

RiccatiSolution SolveCoupled(const GameDefinition& game, const TimeGrid& grid,
                             const SolverOptions& options) {
  CheckDimensions(game);
  const std::size_t m = game.num_players();
  const auto h_list = SignedCouplings(game);

  RiccatiSolution sol;
  sol.grid = grid;
  sol.S.resize(grid.num_points());
  State s;
  for (const auto& p : game.players) s.push_back(p.S_f);
  sol.S[grid.steps()] = s;
  sol.first_valid_index = grid.steps();

  const double h = -grid.dt();
  double residual = 0.0;
  for (std::size_t k = grid.steps(); k-- > 0;) {
    try {
      const State k1 = RiccatiRhs(game, h_list, s);
      const State k2 = RiccatiRhs(game, h_list, Axpy(s, 0.5 * h, k1, &residual));
      const State k3 = RiccatiRhs(game, h_list, Axpy(s, 0.5 * h, k2, &residual));
      const State k4 = RiccatiRhs(game, h_list, Axpy(s, h, k3, &residual));
      State incr;
      incr.reserve(m);
      for (std::size_t i = 0; i < m; ++i) {
        Matrix sum = k1[i].matrix() + k4[i].matrix();
        sum += (k2[i].matrix() + k3[i].matrix()) * 2.0;
        incr.push_back(SymmetricMatrix::Symmetrize(sum * (1.0 / 6.0)));
      }
      State next = Axpy(s, h, incr, &residual);
      std::size_t offender = 0;
      if (!Finite(next, options.blowup_threshold, &offender)) {
        std::ostringstream os;
        os << "S[" << offender << "] left the finite region (tr{SSᵀ} > "
           << options.blowup_threshold << " or non-finite)";
        sol.status = SolveStatus::kBlowUp;
        sol.event_time = grid.At(k);
        sol.reason = os.str();
        break;
      }
      s = std::move(next);
    } catch (const std::exception& e) {
      sol.status = SolveStatus::kNumericalFailure;
      sol.event_time = grid.At(k);
      sol.reason = e.what();
      break;
    }
    sol.S[k] = s;
    sol.first_valid_index = k;
  }
  sol.max_symmetry_residual = residual;
  return sol;
}

std::vector<FeedbackGain> Gains(const GameDefinition& game,
                                const RiccatiSolution& sol) {
  if (!sol.complete()) {
    throw std::invalid_argument("Gains: Riccati solution is not complete");
  }
  std::vector<FeedbackGain> gains;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto r_inv = InverseSPD(game.players[i].R);
    Matrix pre = r_inv.matrix() * game.players[i].B.Transpose();
    pre *= ControlWeightSign(game, i);
    FeedbackGain g{i, sol.grid, {}};
    g.K.reserve(sol.grid.num_points());
    for (std::size_t k = 0; k < sol.grid.num_points(); ++k) {
      g.K.push_back(pre * sol.At(k, i).matrix());
    }
    gains.push_back(std::move(g));
  }
  return gains;
}

Matrix GainAt(const FeedbackGain& gain, double t) {
  const auto& grid = gain.grid;
  if (!(t >= grid.t0() && t <= grid.tf())) {
    throw std::out_of_range("GainAt: time outside [t0, tf]");
  }
  if (grid.steps() == 0) return gain.K.front();
  const double s = (t - grid.t0()) / grid.dt();
  std::size_t k = static_cast<std::size_t>(std::floor(s));
  k = std::min(k, grid.steps() - 1);
  const double ta = grid.At(k);
  const double tb = grid.At(k + 1);
  if (t == ta) return gain.K[k];
  if (t == tb) return gain.K[k + 1];
  const double w = (t - ta) / (tb - ta);
  return gain.K[k] * (1.0 - w) + gain.K[k + 1] * w;
}

}  // namespace aao
