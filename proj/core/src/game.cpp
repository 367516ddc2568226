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

#include "aao/game.hpp"

#include <sstream>
#include <stdexcept>

namespace aao {
namespace {

std::string Indexed(const char* name, std::size_t i) {
  return std::string(name) + "[" + std::to_string(i) + "]";
}

void RequireShape(const Matrix& m, std::size_t rows, std::size_t cols,
                  const std::string& name) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream os;
    os << "dimension mismatch: " << name << " is " << m.rows() << "x"
       << m.cols() << ", expected " << rows << "x" << cols;
    throw std::invalid_argument(os.str());
  }
}

DefinitenessVerdict Verdict(const SymmetricMatrix& s, Definiteness kind,
                            std::string name, double tol) {
  const auto ev = SymEigenvalues(s).values;
  const bool upper = kind == Definiteness::kND || kind == Definiteness::kNSD;
  const double witness = upper ? ev.back() : ev.front();
  bool pass = false;
  switch (kind) {
    case Definiteness::kPD:
      pass = witness > tol;
      break;
    case Definiteness::kPSD:
      pass = witness >= -tol;
      break;
    case Definiteness::kND:
      pass = witness < -tol;
      break;
    case Definiteness::kNSD:
      pass = witness <= tol;
      break;
  }
  return {std::move(name), kind, witness, pass};
}

}  // namespace

std::string ToString(OpponentWeighting w) {
  return w == OpponentWeighting::kStandard ? "standard" : "sign_reversed";
}

OpponentWeighting ParseOpponentWeighting(const std::string& s) {
  if (s == "standard") return OpponentWeighting::kStandard;
  if (s == "sign_reversed") return OpponentWeighting::kSignReversed;
  throw std::invalid_argument("unknown opponent weighting '" + s +
                              "' (expected standard|sign_reversed)");
}

std::optional<DefinitenessVerdict> ValidationReport::FirstFailure() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return v;
  }
  return std::nullopt;
}

void CheckDimensions(const GameDefinition& game) {
  const std::size_t n = game.n();
  if (n == 0) throw std::invalid_argument("dimension mismatch: A is empty");
  RequireShape(game.A, n, n, "A");
  if (game.num_players() < 1) {
    throw std::invalid_argument("game needs at least one player");
  }
  if (!(game.tf >= game.t0)) {
    throw std::invalid_argument("tf must not precede t0");
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto& p = game.players[i];
    if (p.B.rows() != n || p.B.cols() == 0) {
      std::ostringstream os;
      os << "dimension mismatch: " << Indexed("B", i) << " is " << p.B.rows()
         << "x" << p.B.cols() << ", expected " << n << "xm with m >= 1";
      throw std::invalid_argument(os.str());
    }
    const std::size_t m = p.B.cols();
    RequireShape(p.Q, n, n, Indexed("Q", i));
    RequireShape(p.S_f, n, n, Indexed("S_f", i));
    RequireShape(p.R, m, m, Indexed("R", i));
  }
}

ValidationReport Validate(const GameDefinition& game, double tol) {
  CheckDimensions(game);
  ValidationReport report;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto& p = game.players[i];
    const bool opponent = i == 0;
    report.verdicts.push_back(
        Verdict(p.S_f, opponent ? Definiteness::kND : Definiteness::kPSD,
                Indexed("S_f", i), tol));
    report.verdicts.push_back(
        Verdict(p.Q, opponent ? Definiteness::kND : Definiteness::kPSD,
                Indexed("Q", i), tol));
    report.verdicts.push_back(
        Verdict(p.R, Definiteness::kPD, Indexed("R", i), tol));
  }
  report.aao_compliant = !report.FirstFailure().has_value();
  return report;
}

double ControlWeightSign(const GameDefinition& game, std::size_t i) {
  return (i == 0 &&
          game.opponent_weighting == OpponentWeighting::kSignReversed)
             ? -1.0
             : 1.0;
}

SymmetricMatrix ControlCoupling(const GameDefinition& game, std::size_t i) {
  if (i >= game.num_players()) {
    throw std::out_of_range("ControlCoupling: player index out of range");
  }
  const auto& p = game.players[i];
  const SymmetricMatrix r_inv = InverseSPD(p.R);
  return SymmetricMatrix::Symmetrize(p.B * r_inv.matrix() * p.B.Transpose());
}

SymmetricMatrix SignedCoupling(const GameDefinition& game, std::size_t i) {
  const double sign = ControlWeightSign(game, i);
  const auto h = ControlCoupling(game, i);
  return sign == 1.0 ? h : sign * h;
}

std::vector<SymmetricMatrix> SignedCouplings(const GameDefinition& game) {
  std::vector<SymmetricMatrix> hs;
  hs.reserve(game.num_players());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    hs.push_back(SignedCoupling(game, i));
  }
  return hs;
}

SymmetricMatrix EffectiveControlWeight(const GameDefinition& game,
                                       std::size_t i) {
  const double sign = ControlWeightSign(game, i);
  return sign == 1.0 ? game.players[i].R : sign * game.players[i].R;
}

Matrix ClosedLoopA(const GameDefinition& game,
                   const std::vector<SymmetricMatrix>& S) {
  if (S.size() != game.num_players()) {
    throw std::invalid_argument("ClosedLoopA: need one S per player");
  }
  Matrix abar = game.A;
  for (std::size_t j = 0; j < S.size(); ++j) {
    RequireShape(S[j], game.n(), game.n(), Indexed("S", j));
    abar -= SignedCoupling(game, j).matrix() * S[j].matrix();
  }
  return abar;
}

void CheckPursuitParams(const PursuitParams& p) {
  if (p.num_pursuers < 1) {
    throw std::invalid_argument("pursuit: num_pursuers must be >= 1");
  }
  if (p.pursuers.size() != p.num_pursuers) {
    throw std::invalid_argument(
        "pursuit: pursuers list length must equal num_pursuers");
  }
  if (!(p.capture_radius > 0.0)) {
    throw std::invalid_argument("pursuit: capture_radius must be positive");
  }
  if (p.x0.size() != 2 * p.num_pursuers) {
    throw std::invalid_argument("pursuit: x0 must have 2*num_pursuers entries");
  }
  if (p.evader_start.size() != 2) {
    throw std::invalid_argument("pursuit: evader_start must have 2 entries");
  }
  if (!(p.tf >= p.t0)) {
    throw std::invalid_argument("pursuit: tf must not precede t0");
  }
}

GameDefinition BuildPursuitExample(const PursuitParams& p) {
  CheckPursuitParams(p);
  const std::size_t k = p.num_pursuers;
  const Matrix i2 = Matrix::Identity(2);
  const Matrix ik = Matrix::Identity(k);
  const Matrix state_identity = Kron(ik, i2);

  GameDefinition game;
  game.A = Matrix(2 * k, 2 * k);
  game.t0 = p.t0;
  game.tf = p.tf;
  game.opponent_weighting = p.opponent_weighting;

  auto make_player = [&](const Matrix& b, const PlayerWeights& w) {
    return PlayerData{
        b, SymmetricMatrix(state_identity * w.q_scale),
        SymmetricMatrix(i2 * w.r_scale),
        SymmetricMatrix(state_identity * w.sf_scale)};
  };

  game.players.push_back(
      make_player(Kron(Matrix::Constant(k, 1, 1.0), i2), p.evader));
  for (std::size_t j = 0; j < k; ++j) {
    Matrix e(k, 1);
    e(j, 0) = 1.0;
    game.players.push_back(make_player(-Kron(e, i2), p.pursuers[j]));
  }
  return game;
}

}  // namespace aao
