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

#include "aao/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "aao/format.hpp"

namespace aao {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Trace inequality slack used by the trace-step flag.
constexpr double kOrderingSlack = 1e-7;

SymmetricMatrix SumOthers(const GameDefinition& game,
                          SymmetricMatrix PlayerData::*field) {
  Matrix acc(game.n(), game.n());
  for (std::size_t i = 1; i < game.num_players(); ++i) {
    acc += (game.players[i].*field).matrix();
  }
  return SymmetricMatrix::Symmetrize(acc);
}

Matrix LinearRhs(const Matrix& l, const Matrix& a, const Matrix& forcing) {
  const Matrix la = l * a;
  return -(la + la.Transpose()) - forcing;
}

std::string Bool(bool b) { return b ? "true" : "false"; }

}  // namespace

RQResult EvalRQ(const GameDefinition& game, const SymmetricMatrix& Q,
                const std::vector<SymmetricMatrix>& W) {
  const std::size_t n = game.n();
  const std::size_t m = game.num_players();
  if (W.size() != m) {
    throw std::invalid_argument("EvalRQ: need one W per player");
  }
  if (Q.dim() != n) throw std::invalid_argument("EvalRQ: Q dimension mismatch");
  for (const auto& w : W) {
    if (w.dim() != n) {
      throw std::invalid_argument("EvalRQ: W dimension mismatch");
    }
  }
  const auto h = SignedCouplings(game);

  Matrix d = -W[0].matrix();
  Matrix hw(n, n);
  for (std::size_t j = 0; j < m; ++j) {
    if (j >= 1) d += W[j].matrix();
    hw += h[j].matrix() * W[j].matrix();
  }
  Matrix value = Q.matrix();
  value += W[0].matrix() * h[0].matrix() * W[0].matrix();
  for (std::size_t i = 1; i < m; ++i) {
    value -= W[i].matrix() * h[i].matrix() * W[i].matrix();
  }
  // Σ_j W_j H_j = (Σ_j H_j W_j)ᵀ.
  value += d * hw;
  value += hw.Transpose() * d;

  RQResult out;
  out.value = SymmetricMatrix::Symmetrize(value);
  out.min_eigenvalue = MinEigenvalue(out.value);
  out.psd = out.min_eigenvalue >= -kDefaultDefinitenessTol;
  return out;
}

LQBound SolveLQ(const GameDefinition& game, const SymmetricMatrix& Q,
                const TimeGrid& grid) {
  CheckDimensions(game);
  if (Q.dim() != game.n()) {
    throw std::invalid_argument("SolveLQ: Q dimension mismatch");
  }
  const Matrix forcing = Q.matrix() - game.players[0].Q.matrix() +
                         SumOthers(game, &PlayerData::Q).matrix();
  const Matrix terminal = -game.players[0].S_f.matrix() +
                          SumOthers(game, &PlayerData::S_f).matrix();

  LQBound out;
  out.grid = grid;
  out.L.resize(grid.num_points());
  Matrix l = terminal;
  out.L[grid.steps()] = SymmetricMatrix::Symmetrize(l);
  const double h = -grid.dt();
  const Matrix& a = game.A;
  for (std::size_t k = grid.steps(); k-- > 0;) {
    const Matrix k1 = LinearRhs(l, a, forcing);
    const Matrix k2 = LinearRhs(l + k1 * (0.5 * h), a, forcing);
    const Matrix k3 = LinearRhs(l + k2 * (0.5 * h), a, forcing);
    const Matrix k4 = LinearRhs(l + k3 * h, a, forcing);
    l += (k1 + k4 + (k2 + k3) * 2.0) * (h / 6.0);
    l = SymmetricMatrix::Symmetrize(l).matrix();
    out.L[k] = SymmetricMatrix::Symmetrize(l);
  }
  for (const auto& lk : out.L) out.lq_bar = std::max(out.lq_bar, FrobNorm(lk));
  return out;
}

SumMatrices ComputeSums(const GameDefinition& game) {
  CheckDimensions(game);
  SumMatrices s;
  s.q_sum = game.players[0].Q + SumOthers(game, &PlayerData::Q);
  s.sf_sum = game.players[0].S_f + SumOthers(game, &PlayerData::S_f);
  Matrix q_hat(game.n(), game.n());
  for (const auto& p : game.players) q_hat += p.Q.matrix();
  s.q_hat = SymmetricMatrix::Symmetrize(q_hat);
  return s;
}

DiagonalExistenceVerdict CheckDiagonalExistence(const GameDefinition& game) {
  DiagonalExistenceVerdict v;
  v.diagonal_ok = game.A.IsDiagonal();
  for (const auto& p : game.players) {
    v.diagonal_ok = v.diagonal_ok && p.B.is_square() && p.B.IsDiagonal() &&
                    p.S_f.matrix().IsDiagonal() && p.Q.matrix().IsDiagonal() &&
                    p.R.matrix().IsDiagonal();
  }
  const auto sums = ComputeSums(game);
  v.sums_ok = IsDefinite(sums.q_sum, Definiteness::kPD) &&
              IsDefinite(sums.sf_sum, Definiteness::kPD);

  const auto h = SignedCouplings(game);
  v.couplings_psd = std::all_of(h.begin(), h.end(), [](const auto& hi) {
    return IsDefinite(hi, Definiteness::kPSD);
  });
  v.h_order_witness = kInf;
  for (std::size_t i = 1; i < h.size(); ++i) {
    v.h_order_witness = std::min(v.h_order_witness, MinEigenvalue(h[i] - h[0]));
  }
  v.h_order_ok = v.h_order_witness >= -kDefaultDefinitenessTol;
  v.applicable = v.diagonal_ok && v.sums_ok && v.h_order_ok;
  return v;
}

SymmetricMatrix ComputeP(const RiccatiSolution& sol, std::size_t k) {
  if (k < sol.first_valid_index || k >= sol.S.size()) {
    throw std::out_of_range("ComputeP: grid index has no stored solution");
  }
  const auto& row = sol.S[k];
  Matrix p = row.front().matrix();
  for (std::size_t i = 1; i < row.size(); ++i) p += row[i].matrix();
  return SymmetricMatrix::Symmetrize(p);
}

bool BoundednessHypothesesHold(const GameDefinition& game, double tol) {
  const auto sums = ComputeSums(game);
  if (!IsDefinite(sums.q_sum, Definiteness::kPD, tol) ||
      !IsDefinite(sums.sf_sum, Definiteness::kPD, tol)) {
    return false;
  }
  for (const auto& h : SignedCouplings(game)) {
    if (!IsDefinite(h, Definiteness::kPSD, tol)) return false;
  }
  return true;
}

LyapunovConstants ComputeLyapunovConstants(const GameDefinition& game,
                                           const RiccatiSolution& sol) {
  if (!BoundednessHypothesesHold(game)) {
    throw NotApplicableError(
        "minimum-horizon bound not applicable: Q_0 + ΣQ_i > 0, S_0f + ΣS_if > 0 and "
        "H_i >= 0 must all hold");
  }
  if (!sol.complete()) {
    throw NotApplicableError(
        "minimum-horizon bound not applicable: Riccati solution is incomplete");
  }
  LyapunovConstants c;
  c.p_max = -kInf;
  c.p_min = kInf;
  for (std::size_t k = 0; k < sol.grid.num_points(); ++k) {
    const auto ev = SymEigenvalues(ComputeP(sol, k)).values;
    c.p_min = std::min(c.p_min, ev.front());
    c.p_max = std::max(c.p_max, ev.back());
  }
  c.q_hat_min = MinEigenvalue(ComputeSums(game).q_hat);
  if (!(c.p_min > 0.0)) {
    std::ostringstream os;
    os << "minimum-horizon bound not applicable: min eigenvalue of P over the grid is "
       << c.p_min;
    throw NotApplicableError(os.str());
  }
  return c;
}

double MinHorizonFormula(const LyapunovConstants& c, double x0_norm,
                         double r) {
  if (!(r > 0.0)) throw std::invalid_argument("MinHorizon: r must be positive");
  if (!(x0_norm > 0.0)) {
    throw std::invalid_argument("MinHorizon: x0_norm must be positive");
  }
  return (c.p_max / c.q_hat_min) *
         (2.0 * std::log(x0_norm / r) + std::log(c.p_max / c.p_min));
}

double MinHorizon(const GameDefinition& game, const RiccatiSolution& sol,
                  double x0_norm, double r) {
  return MinHorizonFormula(ComputeLyapunovConstants(game, sol), x0_norm, r);
}

ConditionsReport StaticConditions(const GameDefinition& game, double tol) {
  ConditionsReport r;
  const auto sums = ComputeSums(game);
  r.sum_q_pd = {true, false, MinEigenvalue(sums.q_sum), ""};
  r.sum_q_pd.pass = r.sum_q_pd.witness > tol;
  r.sum_sf_pd = {true, false, MinEigenvalue(sums.sf_sum), ""};
  r.sum_sf_pd.pass = r.sum_sf_pd.witness > tol;
  r.diagonal_existence = CheckDiagonalExistence(game);
  r.solver_status = "not_run";
  return r;
}

ConditionsReport VerifySolution(const GameDefinition& game,
                                const RiccatiSolution& sol,
                                const SymmetricMatrix& Q,
                                const VerifyOptions& options) {
  const double tol = options.tol;
  ConditionsReport r = StaticConditions(game, tol);
  r.solver_status = ToString(sol.status);
  if (!sol.complete()) {
    std::ostringstream os;
    os << "solver status " << r.solver_status << " at t = " << sol.event_time;
    r.definiteness_along_solution.note = os.str();
    r.min_horizon_note = os.str();
    return r;
  }

  const std::size_t m = game.num_players();
  const std::size_t points = sol.grid.num_points();

  // Sign pattern along the solution.
  double s0_max = -kInf;
  double others_min = kInf;
  for (std::size_t k = 0; k < points; ++k) {
    s0_max = std::max(s0_max, MaxEigenvalue(sol.At(k, 0)));
    for (std::size_t i = 1; i < m; ++i) {
      others_min = std::min(others_min, MinEigenvalue(sol.At(k, i)));
    }
  }
  r.definiteness_along_solution = {true, s0_max < tol && others_min > -tol,
                                   s0_max, ""};
  r.others_min_eigenvalue = others_min;

  // Cone-map screening at the visited solution values.
  const std::size_t stride = std::max<std::size_t>(options.rq_sample_stride, 1);
  double rq_min = kInf;
  for (std::size_t k = 0; k < points; k += stride) {
    rq_min = std::min(rq_min, EvalRQ(game, Q, sol.S[k]).min_eigenvalue);
  }
  rq_min = std::min(rq_min, EvalRQ(game, Q, sol.S[points - 1]).min_eigenvalue);
  r.rq_psd_on_samples = {true, rq_min >= -tol, rq_min, ""};

  const LQBound bound = SolveLQ(game, Q, sol.grid);
  r.lq_bar = bound.lq_bar;
  double frob_max = 0.0;
  double order_min = kInf;
  bool trace_ok = true;
  for (std::size_t k = 0; k < points; ++k) {
    Matrix gap = -sol.At(k, 0).matrix();
    for (std::size_t i = 0; i < m; ++i) {
      frob_max = std::max(frob_max, FrobNorm(sol.At(k, i)));
      if (i >= 1) gap += sol.At(k, i).matrix();
      trace_ok = trace_ok && FrobNorm(sol.At(k, i)) <=
                                 FrobNorm(bound.L[k]) * (1.0 + 1e-9) + 1e-9;
    }
    const auto w = SymmetricMatrix::Symmetrize(gap);
    order_min = std::min(order_min, MinEigenvalue(w));
    order_min = std::min(order_min, MinEigenvalue(bound.L[k] - w));
  }
  r.ordering = {true, order_min >= -kOrderingSlack, order_min, ""};
  r.trace_step_flag = r.ordering.pass && !trace_ok;
  if (r.rq_psd_on_samples.pass) {
    r.e_membership = {true, frob_max <= bound.lq_bar * (1.0 + 1e-9), frob_max,
                      ""};
  } else {
    r.e_membership = {false, false, frob_max,
                      "cone-map condition not met on samples; bound not "
                      "guaranteed"};
  }

  const bool sum_hyp = r.sum_q_pd.pass && r.sum_sf_pd.pass;
  if (sum_hyp) {
    double p_min = kInf;
    for (std::size_t k = 0; k < points; ++k) {
      p_min = std::min(p_min, MinEigenvalue(ComputeP(sol, k)));
    }
    r.p_pd_along_solution = {true, p_min > tol, p_min, ""};
  } else {
    r.p_pd_along_solution.note = "sum hypotheses fail";
  }

  if (options.x0_norm && options.radius) {
    try {
      r.min_horizon = MinHorizon(game, sol, *options.x0_norm, *options.radius);
    } catch (const NotApplicableError& e) {
      r.min_horizon_note = e.what();
    }
  }
  return r;
}

std::string FormatConditions(const ConditionsReport& r) {
  std::ostringstream os;
  auto line = [&os](const std::string& key, const Check& c,
                    const std::string& witness_name) {
    os << key << " = ";
    if (!c.evaluated) {
      os << "not_evaluated";
    } else {
      os << Bool(c.pass);
    }
    os << "  " << witness_name << " = " << FormatReal(c.witness);
    if (!c.note.empty()) os << "  # " << c.note;
    os << "\n";
  };
  line("sum_Q_pd", r.sum_q_pd, "min_eigenvalue");
  line("sum_Sf_pd", r.sum_sf_pd, "min_eigenvalue");
  os << "diagonal_existence_applicable = " << Bool(r.diagonal_existence.applicable) << "\n";
  os << "diagonal_existence_diagonal_ok = " << Bool(r.diagonal_existence.diagonal_ok) << "\n";
  os << "diagonal_existence_h_order_ok = " << Bool(r.diagonal_existence.h_order_ok)
     << "  min_eigenvalue = " << FormatReal(r.diagonal_existence.h_order_witness)
     << "\n";
  os << "diagonal_existence_sums_ok = " << Bool(r.diagonal_existence.sums_ok) << "\n";
  os << "couplings_psd = " << Bool(r.diagonal_existence.couplings_psd) << "\n";
  os << "solver_status = " << r.solver_status << "\n";
  line("definiteness_along_solution", r.definiteness_along_solution,
       "max_eigenvalue_S0");
  if (r.definiteness_along_solution.evaluated) {
    os << "others_min_eigenvalue = " << FormatReal(r.others_min_eigenvalue)
       << "\n";
    line("rq_psd_on_samples", r.rq_psd_on_samples, "min_eigenvalue");
    line("E_membership", r.e_membership, "max_frob_norm");
    os << "lq_bar = " << FormatReal(r.lq_bar) << "\n";
    line("psd_ordering", r.ordering, "min_eigenvalue");
    os << "trace_step_flag = " << Bool(r.trace_step_flag) << "\n";
    line("P_pd_along_solution", r.p_pd_along_solution, "min_eigenvalue");
  }
  if (r.min_horizon) {
    os << "min_horizon = " << FormatReal(*r.min_horizon) << "\n";
  } else {
    os << "min_horizon = none";
    if (!r.min_horizon_note.empty()) os << "  # " << r.min_horizon_note;
    os << "\n";
  }
  return os.str();
}

}  // namespace aao
