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
// Numerical evaluation of the existence, definiteness and boundedness
// conditions for AAO games:
//
//   * the cone map
//       R_Q(W) = Q + W_0 H_0 W_0 − Σ_{i≥1} W_i H_i W_i
//                + D Σ_j H_j W_j + Σ_j W_j H_j D,   D = −W_0 + Σ_{i≥1} W_i
//   * the linear envelope  L̇ = −L A − Aᵀ L − (Q − Q_0 + Σ_{i≥1} Q_i),
//       L(tf) = −S_0f + Σ_{i≥1} S_if,  and l̄_q = max_t tr{L Lᵀ}
//   * the sums Q_0 + ΣQ_i, S_0f + ΣS_if and P(t) = Σ_i S_i(t)
//   * the explicit diagonal-subclass existence hypotheses
//   * the minimum horizon that drives ‖x(tf)‖ below a radius r
//
// Every verdict carries a numeric witness (an eigenvalue or a norm).
//
///////////////////////////////////////////////////////////////////////////////

#ifndef AAO_ANALYSIS_HPP_
#define AAO_ANALYSIS_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aao/game.hpp"
#include "aao/matrix.hpp"
#include "aao/riccati.hpp"

namespace aao {

class NotApplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RQResult {
  SymmetricMatrix value;
  double min_eigenvalue = 0.0;
  bool psd = false;  // min_eigenvalue >= −1e-9
};

RQResult EvalRQ(const GameDefinition& game, const SymmetricMatrix& Q,
                const std::vector<SymmetricMatrix>& W);

struct LQBound {
  TimeGrid grid;
  std::vector<SymmetricMatrix> L;  // per grid point
  double lq_bar = 0.0;             // max_k tr{L_k L_kᵀ}
};

// RK4 backward on the same grid as the Riccati solve.
LQBound SolveLQ(const GameDefinition& game, const SymmetricMatrix& Q,
                const TimeGrid& grid);

struct DiagonalExistenceVerdict {
  bool applicable = false;
  bool diagonal_ok = false;
  bool h_order_ok = false;
  bool sums_ok = false;
  // All signed couplings PSD. Reported only, not part of applicable.
  bool couplings_psd = false;
  // min over i≥1 of λ_min(H_i − H_0).
  double h_order_witness = 0.0;
};

DiagonalExistenceVerdict CheckDiagonalExistence(const GameDefinition& game);

struct SumMatrices {
  SymmetricMatrix q_sum;   // Q_0 + Σ_{i≥1} Q_i
  SymmetricMatrix sf_sum;  // S_0f + Σ_{i≥1} S_if
  SymmetricMatrix q_hat;   // Σ_i Q_i (equal to q_sum)
};

SumMatrices ComputeSums(const GameDefinition& game);

// P(t_k) = Σ_i S_i(t_k).
SymmetricMatrix ComputeP(const RiccatiSolution& sol, std::size_t k);

struct LyapunovConstants {
  double p_max = 0.0;      // max over the grid of λ_max(P)
  double p_min = 0.0;      // min over the grid of λ_min(P)
  double q_hat_min = 0.0;  // λ_min(Q̂)
};

// Sum hypotheses hold and every signed coupling is PSD.
bool BoundednessHypothesesHold(const GameDefinition& game,
                               double tol = kDefaultDefinitenessTol);

// Extrema of P over the grid and of Q̂. Throws NotApplicableError when the
// hypotheses fail, the solution is incomplete, or λ_min(P) <= 0.
LyapunovConstants ComputeLyapunovConstants(const GameDefinition& game,
                                           const RiccatiSolution& sol);

// (p_max/q_hat_min)·[2·ln(x0_norm/r) + ln(p_max/p_min)].
double MinHorizonFormula(const LyapunovConstants& c, double x0_norm, double r);

// Minimum horizon tf − t0 guaranteeing ‖x(tf)‖ <= r. Throws
// NotApplicableError ("minimum-horizon bound not applicable") when the hypotheses fail.
double MinHorizon(const GameDefinition& game, const RiccatiSolution& sol,
                  double x0_norm, double r);

struct Check {
  bool evaluated = false;
  bool pass = false;
  double witness = 0.0;
  std::string note;
};

struct ConditionsReport {
  Check sum_q_pd;   // witness λ_min(Q_0 + ΣQ_i)
  Check sum_sf_pd;  // witness λ_min(S_0f + ΣS_if)
  DiagonalExistenceVerdict diagonal_existence;
  std::string solver_status;
  // witness: max over grid of λ_max(S_0); second witness below.
  Check definiteness_along_solution;
  double others_min_eigenvalue = 0.0;  // min over grid, i≥1, of λ_min(S_i)
  // R_Q(S_0(t_k),…,S_M(t_k)) on sampled grid points; witness min eigenvalue.
  Check rq_psd_on_samples;
  // max_{i,k} tr{S_i S_iᵀ} <= l̄_q; witness max_{i,k} tr{S_i S_iᵀ}.
  Check e_membership;
  double lq_bar = 0.0;
  // 0 < −S_0 + ΣS_i <= L_Q; witness min eigenvalue over both gaps.
  Check ordering;
  // PSD ordering holds but the trace inequality is violated.
  bool trace_step_flag = false;
  Check p_pd_along_solution;  // witness min over grid of λ_min(P)
  std::optional<double> min_horizon;
  std::string min_horizon_note;
};

struct VerifyOptions {
  double tol = kDefaultDefinitenessTol;
  std::size_t rq_sample_stride = 10;
  // Supplying both enables the minimum-horizon evaluation.
  std::optional<double> x0_norm;
  std::optional<double> radius;
};

// Only the checks that need no solution; solver_status = "not_run".
ConditionsReport StaticConditions(const GameDefinition& game,
                                  double tol = kDefaultDefinitenessTol);

// Failures are report entries, never exceptions. Checks along the solution
// are skipped (evaluated = false) when the solution is incomplete.
ConditionsReport VerifySolution(const GameDefinition& game,
                                const RiccatiSolution& sol,
                                const SymmetricMatrix& Q,
                                const VerifyOptions& options = {});

// Human-readable "key = value" report with witnesses.
std::string FormatConditions(const ConditionsReport& r);

}  // namespace aao

#endif  // AAO_ANALYSIS_HPP_
