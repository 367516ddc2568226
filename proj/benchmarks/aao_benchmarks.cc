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

#include <benchmark/benchmark.h>

#include <random>

#include "aao/analysis.hpp"
#include "aao/game.hpp"
#include "aao/matrix.hpp"
#include "aao/riccati.hpp"
#include "aao/sim.hpp"
#include "aao/team.hpp"

namespace aao {
namespace {

GameDefinition Example(double tf) {
  PursuitParams p;
  p.opponent_weighting = OpponentWeighting::kSignReversed;
  p.tf = tf;
  return BuildPursuitExample(p);
}

const Vector kX0 = {2.0, 13.0, 7.0, 9.0, -10.0, 14.0};

void BM_SolveCoupledExample(benchmark::State& state) {
  const GameDefinition g = Example(static_cast<double>(state.range(0)));
  const TimeGrid grid = TimeGrid::FromStep(g.t0, g.tf, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveCoupled(g, grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.steps()));
}
BENCHMARK(BM_SolveCoupledExample)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SolveTeamExample(benchmark::State& state) {
  const GameDefinition g = Example(10.0);
  const TeamGame tg = BuildTeamGame(g, TeamWeights::Uniform(3));
  const TimeGrid grid = TimeGrid::FromStep(g.t0, g.tf, 1e-3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveCoupled(tg.reduced, grid));
  }
}
BENCHMARK(BM_SolveTeamExample)->Unit(benchmark::kMillisecond);

void BM_SymEigenvalues(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = normal(rng);
  }
  const SymmetricMatrix s = SymmetricMatrix::Symmetrize(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SymEigenvalues(s));
  }
}
BENCHMARK(BM_SymEigenvalues)->Arg(2)->Arg(6)->Arg(12);

void BM_Simulate(benchmark::State& state) {
  const GameDefinition g = Example(10.0);
  const auto gains = Gains(g, SolveCoupled(g, TimeGrid::FromStep(g.t0, g.tf, 1e-3)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Simulate(g, gains, kX0));
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

void BM_VerifySolution(benchmark::State& state) {
  const GameDefinition g = Example(10.0);
  const auto sol = SolveCoupled(g, TimeGrid::FromStep(g.t0, g.tf, 1e-3));
  const SymmetricMatrix q = SymmetricMatrix::Zero(g.n());
  for (auto _ : state) {
    benchmark::DoNotOptimize(VerifySolution(g, sol, q));
  }
}
BENCHMARK(BM_VerifySolution)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace aao

BENCHMARK_MAIN();
