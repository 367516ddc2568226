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

// Scenario documents (JSON, schema_version 1). The schema is described in
// docs/scenario_schema.md.

#ifndef AAO_SCENARIO_HPP_
#define AAO_SCENARIO_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aao/game.hpp"
#include "aao/matrix.hpp"

namespace aao {

enum class Mode { kNash, kTeam };

std::string ToString(Mode m);
Mode ParseMode(const std::string& s);

// Schema violation; what() starts with the offending field path.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(const std::string& path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct RunConfig {
  Mode mode = Mode::kNash;
  // Team weights; empty means uniform.
  std::vector<double> alphas;
  double dt = 1e-3;
  // Free matrix of the linear envelope; zero when absent.
  std::optional<SymmetricMatrix> bound_q;
  double capture_radius = 0.1;
  std::string output_dir = "out";
  std::size_t rq_sample_stride = 10;
  // Write every k-th grid point to solution.csv.
  std::size_t solution_stride = 1;
};

struct ExplicitGame {
  GameDefinition game;
  Vector x0;
};

struct Scenario {
  std::optional<ExplicitGame> explicit_game;
  std::optional<PursuitParams> pursuit;
  RunConfig run;

  GameDefinition Game() const;
  const Vector& InitialState() const;
  double t0() const;
  double tf() const;
  void set_tf(double tf);
  SymmetricMatrix BoundQ() const;
};

// Throws ScenarioError for schema violations and std::invalid_argument for
// dimension mismatches (naming the matrices).
Scenario ParseScenario(const std::string& text);
Scenario LoadScenario(const std::string& path);

// Canonical document with every run default spelled out. Reals are written
// as shortest round-trip decimals.
std::string EmitScenario(const Scenario& s);

// Checks run-config invariants against the game (dt > 0, team weights).
void CheckRunConfig(const Scenario& s);

}  // namespace aao

#endif  // AAO_SCENARIO_HPP_
