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

// Command line front end: check | solve | simulate | sweep.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aao/experiment.hpp"
#include "aao/format.hpp"
#include "aao/scenario.hpp"

namespace {

struct Flags {
  std::string scenario;
  std::optional<std::string> mode;
  std::vector<double> alphas;
  std::optional<double> dt;
  std::optional<double> tf;
  std::vector<double> tf_list{2, 4, 6, 8, 10, 12, 14};
  std::optional<std::string> out;
  bool cross_check = false;
};

void AddCommonFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario file")->required();
  cmd->add_option("--mode", f.mode, "nash | team");
  cmd->add_option("--alphas", f.alphas, "Team weights a,b,c")
      ->delimiter(',');
  cmd->add_option("--dt", f.dt, "Integration step");
  cmd->add_option("--tf", f.tf, "Final time");
  cmd->add_option("--out", f.out, "Output directory");
}

aao::Scenario LoadWithOverrides(const Flags& f) {
  aao::Scenario s = aao::LoadScenario(f.scenario);
  if (f.mode) s.run.mode = aao::ParseMode(*f.mode);
  if (!f.alphas.empty()) s.run.alphas = f.alphas;
  if (f.dt) s.run.dt = *f.dt;
  if (f.tf) s.set_tf(*f.tf);
  if (f.out) s.run.output_dir = *f.out;
  aao::CheckRunConfig(s);
  return s;
}

int RunStage(const Flags& f, aao::Stage stage) {
  const aao::Scenario s = LoadWithOverrides(f);
  const aao::RunResult r = aao::Run(s, stage);
  std::cout << "mode = " << aao::ToString(s.run.mode) << "\n";
  std::cout << "sum_Q_pd = " << (r.conditions.sum_q_pd.pass ? "true" : "false")
            << "  min_eigenvalue = "
            << aao::FormatReal(r.conditions.sum_q_pd.witness) << "\n";
  std::cout << "sum_Sf_pd = "
            << (r.conditions.sum_sf_pd.pass ? "true" : "false")
            << "  min_eigenvalue = "
            << aao::FormatReal(r.conditions.sum_sf_pd.witness) << "\n";
  if (r.pursuit) {
    std::cout << "final_distances =";
    for (double d : r.pursuit->final_distances) {
      std::cout << " " << aao::FormatReal(d);
    }
    std::cout << "\n";
  }
  if (!r.message.empty()) std::cerr << r.message << "\n";
  std::cout << "outputs in " << s.run.output_dir << "\n";
  return r.exit_code;
}

int RunSweepCommand(const Flags& f) {
  const aao::Scenario s = LoadWithOverrides(f);
  std::vector<aao::Mode> modes;
  if (f.mode) {
    modes.push_back(s.run.mode);
  } else {
    modes = {aao::Mode::kNash, aao::Mode::kTeam};
  }
  const aao::SweepResult r = aao::RunSweep(s, f.tf_list, modes, f.cross_check);
  aao::WriteSweep(s, r);
  std::cout << aao::FormatSweepCsv(r);
  if (r.cross_check_max_diff) {
    std::cout << "cross_check_max_diff = "
              << aao::FormatReal(*r.cross_check_max_diff) << "\n";
  }
  return aao::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All-against-one LQ differential games"};
  app.require_subcommand(1);
  Flags flags;

  auto* check = app.add_subcommand("check", "Validate and report conditions");
  auto* solve = app.add_subcommand("solve", "Solve the coupled Riccati system");
  auto* simulate = app.add_subcommand("simulate", "Solve and simulate");
  auto* sweep = app.add_subcommand("sweep", "Final-distance horizon sweep");
  for (auto* cmd : {check, solve, simulate, sweep}) AddCommonFlags(cmd, flags);
  sweep->add_option("--tf-list", flags.tf_list, "Final times a,b,c")
      ->delimiter(',');
  sweep->add_flag("--cross-check", flags.cross_check,
                  "Compare against slices of one long solve");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return RunStage(flags, aao::Stage::kCheck);
    if (*solve) return RunStage(flags, aao::Stage::kSolve);
    if (*simulate) return RunStage(flags, aao::Stage::kSimulate);
    return RunSweepCommand(flags);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aao::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
