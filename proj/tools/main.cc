// Copyright 2026 The Unimotion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "runner.h"
#include "scenario.h"
#include "unimotion/error.h"

namespace {

using unimotion::ExitCode;

struct Flags {
  std::string scenario;
  std::optional<std::string> method;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> max_time;
};

void add_scenario_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario file (YAML)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--method", f.method, "ball, cone, diamond or reachable");
  cmd->add_option("--mode", f.mode, "bi, fwd or bwd");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--max-time", f.max_time, "Integration horizon in seconds")
      ->check(CLI::PositiveNumber);
}

unimotion::Scenario scenario_from(const Flags& f) {
  unimotion::Scenario sc = unimotion::load_scenario(f.scenario);
  try {
    if (f.method) sc.method = unimotion::parse_prediction_method(*f.method);
    if (f.mode) sc.mode = unimotion::parse_steering_mode(*f.mode);
  } catch (const std::invalid_argument& e) {
    throw unimotion::ValidationError(e.what());
  }
  if (f.out) sc.output_dir = *f.out;
  if (f.max_time) {
    sc.integrator.max_time = *f.max_time;
    sc.follow.settings.max_time = *f.max_time;
  }
  return sc;
}

int to_int(ExitCode c) { return static_cast<int>(c); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unicycle closed-loop simulator with motion prediction and "
               "governed path following"};
  app.set_version_flag("--version", unimotion::tool_version());
  app.require_subcommand(1);

  Flags flags;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Closed loop to a fixed goal with prediction snapshots");
  CLI::App* predict =
      app.add_subcommand("predict", "Prediction-set geometry for the initial state");
  CLI::App* follow = app.add_subcommand("follow", "Governed path following");
  CLI::App* compare =
      app.add_subcommand("compare", "Path following under all four prediction methods");
  for (CLI::App* cmd : {simulate, predict, follow, compare}) {
    add_scenario_flags(cmd, flags);
  }
  CLI::App* fit = app.add_subcommand("fit-si", "Sinusoidal fits of the sine integral");
  std::string fit_out = "out";
  fit->add_option("--out", fit_out, "Output directory");
  fit->add_option("--seed", flags.seed, "Seed for random restarts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : to_int(ExitCode::kValidation);
  }

  try {
    unimotion::RunOutcome outcome;
    if (fit->parsed()) {
      outcome = unimotion::run_fit_si(fit_out, flags.seed);
    } else {
      const unimotion::Scenario sc = scenario_from(flags);
      if (simulate->parsed()) outcome = unimotion::run_simulate(sc);
      if (predict->parsed()) outcome = unimotion::run_predict(sc);
      if (follow->parsed()) outcome = unimotion::run_follow(sc);
      if (compare->parsed()) outcome = unimotion::run_compare(sc);
    }
    for (const auto& f : outcome.files) std::cout << f.string() << "\n";
    if (outcome.code == ExitCode::kIncomplete) {
      std::cerr << "run did not complete (truncated, stalled or not converged)\n";
    }
    return to_int(outcome.code);
  } catch (const unimotion::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return to_int(ExitCode::kValidation);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return to_int(ExitCode::kValidation);
  } catch (const unimotion::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return to_int(ExitCode::kPrecondition);
  } catch (const unimotion::StepUnderflowError& e) {
    std::cerr << "integration failed: " << e.what() << "\n";
    return to_int(ExitCode::kIncomplete);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return to_int(ExitCode::kFailure);
  }
}
