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

// Subcommands of the command-line tool. Each writes its data files and a
// JSON run report into the output directory and returns the report.

#ifndef UNIMOTION_TOOLS_RUNNER_H_
#define UNIMOTION_TOOLS_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "scenario.h"
#include "unimotion/govern.h"
#include "unimotion/simulate.h"

namespace unimotion {

enum class ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kPrecondition = 3,
  kIncomplete = 4,  // truncation, stall or non-convergence
};

struct RunOutcome {
  nlohmann::json report;
  ExitCode code = ExitCode::kOk;
  std::vector<std::filesystem::path> files;
};

std::string tool_version();

// Header row shared by every columnar data file.
inline constexpr const char* kColumns =
    "time x y theta v w psi dist_goal safedist s";

// Closed loop from the initial state to the fixed goal, with all four
// prediction sets at t = 0 and every snapshot_interval seconds.
RunOutcome run_simulate(const Scenario& scenario);

// Prediction-set geometry for the initial state.
RunOutcome run_predict(const Scenario& scenario);

// Governed path following with the scenario's prediction method.
RunOutcome run_follow(const Scenario& scenario);

// Governed path following under all four methods, run concurrently.
RunOutcome run_compare(const Scenario& scenario);

// Sinusoidal Si fits of orders 1 to 3; restarts are drawn only with a seed.
RunOutcome run_fit_si(const std::filesystem::path& output_dir,
                      std::optional<std::uint64_t> seed);

// Follow result as columnar text; exposed for tests.
std::string format_follow(const FollowResult& result);
std::string format_trajectory(const Trajectory& trajectory,
                              const Scenario& scenario);

}  // namespace unimotion

#endif  // UNIMOTION_TOOLS_RUNNER_H_
