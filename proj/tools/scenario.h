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

// Experiment configuration read from a YAML file. The schema is documented in
// scenarios/README.md.

#ifndef UNIMOTION_TOOLS_SCENARIO_H_
#define UNIMOTION_TOOLS_SCENARIO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "unimotion/govern.h"
#include "unimotion/integrate.h"
#include "unimotion/predict.h"
#include "unimotion/unicycle.h"

namespace unimotion {

struct Scenario {
  std::string name;
  World world;
  std::optional<ReferencePath> path;
  UnicycleState initial;
  Vec2 goal;  // fixed goal for simulate and predict
  ControlGains gains{1.0, 2.0};
  GovernorGains governor;
  PredictionMethod method = PredictionMethod::kDiamond;
  SteeringMode mode = SteeringMode::kBidirectional;
  // Tighter than the library default so emitted snapshots pass containment
  // at 1e-6 for trajectories that graze a prediction boundary.
  IntegratorSettings integrator{1e-9, 1e-12};
  FollowOptions follow;
  std::size_t reachable_max_points = 400;
  double snapshot_interval = 1.0;  // s, simulate only
  std::filesystem::path output_dir = "out";

  GovernorConfig governor_config() const;
};

// Throws ValidationError naming the file, line and column of the offending
// node on syntax errors, unknown keys, wrong types or invalid values, and
// when the path leaves the free space.
Scenario load_scenario(const std::filesystem::path& file);
Scenario parse_scenario(const std::string& text,
                        const std::string& source = "<string>");

}  // namespace unimotion

#endif  // UNIMOTION_TOOLS_SCENARIO_H_
