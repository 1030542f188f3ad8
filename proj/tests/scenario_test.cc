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

#include "scenario.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "runner.h"
#include "unimotion/error.h"

namespace unimotion {
namespace {

namespace fs = std::filesystem;
const fs::path kScenarios = UNIMOTION_SCENARIO_DIR;

const char* kMinimal = R"(world:
  workspace: [[-5, -5], [5, -5], [5, 5], [-5, 5]]
  obstacles: []
path: [[0, 0], [3, 0]]
)";

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("unimotion_" + name);
  fs::remove_all(p);
  return p;
}

// Message of the ValidationError thrown while parsing, or "" if none.
std::string parse_error(const std::string& text) {
  try {
    parse_scenario(text, "s.yaml");
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadScenario, MinimalScenarioTakesDefaults) {
  const Scenario sc = parse_scenario(kMinimal);
  EXPECT_EQ(sc.gains.kv(), 1.0);
  EXPECT_EQ(sc.gains.kw(), 2.0);
  EXPECT_EQ(sc.governor.k_eps, 4.0);
  EXPECT_EQ(sc.governor.k_s, 4.0);
  EXPECT_EQ(sc.method, PredictionMethod::kDiamond);
  EXPECT_EQ(sc.mode, SteeringMode::kBidirectional);
  EXPECT_EQ(sc.world.robot_radius, 0.0);
  EXPECT_TRUE(sc.world.obstacles.empty());
  ASSERT_TRUE(sc.path.has_value());
  EXPECT_EQ(sc.initial.position, (Vec2{0, 0}));
  EXPECT_EQ(sc.initial.orientation.radians(), 0.0);
  EXPECT_EQ(sc.goal, (Vec2{3, 0}));
  EXPECT_EQ(sc.follow.settings.max_time, sc.integrator.max_time);
}

TEST(LoadScenario, InitialOrientationFollowsTheFirstSegment) {
  const Scenario sc = parse_scenario(R"(world:
  workspace: [[-5, -5], [5, -5], [5, 5], [-5, 5]]
path: [[0, 0], [0, 2], [1, 2]]
)");
  EXPECT_DOUBLE_EQ(sc.initial.orientation.radians(), std::atan2(1.0, 0.0));
}

TEST(LoadScenario, ShippedScenariosLoad) {
  const Scenario bench = load_scenario(kScenarios / "benchmark_corridor.yaml");
  EXPECT_EQ(bench.name, "benchmark_corridor");
  EXPECT_EQ(bench.world.obstacles.size(), 4u);
  ASSERT_TRUE(bench.path.has_value());
  EXPECT_NO_THROW(bench.path->validate_clearance(bench.world));
  EXPECT_EQ(bench.initial.position, bench.path->waypoints().front());
  EXPECT_NO_THROW(load_scenario(kScenarios / "minimal.yaml"));
  const Scenario fixed = load_scenario(kScenarios / "fixed_goal.yaml");
  EXPECT_FALSE(fixed.path.has_value());
  EXPECT_EQ(fixed.goal, (Vec2{1, 1}));
  EXPECT_EQ(fixed.snapshot_interval, 0.5);
}

TEST(LoadScenario, NegativeRobotRadius) {
  const std::string msg = parse_error(R"(world:
  workspace: [[-5, -5], [5, -5], [5, 5], [-5, 5]]
  robot_radius: -0.1
path: [[0, 0], [3, 0]]
)");
  EXPECT_NE(msg.find("s.yaml:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("robot_radius"), std::string::npos) << msg;
}

TEST(LoadScenario, UnknownKeysAreRejectedWithTheirLine) {
  std::string msg = parse_error(std::string(kMinimal) + "gain: {kv: 2}\n");
  EXPECT_NE(msg.find("s.yaml:5:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown key 'gain'"), std::string::npos) << msg;
  msg = parse_error(std::string(kMinimal) + "gains: {kv: 2, komega: 3}\n");
  EXPECT_NE(msg.find("unknown key 'komega' in 'gains'"), std::string::npos) << msg;
}

TEST(LoadScenario, RejectsMalformedInput) {
  EXPECT_NE(parse_error("world: [unclosed\n"), "");
  EXPECT_NE(parse_error("just text"), "");
  EXPECT_NE(parse_error(std::string(kMinimal) + "gains: {kv: -1}\n"), "");
  EXPECT_NE(parse_error(std::string(kMinimal) + "gains: {kv: fast}\n"), "");
  EXPECT_NE(parse_error(std::string(kMinimal) + "prediction: {method: blob}\n"), "");
  EXPECT_NE(parse_error(std::string(kMinimal) + "integrator: {max_time: 0}\n"), "");
  // Neither a path nor a goal.
  EXPECT_NE(parse_error("world: {workspace: [[0, 0], [1, 0], [0, 1]]}\n"), "");
  // Non-convex workspace and a repeated waypoint.
  EXPECT_NE(parse_error(R"(world:
  workspace: [[0, 0], [4, 0], [1, 1], [0, 4]]
path: [[0.5, 0.5], [0.6, 0.6]]
)"),
            "");
  EXPECT_NE(parse_error(R"(world:
  workspace: [[-5, -5], [5, -5], [5, 5], [-5, 5]]
path: [[0, 0], [0, 0]]
)"),
            "");
}

TEST(LoadScenario, PathThroughAnObstacleFailsClearance) {
  const std::string msg = parse_error(R"(world:
  workspace: [[-5, -5], [5, -5], [5, 5], [-5, 5]]
  robot_radius: 0.2
  obstacles:
    - {type: disk, center: [1.5, 0], radius: 0.5}
path: [[0, 0], [3, 0]]
)");
  EXPECT_NE(msg.find("s.yaml:6:"), std::string::npos) << msg;
}

TEST(LoadScenario, MissingFile) {
  EXPECT_THROW(load_scenario(kScenarios / "does_not_exist.yaml"), ValidationError);
}

TEST(Run, FollowIsDeterministic) {
  Scenario sc = parse_scenario(kMinimal);
  sc.output_dir = scratch("det_a");
  const RunOutcome a = run_follow(sc);
  sc.output_dir = scratch("det_b");
  const RunOutcome b = run_follow(sc);
  EXPECT_EQ(a.code, ExitCode::kOk);
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    EXPECT_EQ(a.files[i].filename(), b.files[i].filename());
    EXPECT_EQ(read(a.files[i]), read(b.files[i])) << a.files[i];
  }
  const std::string data = read(a.files[0]);
  EXPECT_EQ(data.substr(0, data.find('\n')), kColumns);
  EXPECT_EQ(a.report["run"]["reached_end"], true);
}

TEST(Run, SimulateSnapshotsContainTheRemainingTrajectory) {
  Scenario sc = load_scenario(kScenarios / "fixed_goal.yaml");
  sc.output_dir = scratch("simulate");
  const RunOutcome r = run_simulate(sc);
  EXPECT_EQ(r.code, ExitCode::kOk);
  EXPECT_EQ(r.report["converged"], true);
  EXPECT_EQ(r.report["containment_ok"], true) << r.report.dump(2);
  EXPECT_GE(r.report["snapshots"].get<int>(), 2);
  EXPECT_NEAR(r.report["total_turning"]["signed"].get<double>(),
              r.report["total_turning"]["closed_form"].get<double>(), 1e-3);
}

TEST(Run, PredictNamesTheViolatedHypothesis) {
  Scenario sc = load_scenario(kScenarios / "fixed_goal.yaml");
  sc.output_dir = scratch("predict");
  sc.gains = ControlGains(3, 1);
  sc.method = PredictionMethod::kBall;
  const RunOutcome r = run_predict(sc);
  EXPECT_TRUE(r.report["sets"]["diamond"].contains("unavailable"));
  sc.method = PredictionMethod::kDiamond;
  try {
    run_predict(sc);
    FAIL() << "expected a precondition failure";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("kv <= kw"), std::string::npos);
  }
}

TEST(Run, TruncationIsReported) {
  Scenario sc = parse_scenario(kMinimal);
  sc.output_dir = scratch("truncated");
  sc.follow.settings.max_time = 0.5;
  const RunOutcome r = run_follow(sc);
  EXPECT_EQ(r.code, ExitCode::kIncomplete);
  EXPECT_EQ(r.report["run"]["truncated"], true);
}

}  // namespace
}  // namespace unimotion
