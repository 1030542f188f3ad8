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

// Safe path following: the goal of the unicycle controller slides along a
// reference path only as fast as the clearance of the predicted motion allows.

#ifndef UNIMOTION_GOVERN_H_
#define UNIMOTION_GOVERN_H_

#include <vector>

#include "unimotion/geom.h"
#include "unimotion/integrate.h"
#include "unimotion/predict.h"
#include "unimotion/unicycle.h"

namespace unimotion {

// A disk robot of radius robot_radius moving in a convex workspace among
// disk and polygon obstacles.
struct World {
  Polygon workspace;
  std::vector<ConvexSet> obstacles;
  double robot_radius = 0.0;

  // Throws ValidationError on a degenerate workspace, a negative radius or an
  // obstacle that is not a Disk or Polygon.
  void validate() const;
};

// Largest margin by which the set stays clear of the robot-inflated
// obstacles and inside the robot-deflated workspace; 0 once it leaves the
// free space.
double free_space_distance(const World& world, const ConvexSet& set);
double free_space_distance(const World& world, const MotionPrediction& m);

// Distance of the robot disk at p to the nearest obstacle or workspace edge;
// negative when the disk pokes out of the workspace.
double robot_clearance(const World& world, const Vec2& p);

struct PathPoint {
  Vec2 point;
  bool clamped = false;  // the requested arc length was outside [0, length]
};

// Polyline parametrized by arc length s in [0, length()].
class ReferencePath {
 public:
  // Throws ValidationError with fewer than two waypoints, non-finite
  // coordinates or zero-length segments.
  explicit ReferencePath(std::vector<Vec2> waypoints);

  const std::vector<Vec2>& waypoints() const { return waypoints_; }
  double length() const { return cumulative_.back(); }
  PathPoint point_at(double s) const;

  // Throws ValidationError unless every waypoint and every sample spaced
  // 0.01 * length() apart has positive clearance.
  void validate_clearance(const World& world) const;

 private:
  std::vector<Vec2> waypoints_;
  std::vector<double> cumulative_;
};

struct GovernorGains {
  double k_eps = 4.0;  // 1/s
  double k_s = 4.0;    // 1/s

  // Throws std::invalid_argument unless both are finite and positive.
  void validate() const;
};

struct GovernedState {
  double s = 0.0;
  UnicycleState robot;
};

struct GovernorConfig {
  ControlGains gains{1.0, 2.0};
  GovernorGains governor;
  PredictionMethod method = PredictionMethod::kDiamond;
  SteeringMode mode = SteeringMode::kBidirectional;
  PredictionOptions prediction;
};

struct GovernedDerivative {
  double ds = 0.0;
  Vec2 position;
  double orientation = 0.0;
  double safedist = 0.0;
  ControlInput input;
};

GovernedDerivative governed_derivative(const GovernedState& state,
                                       const World& world,
                                       const ReferencePath& path,
                                       const GovernorConfig& config);

struct FollowOptions {
  IntegratorSettings settings;
  // Completion: s >= length - s_tol and |x - p(length)| <= position_tol.
  double s_tol = 1e-4;
  double position_tol = 1e-3;
  // A run whose path parameter stays frozen (ds == 0) this long is stopped.
  double stall_window = 10.0;  // s
};

struct FollowSample {
  double t = 0.0;
  GovernedState state;
  double heading = 0.0;  // unwrapped orientation
  ControlInput input;
  double psi = 0.0;
  double dist_goal = 0.0;
  double safedist = 0.0;
  double clearance = 0.0;
};

struct FollowResult {
  std::vector<FollowSample> samples;
  double travel_time = 0.0;
  double min_clearance = 0.0;
  double terminal_error = 0.0;  // |x - p(length)|
  double final_s = 0.0;
  bool reached_end = false;
  bool stalled = false;
  bool truncated = false;
};

// Runs the governed system from s = 0. Throws PreconditionError unless the
// robot starts at the first waypoint.
FollowResult follow_path(const World& world, const ReferencePath& path,
                         const UnicycleState& initial,
                         const GovernorConfig& config,
                         const FollowOptions& options = {});

}  // namespace unimotion

#endif  // UNIMOTION_GOVERN_H_
