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

// Sets guaranteed to contain the whole future closed-loop position trajectory
// toward a fixed goal.

#ifndef UNIMOTION_PREDICT_H_
#define UNIMOTION_PREDICT_H_

#include <string_view>
#include <utility>

#include "unimotion/geom.h"
#include "unimotion/simulate.h"
#include "unimotion/unicycle.h"

namespace unimotion {

// Ordered from the largest to the smallest set.
enum class PredictionMethod { kBall, kCone, kDiamond, kForwardReachable };

std::string_view to_string(PredictionMethod method);
// Accepts ball, cone, diamond, reachable (or forward-reachable).
PredictionMethod parse_prediction_method(std::string_view name);

struct MotionPrediction {
  PredictionMethod method = PredictionMethod::kBall;
  ConvexSet body;
  Vec2 goal;
  UnicycleState state;
};

struct CharacteristicPoints {
  Vec2 projected_goal;
  Vec2 projected_goal_reflection;
  Vec2 intersection;
  Vec2 intersection_reflection;
};

struct PredictionOptions {
  // Used by kForwardReachable only.
  ReachableOptions reachable;
};

// Foot of the perpendicular from the goal onto the heading line, and its
// mirror image across the line through the position and the goal.
std::pair<Vec2, Vec2> projected_goal(const UnicycleState& state,
                                     const Vec2& goal);

// Intersection of the current heading line with the final heading line of
// the bidirectional closed loop, and its mirror image across the line through
// the position and the goal. Throws PreconditionError if kv > kw.
std::pair<Vec2, Vec2> heading_line_intersection(const UnicycleState& state,
                                                const Vec2& goal,
                                                const ControlGains& gains);

CharacteristicPoints characteristic_points(const UnicycleState& state,
                                           const Vec2& goal,
                                           const ControlGains& gains);

// Throws PreconditionError for kDiamond with kv > kw.
MotionPrediction predict(const UnicycleState& state, const Vec2& goal,
                         const ControlGains& gains, PredictionMethod method,
                         SteeringMode mode = SteeringMode::kBidirectional,
                         const PredictionOptions& options = {});

double distance_to_prediction(const Vec2& p, const MotionPrediction& m);

// Largest distance from the goal to a point of the set.
double prediction_radius_about_goal(const MotionPrediction& m);

}  // namespace unimotion

#endif  // UNIMOTION_PREDICT_H_
