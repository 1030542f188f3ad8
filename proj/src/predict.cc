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

#include "unimotion/predict.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "unimotion/turning.h"

namespace unimotion {
namespace {

void require_diamond_gains(const ControlGains& gains) {
  if (gains.kv() > gains.kw()) {
    throw PreconditionError(
        "diamond prediction requires kv <= kw (got kv = " +
        std::to_string(gains.kv()) + ", kw = " + std::to_string(gains.kw()) +
        "); otherwise the initial and final heading lines need not intersect");
  }
}

// Intersection point for a heading error psi with |psi| <= pi/2, i.e. in the
// regime where all controllers coincide with the bidirectional one.
Vec2 intersection_for(const Vec2& x, const Vec2& goal, double psi,
                      const ControlGains& gains) {
  const Vec2 d = goal - x;
  if (psi == 0.0) {
    const double r = gains.kv() / gains.kw();
    return x + (r / (1.0 + r)) * d;
  }
  const double c = gains.si_weight();
  const double final_psi = -c * sine_integral(2.0 * psi);
  const double total = psi + c * sine_integral(2.0 * psi);
  return x - (std::sin(final_psi) / std::sin(total)) * rotate(-psi, d);
}

Polygon diamond(const UnicycleState& state, const Vec2& goal, double psi,
                const ControlGains& gains) {
  const Vec2& x = state.position;
  const Vec2 d = goal - x;
  if (std::abs(psi) > kHalfPi) {
    // Turning in place first, then moving from |psi| = pi/2.
    const double t = std::tan(gains.si_weight() * sine_integral(kPi));
    const std::array<Vec2, 3> pts{goal, x + t * rotate(-kHalfPi, d),
                                  x + t * rotate(kHalfPi, d)};
    return Polygon::hull(pts);
  }
  const Vec2 xs = intersection_for(x, goal, psi, gains);
  const std::array<Vec2, 4> pts{x, goal, xs, reflect_across_line(xs, x, goal)};
  return Polygon::hull(pts);
}

}  // namespace

std::string_view to_string(PredictionMethod method) {
  switch (method) {
    case PredictionMethod::kBall:
      return "ball";
    case PredictionMethod::kCone:
      return "cone";
    case PredictionMethod::kDiamond:
      return "diamond";
    case PredictionMethod::kForwardReachable:
      return "reachable";
  }
  return "ball";
}

PredictionMethod parse_prediction_method(std::string_view name) {
  if (name == "ball") return PredictionMethod::kBall;
  if (name == "cone") return PredictionMethod::kCone;
  if (name == "diamond") return PredictionMethod::kDiamond;
  if (name == "reachable" || name == "forward-reachable") {
    return PredictionMethod::kForwardReachable;
  }
  throw std::invalid_argument("unknown prediction method '" +
                              std::string(name) +
                              "' (expected ball, cone, diamond or reachable)");
}

std::pair<Vec2, Vec2> projected_goal(const UnicycleState& state,
                                     const Vec2& goal) {
  const Vec2& x = state.position;
  const Vec2 d = goal - x;
  const double psi = heading_error(state, goal);
  const double c = std::cos(psi);
  return {x + c * rotate(-psi, d), x + c * rotate(psi, d)};
}

std::pair<Vec2, Vec2> heading_line_intersection(const UnicycleState& state,
                                                const Vec2& goal,
                                                const ControlGains& gains) {
  require_diamond_gains(gains);
  const Vec2& x = state.position;
  if (x == goal) return {goal, goal};
  const Vec2 xs = intersection_for(x, goal, heading_error(state, goal), gains);
  return {xs, reflect_across_line(xs, x, goal)};
}

CharacteristicPoints characteristic_points(const UnicycleState& state,
                                           const Vec2& goal,
                                           const ControlGains& gains) {
  const auto [p, pr] = projected_goal(state, goal);
  const auto [xs, xsr] = heading_line_intersection(state, goal, gains);
  return {p, pr, xs, xsr};
}

MotionPrediction predict(const UnicycleState& state, const Vec2& goal,
                         const ControlGains& gains, PredictionMethod method,
                         SteeringMode mode, const PredictionOptions& options) {
  if (method == PredictionMethod::kDiamond) require_diamond_gains(gains);
  MotionPrediction m{method, Disk{goal, 0.0}, goal, state};
  const Vec2& x = state.position;
  if (x == goal) {
    if (method == PredictionMethod::kDiamond) {
      m.body = Polygon::hull(std::array<Vec2, 1>{goal});
    } else if (method == PredictionMethod::kForwardReachable) {
      m.body = PointChain{{goal}};
    }
    return m;
  }
  const double dist = distance(x, goal);
  const double psi = heading_error(state, goal, mode);
  switch (method) {
    case PredictionMethod::kBall:
      m.body = Disk{goal, dist};
      break;
    case PredictionMethod::kCone:
      if (std::abs(psi) > kHalfPi) {
        m.body = Disk{goal, dist};
      } else {
        m.body = ConeHull{x, Disk{goal, std::sin(std::abs(psi)) * dist}};
      }
      break;
    case PredictionMethod::kDiamond:
      m.body = diamond(state, goal, psi, gains);
      break;
    case PredictionMethod::kForwardReachable:
      m.body = PointChain{
          simulate_reachable_chain(state, goal, gains, mode, options.reachable)
              .points};
      break;
  }
  return m;
}

double distance_to_prediction(const Vec2& p, const MotionPrediction& m) {
  return distance_point_to_set(p, m.body);
}

double prediction_radius_about_goal(const MotionPrediction& m) {
  return max_distance_from(m.body, m.goal);
}

}  // namespace unimotion
