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

#include "unimotion/unicycle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace unimotion {
namespace {

struct GoalFrame {
  double along;    // o_theta . (g - x)
  double lateral;  // n_theta . (g - x)
  bool at_goal;
};

GoalFrame goal_frame(const UnicycleState& state, const Vec2& goal) {
  const Vec2 d = goal - state.position;
  const double theta = state.orientation.radians();
  return {dot(heading_vector(theta), d), dot(normal_vector(theta), d),
          d.x == 0.0 && d.y == 0.0};
}

double canonical_atan2(double y, double x) {
  const double a = std::atan2(y, x);
  return a >= kPi ? -kPi : a;
}

// Angular velocity of the linearizing law for a heading error psi, with the
// turn-in-place branch used by the directional controllers.
double directional_turn_rate(double psi, const ControlGains& gains) {
  if (std::abs(psi) <= kHalfPi) {
    return gains.kw() * psi + 0.5 * gains.kv() * std::sin(2.0 * psi);
  }
  return gains.kw() * psi;
}

}  // namespace

ControlGains::ControlGains(double kv, double kw) : kv_(kv), kw_(kw) {
  if (!(std::isfinite(kv) && kv > 0.0) || !(std::isfinite(kw) && kw > 0.0)) {
    throw std::invalid_argument("control gains must be finite and positive");
  }
}

std::string_view to_string(SteeringMode mode) {
  switch (mode) {
    case SteeringMode::kBidirectional:
      return "bi";
    case SteeringMode::kForward:
      return "fwd";
    case SteeringMode::kBackward:
      return "bwd";
  }
  return "bi";
}

SteeringMode parse_steering_mode(std::string_view name) {
  if (name == "bi" || name == "bidirectional") return SteeringMode::kBidirectional;
  if (name == "fwd" || name == "forward") return SteeringMode::kForward;
  if (name == "bwd" || name == "backward") return SteeringMode::kBackward;
  throw std::invalid_argument("unknown steering mode '" + std::string(name) +
                              "' (expected bi, fwd or bwd)");
}

double heading_error(const UnicycleState& state, const Vec2& goal) {
  const GoalFrame f = goal_frame(state, goal);
  if (f.at_goal) return 0.0;
  // Folding atan2 onto [-pi/2, pi/2] equals arctan(lateral / along) and stays
  // defined when along == 0.
  double psi = std::atan2(f.lateral, f.along);
  if (psi > kHalfPi) {
    psi -= kPi;
  } else if (psi < -kHalfPi) {
    psi += kPi;
  }
  return psi;
}

double heading_error_forward(const UnicycleState& state, const Vec2& goal) {
  const GoalFrame f = goal_frame(state, goal);
  if (f.at_goal) return 0.0;
  return canonical_atan2(f.lateral, f.along);
}

double heading_error_backward(const UnicycleState& state, const Vec2& goal) {
  const GoalFrame f = goal_frame(state, goal);
  if (f.at_goal) return 0.0;
  return canonical_atan2(-f.lateral, -f.along);
}

double heading_error(const UnicycleState& state, const Vec2& goal,
                     SteeringMode mode) {
  switch (mode) {
    case SteeringMode::kForward:
      return heading_error_forward(state, goal);
    case SteeringMode::kBackward:
      return heading_error_backward(state, goal);
    case SteeringMode::kBidirectional:
      break;
  }
  return heading_error(state, goal);
}

ControlInput control_bidirectional(const UnicycleState& state, const Vec2& goal,
                                   const ControlGains& gains) {
  const GoalFrame f = goal_frame(state, goal);
  const double psi = heading_error(state, goal);
  return {gains.kv() * f.along,
          gains.kw() * psi + 0.5 * gains.kv() * std::sin(2.0 * psi)};
}

ControlInput control_forward(const UnicycleState& state, const Vec2& goal,
                             const ControlGains& gains) {
  const GoalFrame f = goal_frame(state, goal);
  const double psi = heading_error_forward(state, goal);
  return {std::max(0.0, gains.kv() * f.along), directional_turn_rate(psi, gains)};
}

ControlInput control_backward(const UnicycleState& state, const Vec2& goal,
                              const ControlGains& gains) {
  const GoalFrame f = goal_frame(state, goal);
  const double psi = heading_error_backward(state, goal);
  return {std::min(0.0, gains.kv() * f.along), directional_turn_rate(psi, gains)};
}

ControlInput control(const UnicycleState& state, const Vec2& goal,
                     const ControlGains& gains, SteeringMode mode) {
  switch (mode) {
    case SteeringMode::kForward:
      return control_forward(state, goal, gains);
    case SteeringMode::kBackward:
      return control_backward(state, goal, gains);
    case SteeringMode::kBidirectional:
      break;
  }
  return control_bidirectional(state, goal, gains);
}

StateDerivative state_derivative(const UnicycleState& state,
                                 const ControlInput& input) {
  return {input.v * heading_vector(state.orientation.radians()), input.w};
}

}  // namespace unimotion
