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

// Kinematic unicycle model and goal-reaching controllers based on angular
// feedback linearization. All controllers are static feedback laws: pure
// functions of (state, goal, gains).

#ifndef UNIMOTION_UNICYCLE_H_
#define UNIMOTION_UNICYCLE_H_

#include <string_view>

#include "unimotion/error.h"
#include "unimotion/geom.h"

namespace unimotion {

struct UnicycleState {
  Vec2 position;
  Angle orientation;
};

class ControlGains {
 public:
  // Throws std::invalid_argument unless both gains are finite and positive.
  ControlGains(double kv, double kw);

  double kv() const { return kv_; }
  double kw() const { return kw_; }
  // kv / (2 kw), the weight of the sine integral term in the turning effort.
  double si_weight() const { return kv_ / (2.0 * kw_); }

 private:
  double kv_;
  double kw_;
};

struct ControlInput {
  double v = 0.0;  // m/s
  double w = 0.0;  // rad/s
};

enum class SteeringMode { kBidirectional, kForward, kBackward };

std::string_view to_string(SteeringMode mode);
// Accepts "bi", "fwd", "bwd" and the long names. Throws std::invalid_argument.
SteeringMode parse_steering_mode(std::string_view name);

// Bidirectional heading error in [-pi/2, pi/2]: the arctangent of
// n.(g - x) / o.(g - x). Zero at the goal; +-pi/2 when the goal is abeam.
double heading_error(const UnicycleState& state, const Vec2& goal);

// atan2(n.d, o.d) in [-pi, pi); zero at the goal.
double heading_error_forward(const UnicycleState& state, const Vec2& goal);
// atan2(-n.d, -o.d) in [-pi, pi); zero at the goal.
double heading_error_backward(const UnicycleState& state, const Vec2& goal);

// Heading error the controller of the given mode regulates.
double heading_error(const UnicycleState& state, const Vec2& goal,
                     SteeringMode mode);

ControlInput control_bidirectional(const UnicycleState& state, const Vec2& goal,
                                   const ControlGains& gains);
ControlInput control_forward(const UnicycleState& state, const Vec2& goal,
                             const ControlGains& gains);
ControlInput control_backward(const UnicycleState& state, const Vec2& goal,
                              const ControlGains& gains);
ControlInput control(const UnicycleState& state, const Vec2& goal,
                     const ControlGains& gains, SteeringMode mode);

struct StateDerivative {
  Vec2 position;       // m/s
  double orientation;  // rad/s
};

StateDerivative state_derivative(const UnicycleState& state,
                                 const ControlInput& input);

}  // namespace unimotion

#endif  // UNIMOTION_UNICYCLE_H_
