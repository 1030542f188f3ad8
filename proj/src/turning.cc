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

#include "unimotion/turning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace unimotion {

double sine_integral(double x) {
  if (!(std::abs(x) <= kSineIntegralDomain)) {
    throw std::domain_error("sine_integral: |x| must not exceed 4 pi, got " +
                            std::to_string(x));
  }
  // Maclaurin series sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!), with the
  // factorial part advanced by recurrence.
  const double x2 = x * x;
  double power_term = x;  // (-1)^k x^(2k+1) / (2k+1)!
  double sum = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double term = power_term / (2 * k + 1);
    sum += term;
    power_term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    if (std::abs(power_term / (2 * k + 3)) < 1e-16) break;
  }
  return sum;
}

double total_turning(const UnicycleState& state, const Vec2& goal,
                     const ControlGains& gains, SteeringMode mode) {
  const double psi = heading_error(state, goal, mode);
  // Outside |psi| <= pi/2 only the directional modes apply; they turn in place
  // until the heading error reaches +-pi/2.
  const double arg = std::clamp(2.0 * psi, -kPi, kPi);
  return psi + gains.si_weight() * sine_integral(arg);
}

Angle final_orientation(const UnicycleState& state, const Vec2& goal,
                        const ControlGains& gains, SteeringMode mode) {
  return Angle(state.orientation.radians() +
               total_turning(state, goal, gains, mode));
}

TurningReport turning_report(const UnicycleState& state, const Vec2& goal,
                             const ControlGains& gains, SteeringMode mode) {
  TurningReport r;
  r.theta_total = total_turning(state, goal, gains, mode);
  r.final_orientation = Angle(state.orientation.radians() + r.theta_total);
  r.final_heading_error =
      heading_error(UnicycleState{state.position, r.final_orientation}, goal);
  return r;
}

std::pair<double, double> turning_bounds(double psi0,
                                         const ControlGains& gains) {
  if (!(std::abs(psi0) <= kHalfPi)) {
    throw std::domain_error("turning_bounds: |psi0| must not exceed pi/2");
  }
  const double a = std::abs(psi0);
  return {a, (1.0 + gains.kv() / gains.kw()) * a};
}

}  // namespace unimotion
