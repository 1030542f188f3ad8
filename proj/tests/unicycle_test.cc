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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.h"

namespace unimotion {
namespace {

using testing::Rng;

constexpr double kTight = 1e-12;
const Vec2 kOrigin{0, 0};

UnicycleState at_origin(double theta) { return {kOrigin, Angle(theta)}; }

TEST(ControlGains, RejectsNonPositive) {
  EXPECT_THROW(ControlGains(0, 1), std::invalid_argument);
  EXPECT_THROW(ControlGains(1, -2), std::invalid_argument);
  EXPECT_THROW(ControlGains(NAN, 1), std::invalid_argument);
  EXPECT_THROW(ControlGains(1, INFINITY), std::invalid_argument);
  EXPECT_DOUBLE_EQ(ControlGains(1, 2).si_weight(), 0.25);
}

TEST(SteeringMode, ParsesNames) {
  EXPECT_EQ(parse_steering_mode("bi"), SteeringMode::kBidirectional);
  EXPECT_EQ(parse_steering_mode("forward"), SteeringMode::kForward);
  EXPECT_EQ(parse_steering_mode("bwd"), SteeringMode::kBackward);
  EXPECT_THROW(parse_steering_mode("sideways"), std::invalid_argument);
  for (auto m : {SteeringMode::kBidirectional, SteeringMode::kForward,
                 SteeringMode::kBackward}) {
    EXPECT_EQ(parse_steering_mode(to_string(m)), m);
  }
}

TEST(HeadingError, Examples) {
  EXPECT_NEAR(heading_error(at_origin(0), {1, 1}), std::atan(1.0), kTight);
  EXPECT_EQ(heading_error(at_origin(0.7), kOrigin), 0.0);
  EXPECT_EQ(heading_error(at_origin(0), {-1, 0}), 0.0);
  EXPECT_NEAR(heading_error(at_origin(0), {0, 2}), kHalfPi, kTight);
  EXPECT_NEAR(heading_error(at_origin(0), {0, -2}), -kHalfPi, kTight);
}

TEST(HeadingError, MatchesArctanOfRatio) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    const Vec2 d = g - s.position;
    const double th = s.orientation.radians();
    const double along = std::cos(th) * d.x + std::sin(th) * d.y;
    const double lateral = -std::sin(th) * d.x + std::cos(th) * d.y;
    const double psi = heading_error(s, g);
    EXPECT_NEAR(psi, std::atan(lateral / along), 1e-12);
    EXPECT_LE(std::abs(psi), kHalfPi);
  }
}

TEST(HeadingError, DirectionalExamples) {
  // Goal straight behind: forward error sits on the branch cut, canonical -pi.
  EXPECT_EQ(heading_error_forward(at_origin(0), {-1, 0}), -kPi);
  EXPECT_EQ(heading_error_backward(at_origin(0), {-1, 0}), 0.0);
  EXPECT_EQ(heading_error_forward(at_origin(0), {1, 0}), 0.0);
  EXPECT_NEAR(heading_error_forward(at_origin(0), {0, 1}), kHalfPi, kTight);
  EXPECT_NEAR(heading_error_backward(at_origin(0), {0, 1}), -kHalfPi, kTight);
  EXPECT_EQ(heading_error_forward(at_origin(1), kOrigin), 0.0);
  EXPECT_EQ(heading_error_backward(at_origin(1), kOrigin), 0.0);
}

TEST(HeadingError, DirectionalMatchesAtan2Oracle) {
  Rng rng(2);
  for (int i = 0; i < 2000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    const double th = s.orientation.radians();
    // Bearing of the goal minus the orientation.
    const double bearing = std::atan2(g.y - s.position.y, g.x - s.position.x);
    const double f = heading_error_forward(s, g);
    const double b = heading_error_backward(s, g);
    EXPECT_NEAR(std::remainder(f - (bearing - th), 2 * kPi), 0, 1e-9);
    EXPECT_NEAR(std::remainder(b - (bearing - th - kPi), 2 * kPi), 0, 1e-9);
    EXPECT_GE(f, -kPi);
    EXPECT_LT(f, kPi);
    EXPECT_GE(b, -kPi);
    EXPECT_LT(b, kPi);
    // Within the front half-plane the forward and bidirectional errors agree.
    if (std::abs(f) < kHalfPi) EXPECT_NEAR(f, heading_error(s, g), 1e-12);
    if (std::abs(b) < kHalfPi) EXPECT_NEAR(b, heading_error(s, g), 1e-12);
  }
}

TEST(HeadingError, AligningRemovesTheError) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    const double psi = heading_error(s, g);
    if (std::abs(psi) > kHalfPi - 1e-6) continue;
    const double th = s.orientation.radians();
    EXPECT_NEAR(heading_error({s.position, Angle(th + psi)}, g), 0, 1e-9);
    const double extra = rng.uniform(-kHalfPi + 1e-3, kHalfPi - 1e-3);
    EXPECT_NEAR(heading_error({s.position, Angle(th + psi + extra)}, g), -extra,
                1e-9);
  }
}

TEST(ControlBidirectional, Examples) {
  const ControlGains gains(1, 2);
  const ControlInput u = control_bidirectional(at_origin(0), {1, 1}, gains);
  EXPECT_NEAR(u.v, 1, kTight);
  EXPECT_NEAR(u.w, 2 * (kPi / 4) + 0.5 * std::sin(kHalfPi), kTight);
  // Second form: kw psi + kv (n.d/|d|)(o.d/|d|).
  EXPECT_NEAR(u.w, 2 * (kPi / 4) + 1.0 * (1 / std::sqrt(2.0)) * (1 / std::sqrt(2.0)),
              kTight);
  const ControlInput z = control_bidirectional(at_origin(0.3), kOrigin, gains);
  EXPECT_EQ(z.v, 0.0);
  EXPECT_EQ(z.w, 0.0);
  const ControlInput rev = control_bidirectional(at_origin(0), {-2, 0}, gains);
  EXPECT_LT(rev.v, 0);
  EXPECT_EQ(rev.w, 0.0);
}

TEST(ControlDirectional, Examples) {
  const ControlGains gains(1, 2);
  // Goal behind: forward control turns in place.
  const ControlInput f = control_forward(at_origin(0), {-1, 0.5}, gains);
  EXPECT_EQ(f.v, 0.0);
  EXPECT_NEAR(f.w, 2 * heading_error_forward(at_origin(0), {-1, 0.5}), kTight);
  // Goal ahead: identical to the bidirectional control.
  const ControlInput a = control_forward(at_origin(0.2), {2, 1}, gains);
  const ControlInput b = control_bidirectional(at_origin(0.2), {2, 1}, gains);
  EXPECT_NEAR(a.v, b.v, kTight);
  EXPECT_NEAR(a.w, b.w, kTight);
  const ControlInput back = control_backward(at_origin(0), {-1, 0}, gains);
  EXPECT_NEAR(back.v, -1, kTight);
  EXPECT_EQ(back.w, 0.0);
  // Boundary |psi| = pi/2 takes the moving branch.
  const ControlInput edge = control_forward(at_origin(0), {0, 1}, gains);
  EXPECT_NEAR(edge.w, 2 * kHalfPi + 0.5 * std::sin(kPi), kTight);
}

TEST(ControlDirectional, SignOfSpeedAndConsistency) {
  Rng rng(4);
  const ControlGains gains(rng.uniform(0.5, 2), rng.uniform(0.5, 2));
  for (int i = 0; i < 2000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    EXPECT_GE(control_forward(s, g, gains).v, 0.0);
    EXPECT_LE(control_backward(s, g, gains).v, 0.0);
    const ControlInput bi = control_bidirectional(s, g, gains);
    const ControlInput via = control(s, g, gains, SteeringMode::kBidirectional);
    EXPECT_EQ(bi.v, via.v);
    EXPECT_EQ(bi.w, via.w);
  }
}

TEST(StateDerivative, Examples) {
  const StateDerivative d = state_derivative(at_origin(0), {1, 0});
  EXPECT_EQ(d.position, (Vec2{1, 0}));
  const StateDerivative r = state_derivative(at_origin(1), {0, 0.5});
  EXPECT_EQ(r.position, (Vec2{0, 0}));
  EXPECT_EQ(r.orientation, 0.5);
  const StateDerivative q = state_derivative(at_origin(kPi / 4), {2, 0});
  EXPECT_NEAR(q.position.x, std::sqrt(2.0), kTight);
  EXPECT_NEAR(q.position.y, std::sqrt(2.0), kTight);
}

TEST(StateDerivative, NoSidewaysMotion) {
  Rng rng(5);
  const ControlGains gains(1, 2);
  for (int i = 0; i < 2000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    for (auto m : {SteeringMode::kBidirectional, SteeringMode::kForward,
                   SteeringMode::kBackward}) {
      const StateDerivative d = state_derivative(s, control(s, g, gains, m));
      EXPECT_NEAR(dot(normal_vector(s.orientation.radians()), d.position), 0,
                  1e-15 * std::max(1.0, norm(d.position)));
    }
  }
}

TEST(ControlBidirectional, DistanceRateIsNonPositive) {
  // d/dt |g - x|^2 = -2 kv (o.(g - x))^2, checked against the closed form.
  Rng rng(6);
  const ControlGains gains(1.3, 2);
  for (int i = 0; i < 1000; ++i) {
    const UnicycleState s = rng.state(-3, 3);
    const Vec2 g = rng.point(-3, 3);
    const StateDerivative d =
        state_derivative(s, control_bidirectional(s, g, gains));
    const double rate = -2 * dot(g - s.position, d.position);
    const double along = dot(heading_vector(s.orientation.radians()), g - s.position);
    EXPECT_NEAR(rate, -2 * gains.kv() * along * along, 1e-9);
    EXPECT_LE(rate, 1e-12);
  }
}

}  // namespace
}  // namespace unimotion
