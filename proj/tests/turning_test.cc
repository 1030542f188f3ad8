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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "test_support.h"
#include "unimotion/simulate.h"

namespace unimotion {
namespace {

using testing::Rng;

// Robot at the origin heading along +x with the goal at unit distance and
// heading error psi.
UnicycleState facing(double psi) { return {{0, 0}, Angle(-psi)}; }
const Vec2 kGoal{1, 0};

TEST(SineIntegral, MatchesQuadratureOracle) {
  for (int k = -400; k <= 400; ++k) {
    const double x = kSineIntegralDomain * k / 400.0;
    EXPECT_NEAR(sine_integral(x), testing::si_by_quadrature(x), 1e-12) << x;
  }
  EXPECT_NEAR(sine_integral(kPi), 1.8519370519824662, 1e-13);
  EXPECT_NEAR(sine_integral(kPi), testing::si_by_quadrature(kPi), 1e-13);
}

TEST(SineIntegral, BasicProperties) {
  EXPECT_EQ(sine_integral(0), 0.0);
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(0, kSineIntegralDomain);
    EXPECT_EQ(sine_integral(-x), -sine_integral(x));
  }
  double prev = sine_integral(-kPi);
  for (int k = -999; k <= 1000; ++k) {
    const double x = kPi * k / 1000.0;
    const double v = sine_integral(x);
    EXPECT_GT(v, prev);
    EXPECT_LE(std::abs(v), std::abs(x) + 1e-15);
    prev = v;
  }
  EXPECT_THROW(sine_integral(kSineIntegralDomain * 1.0001), std::domain_error);
  EXPECT_THROW(sine_integral(NAN), std::domain_error);
}

TEST(TotalTurning, Examples) {
  const ControlGains g12(1, 2);
  EXPECT_EQ(total_turning(facing(0), kGoal, g12), 0.0);
  const double quarter = total_turning({{0, 0}, Angle(0)}, {1, 1}, g12);
  EXPECT_NEAR(quarter, kPi / 4 + testing::si_by_quadrature(kHalfPi) / 4, 1e-12);
  EXPECT_NEAR(quarter, 1.12809, 1e-5);
  const double spiral = total_turning(facing(kHalfPi), kGoal, ControlGains(4, 1));
  EXPECT_NEAR(spiral, kHalfPi + 2 * testing::si_by_quadrature(kPi), 1e-12);
  EXPECT_GT(spiral, kPi);
}

TEST(TotalTurning, MatchesSimulatedIntegral) {
  IntegratorSettings s;
  s.max_step = 0.005;
  s.goal_eps = 1e-10;
  s.abs_tol = 1e-14;
  for (double psi : {-1.2, -0.4, 0.3, kPi / 4}) {
    for (double kw : {1.0, 2.0}) {
      const ControlGains gains(1, kw);
      const Trajectory t =
          simulate_to_goal(facing(psi), kGoal, gains, SteeringMode::kBidirectional, s);
      ASSERT_TRUE(t.converged);
      const TurningIntegral ti = integrated_turning(t);
      const double closed = total_turning(facing(psi), kGoal, gains);
      EXPECT_NEAR(closed, ti.signed_total, 1e-3) << psi << " " << kw;
      // Angular velocity keeps one sign: total and absolute turning agree.
      EXPECT_NEAR(std::abs(closed), ti.absolute_total, 1e-3);
    }
  }
}

TEST(TotalTurning, SameSignDecompositionAndBounds) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const double psi = rng.uniform(-kHalfPi, kHalfPi);
    const ControlGains gains(rng.uniform(0.1, 3), rng.uniform(0.1, 3));
    const double th = total_turning(facing(psi), kGoal, gains);
    EXPECT_NEAR(std::abs(th),
                std::abs(psi) + gains.si_weight() * std::abs(sine_integral(2 * psi)),
                1e-12);
    const auto [lo, hi] = turning_bounds(psi, gains);
    EXPECT_LE(lo, std::abs(th) + 1e-12);
    EXPECT_LE(std::abs(th), hi + 1e-12);
  }
}

TEST(TurningBounds, Examples) {
  const auto [a, b] = turning_bounds(0, ControlGains(1, 2));
  EXPECT_EQ(a, 0.0);
  EXPECT_EQ(b, 0.0);
  const auto [c, d] = turning_bounds(kHalfPi, ControlGains(2, 2));
  EXPECT_DOUBLE_EQ(c, kHalfPi);
  EXPECT_DOUBLE_EQ(d, kPi);
  EXPECT_THROW(turning_bounds(2.0, ControlGains(1, 1)), std::domain_error);
}

TEST(TotalTurning, DirectionalModesClampTheArgument) {
  const ControlGains gains(1, 2);
  // Goal straight behind: the forward robot turns half a turn in place.
  const UnicycleState s{{0, 0}, Angle(0)};
  const double fwd = total_turning(s, {-1, 0.2}, gains, SteeringMode::kForward);
  const double psi_f = heading_error_forward(s, {-1, 0.2});
  EXPECT_NEAR(fwd, psi_f + 0.25 * sine_integral(kPi), 1e-12);
  EXPECT_EQ(total_turning(s, {-1, 0}, gains, SteeringMode::kBackward), 0.0);
  // Front half-plane: identical to bidirectional.
  EXPECT_EQ(total_turning(s, {1, 0.5}, gains, SteeringMode::kForward),
            total_turning(s, {1, 0.5}, gains));
}

TEST(TotalTurning, DirectionalMatchesSimulation) {
  IntegratorSettings s;
  s.max_step = 0.005;
  s.goal_eps = 1e-10;
  s.abs_tol = 1e-14;
  const ControlGains gains(1, 2);
  const UnicycleState start{{0, 0}, Angle(0.3)};
  for (Vec2 goal : {Vec2{-1, 0.5}, Vec2{-1, -2}, Vec2{0.5, 1}}) {
    for (auto mode : {SteeringMode::kForward, SteeringMode::kBackward}) {
      const Trajectory t = simulate_to_goal(start, goal, gains, mode, s);
      ASSERT_TRUE(t.converged);
      EXPECT_NEAR(total_turning(start, goal, gains, mode),
                  integrated_turning(t).signed_total, 2e-3);
    }
  }
}

TEST(FinalOrientation, Examples) {
  const ControlGains gains(1, 2);
  const UnicycleState s{{0, 0}, Angle(0)};
  EXPECT_EQ(final_orientation(facing(0), kGoal, gains).radians(),
            facing(0).orientation.radians());
  const TurningReport r = turning_report(s, {1, 1}, gains);
  EXPECT_NEAR(r.final_orientation.radians(), 1.12809, 1e-5);
  EXPECT_NEAR(r.final_heading_error, -sine_integral(kHalfPi) / 4, 1e-12);
  EXPECT_NEAR(r.final_heading_error, -0.34269, 1e-5);

  IntegratorSettings st;
  st.goal_eps = 1e-9;
  const Trajectory t = simulate_to_goal(s, {1, 1}, gains, SteeringMode::kBidirectional, st);
  ASSERT_TRUE(t.converged);
  EXPECT_NEAR(angle_difference(t.samples.back().state.orientation.radians(),
                               r.final_orientation.radians()),
              0, 1e-4);
}

TEST(FinalOrientation, FinalHeadingErrorIdentity) {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const UnicycleState s = rng.state(-2, 2);
    const Vec2 g = rng.point(-2, 2);
    const double kw = rng.uniform(0.2, 3);
    const ControlGains gains(rng.uniform(0.05, 1) * kw, kw);
    const double psi = heading_error(s, g);
    if (std::abs(psi) > kHalfPi - 1e-6) continue;
    const TurningReport r = turning_report(s, g, gains);
    EXPECT_NEAR(r.final_heading_error, -gains.si_weight() * sine_integral(2 * psi),
                1e-9);
    EXPECT_NEAR(r.theta_total, psi - r.final_heading_error, 1e-9);
    EXPECT_NEAR(std::abs(r.theta_total),
                std::abs(psi) + std::abs(r.final_heading_error), 1e-9);
  }
}

TEST(SiFit, ReproducesReferenceTable) {
  const double bands[] = {1.6e-2, 2.6e-3, 1.2e-3};
  for (int n = 1; n <= 3; ++n) {
    SiFitOptions o;
    o.order = n;
    const SiFit f = fit_si_sinusoids(o);
    EXPECT_TRUE(f.converged);
    EXPECT_EQ(f.order, n);
    EXPECT_EQ(f.weights.size(), static_cast<std::size_t>(n));
    EXPECT_LE(f.rmse, bands[n - 1]);
    EXPECT_LE(f.rmse, 8.0e-3 * 2);
    for (int k = 1; k < n; ++k) EXPECT_LT(f.frequencies[k - 1], f.frequencies[k]);
    for (double a : f.weights) EXPECT_GT(a, 0);
  }
  SiFitOptions o3;
  const SiFit f3 = fit_si_sinusoids(o3);
  const double a[] = {1.964, 0.553, 0.189}, w[] = {0.235, 0.656, 0.931};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(f3.weights[k], a[k], 0.05);
    EXPECT_NEAR(f3.frequencies[k], w[k], 0.05);
  }
  SiFitOptions o1;
  o1.order = 1;
  const SiFit f1 = fit_si_sinusoids(o1);
  EXPECT_NEAR(f1.weights[0], 1.839, 0.01);
  EXPECT_NEAR(f1.frequencies[0], 0.535, 0.01);
}

TEST(SiFit, ReportedRmseMatchesEvaluation) {
  SiFitOptions o;
  o.order = 2;
  o.grid_size = 501;
  const SiFit f = fit_si_sinusoids(o);
  double sum = 0;
  for (int i = 0; i < 501; ++i) {
    const double x = -kPi + 2 * kPi * i / 500.0;
    const double e = f.evaluate(x) - testing::si_by_quadrature(x);
    sum += e * e;
  }
  EXPECT_NEAR(std::sqrt(sum / 501), f.rmse, 1e-9);
}

TEST(SiFit, MultiStartIsDeterministic) {
  SiFitOptions o;
  o.order = 2;
  o.seed = 42;
  o.restarts = 4;
  const SiFit a = fit_si_sinusoids(o), b = fit_si_sinusoids(o);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_LE(a.rmse, 2.6e-3);
}

TEST(SiFit, Errors) {
  SiFitOptions o;
  o.order = 4;
  EXPECT_THROW(fit_si_sinusoids(o), std::invalid_argument);
  o.order = 2;
  o.grid_size = 1;
  EXPECT_THROW(fit_si_sinusoids(o), std::invalid_argument);
  o.grid_size = 2001;
  o.init = std::make_pair(std::vector<double>{1.0}, std::vector<double>{0.5, 0.9});
  EXPECT_THROW(fit_si_sinusoids(o), std::invalid_argument);
  SiFitOptions capped;
  capped.order = 3;
  capped.init = std::make_pair(std::vector<double>{1, 1, 1},
                               std::vector<double>{0.1, 0.2, 0.3});
  capped.max_iterations = 1;
  try {
    fit_si_sinusoids(capped);
    FAIL() << "expected FitError";
  } catch (const FitError& e) {
    EXPECT_EQ(e.best().order, 3);
    EXPECT_FALSE(e.best().converged);
    EXPECT_GT(e.best().rmse, 0);
  }
}

}  // namespace
}  // namespace unimotion
