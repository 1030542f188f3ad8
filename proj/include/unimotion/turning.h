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

#ifndef UNIMOTION_TURNING_H_
#define UNIMOTION_TURNING_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "unimotion/unicycle.h"

namespace unimotion {

// Largest |x| accepted by sine_integral.
inline constexpr double kSineIntegralDomain = 4.0 * kPi;

// Si(x), the integral of sin(t)/t over [0, x], for |x| <= 4 pi. Absolute error
// below 1e-12. Throws std::domain_error outside the domain.
double sine_integral(double x);

// Signed total turning effort: the integral of the angular velocity over the
// whole closed-loop motion. For the directional modes the sine integral
// argument saturates at +-pi while the robot turns in place.
double total_turning(const UnicycleState& state, const Vec2& goal,
                     const ControlGains& gains,
                     SteeringMode mode = SteeringMode::kBidirectional);

// Orientation reached at the goal, wrap(theta0 + total turning).
Angle final_orientation(const UnicycleState& state, const Vec2& goal,
                        const ControlGains& gains,
                        SteeringMode mode = SteeringMode::kBidirectional);

struct TurningReport {
  double theta_total = 0.0;
  Angle final_orientation;
  // Heading error of the final orientation seen from the initial position.
  double final_heading_error = 0.0;
};

TurningReport turning_report(const UnicycleState& state, const Vec2& goal,
                             const ControlGains& gains,
                             SteeringMode mode = SteeringMode::kBidirectional);

// (|psi0|, (1 + kv/kw) |psi0|). Throws std::domain_error if |psi0| > pi/2.
std::pair<double, double> turning_bounds(double psi0, const ControlGains& gains);

// Si(x) ~ sum_k weights[k] * sin(frequencies[k] * x) over [-pi, pi].
struct SiFit {
  int order = 0;
  std::vector<double> weights;
  std::vector<double> frequencies;
  double rmse = 0.0;
  int iterations = 0;
  bool converged = false;

  double evaluate(double x) const;
};

struct SiFitOptions {
  int order = 3;
  int grid_size = 2001;
  int max_iterations = 500;
  // Initial (weights, frequencies). Defaults to the reference values of the
  // given order.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> init;
  // When set, additionally runs `restarts` fits from random frequencies drawn
  // with this seed and keeps the best.
  std::optional<std::uint64_t> seed;
  int restarts = 8;
};

// Thrown when Levenberg-Marquardt hits the iteration cap; carries the best
// parameters found.
class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, SiFit best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SiFit& best() const { return best_; }

 private:
  SiFit best_;
};

// Reference (weights, frequencies) of orders 1..3.
std::pair<std::vector<double>, std::vector<double>> reference_si_parameters(
    int order);

// Nonlinear least-squares fit of a sum of sinusoids to Si on a uniform grid
// over [-pi, pi]. Parameters are returned with ascending frequencies and
// positive weights. Throws std::invalid_argument for orders outside 1..3 or
// grids with fewer than two points, FitError on non-convergence.
SiFit fit_si_sinusoids(const SiFitOptions& options);

}  // namespace unimotion

#endif  // UNIMOTION_TURNING_H_
