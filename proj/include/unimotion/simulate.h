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

#ifndef UNIMOTION_SIMULATE_H_
#define UNIMOTION_SIMULATE_H_

#include <cstddef>
#include <limits>
#include <vector>

#include "unimotion/geom.h"
#include "unimotion/integrate.h"
#include "unimotion/unicycle.h"

namespace unimotion {

struct TrajectorySample {
  double t = 0.0;
  UnicycleState state;
  // Orientation without wrapping, continuous in t.
  double heading = 0.0;
  ControlInput input;
  double psi = 0.0;  // heading error of the active steering mode
  double dist_goal = 0.0;
  double lyapunov = 0.0;  // psi^2 + |g - x|^2 with the bidirectional psi
};

struct Trajectory {
  Vec2 goal;
  std::vector<TrajectorySample> samples;
  bool converged = false;
};

// Closed-loop motion toward a fixed goal, recorded at every accepted step,
// until |x - g| < settings.goal_eps. A start at the goal yields one sample.
// Integration runs in goal-relative coordinates so the relative tolerance
// scales with the remaining distance.
Trajectory simulate_to_goal(const UnicycleState& initial, const Vec2& goal,
                            const ControlGains& gains, SteeringMode mode,
                            const IntegratorSettings& settings = {});

struct TurningIntegral {
  double signed_total = 0.0;
  double absolute_total = 0.0;
};

// Trapezoidal integrals of w and |w| over the samples. Throws
// PreconditionError when the trajectory did not converge.
TurningIntegral integrated_turning(const Trajectory& trajectory);

struct ReachableOptions {
  IntegratorSettings settings;
  // Maximum deviation of the dense solution from each chain segment.
  double chain_tolerance = 1e-7;  // m
  // Stop once |x - g| < goal_eps_rel * max(1, |x0 - g|).
  double goal_eps_rel = 1e-4;
  std::size_t max_points = std::numeric_limits<std::size_t>::max();
};

struct ReachableChain {
  std::vector<Vec2> points;  // starts at x0, ends at the goal
  bool truncated = false;    // max_time reached before the goal
  bool capped = false;       // thinned to max_points
};

// Polyline through the closed-loop positions, refined by bisection of each
// accepted step on the continuous extension until the chain stays within
// chain_tolerance of the solution, terminated with the goal.
ReachableChain simulate_reachable_chain(const UnicycleState& initial,
                                        const Vec2& goal,
                                        const ControlGains& gains,
                                        SteeringMode mode,
                                        const ReachableOptions& options = {});

}  // namespace unimotion

#endif  // UNIMOTION_SIMULATE_H_
