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

#include "unimotion/simulate.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unimotion {
namespace {

using State3 = StateVector<3>;

// Goal-relative state (x - g, unwrapped theta); the goal sits at the origin.
UnicycleState relative_state(const State3& y) {
  return {{y[0], y[1]}, Angle(y[2])};
}

auto closed_loop(const ControlGains& gains, SteeringMode mode) {
  return [gains, mode](double, const State3& y) -> State3 {
    const UnicycleState s = relative_state(y);
    const StateDerivative d =
        state_derivative(s, control(s, Vec2{}, gains, mode));
    return {d.position.x, d.position.y, d.orientation};
  };
}

TrajectorySample make_sample(double t, const State3& y, const Vec2& goal,
                             const ControlGains& gains, SteeringMode mode) {
  const UnicycleState rel = relative_state(y);
  TrajectorySample s;
  s.t = t;
  s.state = {goal + rel.position, rel.orientation};
  s.heading = y[2];
  s.input = control(rel, Vec2{}, gains, mode);
  s.psi = heading_error(rel, Vec2{}, mode);
  s.dist_goal = norm(rel.position);
  const double psi_bi = heading_error(rel, Vec2{});
  s.lyapunov = psi_bi * psi_bi + s.dist_goal * s.dist_goal;
  return s;
}

State3 initial_vector(const UnicycleState& initial, const Vec2& goal) {
  const Vec2 d = initial.position - goal;
  return {d.x, d.y, initial.orientation.radians()};
}

// Appends interior points of [ta, tb] so that no midpoint of a chain segment
// deviates from the solution by more than tol. Does not append pb itself.
void refine(const DenseStep<3>& step, double ta, const Vec2& pa, double tb,
            const Vec2& pb, double tol, int depth, std::vector<Vec2>& out) {
  const double tm = 0.5 * (ta + tb);
  const State3 ym = step(tm);
  const Vec2 pm{ym[0], ym[1]};
  if (depth >= 30 || distance_point_to_segment(pm, pa, pb) <= tol) return;
  refine(step, ta, pa, tm, pm, tol, depth + 1, out);
  out.push_back(pm);
  refine(step, tm, pm, tb, pb, tol, depth + 1, out);
}

std::vector<Vec2> thin(const std::vector<Vec2>& points, std::size_t cap) {
  if (points.size() <= cap || cap < 2) return points;
  std::vector<Vec2> out;
  out.reserve(cap);
  const double stride =
      static_cast<double>(points.size() - 1) / static_cast<double>(cap - 1);
  for (std::size_t i = 0; i < cap; ++i) {
    const auto idx = static_cast<std::size_t>(std::llround(i * stride));
    out.push_back(points[std::min(idx, points.size() - 1)]);
  }
  return out;
}

}  // namespace

Trajectory simulate_to_goal(const UnicycleState& initial, const Vec2& goal,
                            const ControlGains& gains, SteeringMode mode,
                            const IntegratorSettings& settings) {
  settings.validate();
  Trajectory traj;
  traj.goal = goal;
  const State3 y0 = initial_vector(initial, goal);
  const auto at_goal = [&](const State3& y) {
    return std::hypot(y[0], y[1]) < settings.goal_eps;
  };
  traj.samples.push_back(make_sample(0.0, y0, goal, gains, mode));
  if (initial.position == goal || at_goal(y0)) {
    traj.converged = true;
    return traj;
  }
  traj.converged = integrate<3>(
      closed_loop(gains, mode), 0.0, y0, settings,
      [&](const DenseStep<3>& step) {
        traj.samples.push_back(
            make_sample(step.t1(), step.y1(), goal, gains, mode));
        return at_goal(step.y1());
      });
  return traj;
}

TurningIntegral integrated_turning(const Trajectory& trajectory) {
  if (!trajectory.converged) {
    throw PreconditionError(
        "integrated_turning requires a trajectory that reached the goal");
  }
  TurningIntegral out;
  const auto& s = trajectory.samples;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double h = s[i].t - s[i - 1].t;
    out.signed_total += 0.5 * h * (s[i].input.w + s[i - 1].input.w);
    out.absolute_total +=
        0.5 * h * (std::abs(s[i].input.w) + std::abs(s[i - 1].input.w));
  }
  return out;
}

ReachableChain simulate_reachable_chain(const UnicycleState& initial,
                                        const Vec2& goal,
                                        const ControlGains& gains,
                                        SteeringMode mode,
                                        const ReachableOptions& options) {
  if (!(options.chain_tolerance > 0.0) || !(options.goal_eps_rel > 0.0)) {
    throw std::invalid_argument(
        "reachable chain tolerances must be positive");
  }
  ReachableChain chain;
  const State3 y0 = initial_vector(initial, goal);
  const double eps =
      options.goal_eps_rel * std::max(1.0, norm(initial.position - goal));
  std::vector<Vec2> rel{{y0[0], y0[1]}};
  if (std::hypot(y0[0], y0[1]) >= eps) {
    IntegratorSettings s = options.settings;
    s.goal_eps = eps;
    const bool reached = integrate<3>(
        closed_loop(gains, mode), 0.0, y0, s, [&](const DenseStep<3>& step) {
          const Vec2 pa{step.y0()[0], step.y0()[1]};
          const Vec2 pb{step.y1()[0], step.y1()[1]};
          refine(step, step.t0(), pa, step.t1(), pb, options.chain_tolerance,
                 0, rel);
          rel.push_back(pb);
          return norm(pb) < eps;
        });
    chain.truncated = !reached;
  }
  rel.push_back(Vec2{});
  if (rel.size() > options.max_points) {
    rel = thin(rel, options.max_points);
    chain.capped = true;
  }
  chain.points.reserve(rel.size());
  for (const Vec2& p : rel) chain.points.push_back(goal + p);
  chain.points.front() = initial.position;
  return chain;
}

}  // namespace unimotion
