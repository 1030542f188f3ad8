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

#include "unimotion/govern.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace unimotion {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Calls fn(outward unit normal, offset) for every workspace edge, so that the
// workspace is {p : dot(normal, p) <= offset} over all edges.
template <class Fn>
void for_each_halfplane(const Polygon& workspace, Fn&& fn) {
  const auto& v = workspace.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % v.size()];
    const Vec2 e = b - a;
    const Vec2 n = (1.0 / norm(e)) * Vec2{e.y, -e.x};  // CCW => right is out
    fn(n, dot(n, a));
  }
}

using State4 = StateVector<4>;

GovernedState unpack(const State4& y) {
  return {y[0], {{y[1], y[2]}, Angle(y[3])}};
}

}  // namespace

void World::validate() const {
  if (!workspace.has_interior()) {
    throw ValidationError("workspace must be a polygon with nonempty interior");
  }
  for (const Vec2& v : workspace.vertices()) {
    if (!finite(v)) throw ValidationError("workspace vertices must be finite");
  }
  if (!(std::isfinite(robot_radius) && robot_radius >= 0.0)) {
    throw ValidationError("robot radius must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto& o = obstacles[i];
    if (const auto* d = std::get_if<Disk>(&o)) {
      if (!finite(d->center) || !(std::isfinite(d->radius) && d->radius >= 0)) {
        throw ValidationError("obstacle " + std::to_string(i) +
                              ": disk needs a finite center and radius >= 0");
      }
    } else if (const auto* p = std::get_if<Polygon>(&o)) {
      if (p->empty()) {
        throw ValidationError("obstacle " + std::to_string(i) +
                              ": polygon has no vertices");
      }
    } else {
      throw ValidationError("obstacle " + std::to_string(i) +
                            ": only disks and polygons are supported");
    }
  }
}

double free_space_distance(const World& world, const ConvexSet& set) {
  double margin = kInf;
  for (const ConvexSet& o : world.obstacles) {
    margin = std::min(margin,
                      distance_between_sets(set, o) - world.robot_radius);
  }
  for_each_halfplane(world.workspace, [&](const Vec2& n, double offset) {
    margin = std::min(margin, offset - world.robot_radius - support(set, n));
  });
  return std::max(0.0, margin);
}

double free_space_distance(const World& world, const MotionPrediction& m) {
  return free_space_distance(world, m.body);
}

double robot_clearance(const World& world, const Vec2& p) {
  double c = kInf;
  for (const ConvexSet& o : world.obstacles) {
    c = std::min(c, distance_point_to_set(p, o) - world.robot_radius);
  }
  for_each_halfplane(world.workspace, [&](const Vec2& n, double offset) {
    c = std::min(c, offset - dot(n, p) - world.robot_radius);
  });
  return c;
}

ReferencePath::ReferencePath(std::vector<Vec2> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw ValidationError("reference path needs at least two waypoints");
  }
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!finite(waypoints_[i])) {
      throw ValidationError("waypoint " + std::to_string(i) + " is not finite");
    }
    if (i == 0) continue;
    const double len = distance(waypoints_[i - 1], waypoints_[i]);
    if (len == 0.0) {
      throw ValidationError("waypoints " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " coincide");
    }
    cumulative_.push_back(cumulative_.back() + len);
  }
}

PathPoint ReferencePath::point_at(double s) const {
  if (!(s > 0.0)) return {waypoints_.front(), s < 0.0};
  if (s >= length()) return {waypoints_.back(), s > length()};
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double u = (s - cumulative_[i]) / (cumulative_[i + 1] - cumulative_[i]);
  return {waypoints_[i] + u * (waypoints_[i + 1] - waypoints_[i]), false};
}

void ReferencePath::validate_clearance(const World& world) const {
  const auto check = [&](const Vec2& p, const std::string& where) {
    const double c = robot_clearance(world, p);
    if (!(c > 0.0)) {
      throw ValidationError("reference path leaves the free space at " + where +
                            " (clearance " + std::to_string(c) + " m)");
    }
  };
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    check(waypoints_[i], "waypoint " + std::to_string(i));
  }
  for (int k = 0; k <= 100; ++k) {
    const double s = 0.01 * k * length();
    check(point_at(s).point, "s = " + std::to_string(s));
  }
}

void GovernorGains::validate() const {
  if (!(std::isfinite(k_eps) && k_eps > 0.0) ||
      !(std::isfinite(k_s) && k_s > 0.0)) {
    throw std::invalid_argument("governor gains must be finite and positive");
  }
}

GovernedDerivative governed_derivative(const GovernedState& state,
                                       const World& world,
                                       const ReferencePath& path,
                                       const GovernorConfig& config) {
  const Vec2 goal = path.point_at(state.s).point;
  const MotionPrediction m =
      predict(state.robot, goal, config.gains, config.method, config.mode,
              config.prediction);
  GovernedDerivative d;
  d.safedist = free_space_distance(world, m);
  d.ds = std::min(config.governor.k_eps * d.safedist,
                  -config.governor.k_s * (state.s - path.length()));
  d.input = control(state.robot, goal, config.gains, config.mode);
  const StateDerivative sd = state_derivative(state.robot, d.input);
  d.position = sd.position;
  d.orientation = sd.orientation;
  return d;
}

FollowResult follow_path(const World& world, const ReferencePath& path,
                         const UnicycleState& initial,
                         const GovernorConfig& config,
                         const FollowOptions& options) {
  world.validate();
  config.governor.validate();
  options.settings.validate();
  const Vec2 start = path.waypoints().front();
  if (distance(initial.position, start) > 1e-9 * std::max(1.0, norm(start))) {
    throw PreconditionError(
        "path following must start at the first waypoint of the path");
  }
  const double length = path.length();
  const Vec2 end = path.waypoints().back();

  FollowResult result;
  result.min_clearance = kInf;
  double frozen_since = -1.0;

  const auto record = [&](double t, const State4& y) {
    const GovernedState g = unpack(y);
    const GovernedDerivative d = governed_derivative(g, world, path, config);
    const Vec2 goal = path.point_at(g.s).point;
    FollowSample s;
    s.t = t;
    s.state = g;
    s.heading = y[3];
    s.input = d.input;
    s.psi = heading_error(g.robot, goal, config.mode);
    s.dist_goal = distance(g.robot.position, goal);
    s.safedist = d.safedist;
    s.clearance = robot_clearance(world, g.robot.position);
    result.samples.push_back(s);
    result.min_clearance = std::min(result.min_clearance, s.clearance);
    result.final_s = g.s;
    result.travel_time = t;
    result.terminal_error = distance(g.robot.position, end);
    result.reached_end = g.s >= length - options.s_tol &&
                         result.terminal_error <= options.position_tol;
    if (d.ds <= 0.0 && g.s < length - options.s_tol) {
      if (frozen_since < 0.0) frozen_since = t;
      result.stalled = t - frozen_since >= options.stall_window;
    } else {
      frozen_since = -1.0;
    }
    return result.reached_end || result.stalled;
  };

  const State4 y0{0.0, initial.position.x, initial.position.y,
                  initial.orientation.radians()};
  if (record(0.0, y0)) return result;
  const auto rhs = [&](double, const State4& y) -> State4 {
    const GovernedDerivative d =
        governed_derivative(unpack(y), world, path, config);
    return {d.ds, d.position.x, d.position.y, d.orientation};
  };
  const bool stopped = integrate<4>(
      rhs, 0.0, y0, options.settings,
      [&](const DenseStep<4>& step) { return record(step.t1(), step.y1()); });
  result.truncated = !stopped;
  return result;
}

}  // namespace unimotion
