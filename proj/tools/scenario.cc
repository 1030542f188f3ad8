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

#include "scenario.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

#include "unimotion/error.h"

namespace unimotion {
namespace {

// Wraps nodes so every error carries the source location.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    const YAML::Mark mark = node.Mark();
    if (!mark.is_null()) os << ":" << mark.line + 1 << ":" << mark.column + 1;
    os << ": " << what;
    throw ValidationError(os.str());
  }

  void expect_map(const YAML::Node& node, const std::string& key,
                  std::initializer_list<std::string_view> allowed) const {
    if (!node.IsMap()) fail(node, "'" + key + "' must be a mapping");
    for (const auto& entry : node) {
      const std::string name = entry.first.as<std::string>();
      bool known = false;
      for (std::string_view a : allowed) known = known || name == a;
      if (!known) fail(entry.first, "unknown key '" + name + "' in '" + key + "'");
    }
  }

  double number(const YAML::Node& node, const std::string& key) const {
    double v = 0.0;
    if (!node.IsScalar() || !YAML::convert<double>::decode(node, v) ||
        !std::isfinite(v)) {
      fail(node, "'" + key + "' must be a finite number");
    }
    return v;
  }

  double positive(const YAML::Node& node, const std::string& key) const {
    const double v = number(node, key);
    if (!(v > 0.0)) fail(node, "'" + key + "' must be positive");
    return v;
  }

  std::string text(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, "'" + key + "' must be a string");
    return node.as<std::string>();
  }

  Vec2 point(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence() || node.size() != 2) {
      fail(node, "'" + key + "' must be a pair [x, y]");
    }
    return {number(node[0], key), number(node[1], key)};
  }

  std::vector<Vec2> points(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence()) fail(node, "'" + key + "' must be a list of [x, y]");
    std::vector<Vec2> out;
    for (const auto& p : node) out.push_back(point(p, key));
    return out;
  }

 private:
  std::string source_;
};

ConvexSet read_obstacle(const Reader& r, const YAML::Node& node) {
  if (!node.IsMap() || !node["type"]) {
    r.fail(node, "obstacle must be a mapping with a 'type'");
  }
  const std::string type = r.text(node["type"], "type");
  if (type == "disk") {
    r.expect_map(node, "obstacle", {"type", "center", "radius"});
    if (!node["center"] || !node["radius"]) {
      r.fail(node, "disk obstacle needs 'center' and 'radius'");
    }
    return Disk{r.point(node["center"], "center"),
                r.positive(node["radius"], "radius")};
  }
  if (type == "polygon") {
    r.expect_map(node, "obstacle", {"type", "vertices"});
    if (!node["vertices"]) r.fail(node, "polygon obstacle needs 'vertices'");
    const std::vector<Vec2> v = r.points(node["vertices"], "vertices");
    const Polygon hull = Polygon::hull(v);
    if (hull.vertices().size() < 3) {
      r.fail(node["vertices"], "polygon obstacle must have nonempty interior");
    }
    if (hull.vertices().size() != v.size()) {
      r.fail(node["vertices"], "polygon obstacle vertices must be convex");
    }
    return hull;
  }
  r.fail(node["type"], "obstacle type must be 'disk' or 'polygon'");
}

template <typename T, typename Parse>
T enum_value(const Reader& r, const YAML::Node& node, const std::string& key,
             Parse parse) {
  try {
    return parse(r.text(node, key));
  } catch (const std::invalid_argument& e) {
    r.fail(node, e.what());
  }
}

}  // namespace

GovernorConfig Scenario::governor_config() const {
  GovernorConfig c;
  c.gains = gains;
  c.governor = governor;
  c.method = method;
  c.mode = mode;
  c.prediction.reachable.settings = integrator;
  c.prediction.reachable.max_points = reachable_max_points;
  return c;
}

Scenario parse_scenario(const std::string& text, const std::string& source) {
  const Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": "
       << e.msg;
    throw ValidationError(os.str());
  }
  if (!root.IsMap()) r.fail(root, "scenario must be a mapping");
  r.expect_map(root, "scenario",
               {"name", "world", "path", "initial", "goal", "gains", "governor",
                "prediction", "integrator", "follow", "output"});

  Scenario sc;
  sc.name = root["name"] ? r.text(root["name"], "name") : source;

  const YAML::Node world = root["world"];
  if (!world) r.fail(root, "missing 'world'");
  r.expect_map(world, "world", {"workspace", "robot_radius", "obstacles"});
  if (!world["workspace"]) r.fail(world, "missing 'workspace'");
  const std::vector<Vec2> ws = r.points(world["workspace"], "workspace");
  sc.world.workspace = Polygon::hull(ws);
  if (sc.world.workspace.vertices().size() < 3) {
    r.fail(world["workspace"], "workspace must have nonempty interior");
  }
  if (sc.world.workspace.vertices().size() != ws.size()) {
    r.fail(world["workspace"], "workspace vertices must be convex");
  }
  if (world["robot_radius"]) {
    sc.world.robot_radius = r.number(world["robot_radius"], "robot_radius");
    if (sc.world.robot_radius < 0.0) {
      r.fail(world["robot_radius"], "'robot_radius' must be nonnegative");
    }
  }
  if (const YAML::Node obs = world["obstacles"]) {
    if (!obs.IsSequence()) r.fail(obs, "'obstacles' must be a list");
    for (const auto& o : obs) sc.world.obstacles.push_back(read_obstacle(r, o));
  }
  sc.world.validate();

  if (const YAML::Node path = root["path"]) {
    std::vector<Vec2> waypoints = r.points(path, "path");
    try {
      sc.path.emplace(std::move(waypoints));
    } catch (const ValidationError& e) {
      r.fail(path, e.what());
    }
  }
  if (!sc.path && !root["goal"]) r.fail(root, "need a 'path' or a 'goal'");
  sc.goal = root["goal"] ? r.point(root["goal"], "goal")
                         : sc.path->waypoints().back();

  if (const YAML::Node init = root["initial"]) {
    r.expect_map(init, "initial", {"position", "orientation"});
    if (!init["position"]) r.fail(init, "missing 'position'");
    sc.initial.position = r.point(init["position"], "position");
    if (init["orientation"]) {
      sc.initial.orientation = Angle(r.number(init["orientation"], "orientation"));
    }
  } else if (sc.path) {
    // Start on the path facing along its first segment.
    const auto& w = sc.path->waypoints();
    sc.initial = {w[0], Angle(std::atan2(w[1].y - w[0].y, w[1].x - w[0].x))};
  } else {
    r.fail(root, "need 'initial' when there is no 'path'");
  }

  if (const YAML::Node g = root["gains"]) {
    r.expect_map(g, "gains", {"kv", "kw"});
    const double kv = g["kv"] ? r.positive(g["kv"], "kv") : sc.gains.kv();
    const double kw = g["kw"] ? r.positive(g["kw"], "kw") : sc.gains.kw();
    sc.gains = ControlGains(kv, kw);
  }
  if (const YAML::Node g = root["governor"]) {
    r.expect_map(g, "governor", {"k_eps", "k_s"});
    if (g["k_eps"]) sc.governor.k_eps = r.positive(g["k_eps"], "k_eps");
    if (g["k_s"]) sc.governor.k_s = r.positive(g["k_s"], "k_s");
  }
  if (const YAML::Node p = root["prediction"]) {
    r.expect_map(p, "prediction", {"method", "mode", "reachable_max_points"});
    if (p["method"]) {
      sc.method = enum_value<PredictionMethod>(
          r, p["method"], "method",
          [](std::string_view s) { return parse_prediction_method(s); });
    }
    if (p["mode"]) {
      sc.mode = enum_value<SteeringMode>(
          r, p["mode"], "mode",
          [](std::string_view s) { return parse_steering_mode(s); });
    }
    if (const YAML::Node m = p["reachable_max_points"]) {
      const double v = r.number(m, "reachable_max_points");
      if (v < 2 || v != std::floor(v)) {
        r.fail(m, "'reachable_max_points' must be an integer of at least 2");
      }
      sc.reachable_max_points = static_cast<std::size_t>(v);
    }
  }
  if (const YAML::Node i = root["integrator"]) {
    r.expect_map(i, "integrator",
                 {"rel_tol", "abs_tol", "max_step", "max_time", "goal_eps"});
    IntegratorSettings& s = sc.integrator;
    if (i["rel_tol"]) s.rel_tol = r.positive(i["rel_tol"], "rel_tol");
    if (i["abs_tol"]) s.abs_tol = r.positive(i["abs_tol"], "abs_tol");
    if (i["max_step"]) s.max_step = r.positive(i["max_step"], "max_step");
    if (i["max_time"]) s.max_time = r.positive(i["max_time"], "max_time");
    if (i["goal_eps"]) s.goal_eps = r.positive(i["goal_eps"], "goal_eps");
  }
  sc.follow.settings = sc.integrator;
  if (const YAML::Node f = root["follow"]) {
    r.expect_map(f, "follow", {"s_tol", "position_tol", "stall_window"});
    if (f["s_tol"]) sc.follow.s_tol = r.positive(f["s_tol"], "s_tol");
    if (f["position_tol"]) {
      sc.follow.position_tol = r.positive(f["position_tol"], "position_tol");
    }
    if (f["stall_window"]) {
      sc.follow.stall_window = r.positive(f["stall_window"], "stall_window");
    }
  }
  if (const YAML::Node o = root["output"]) {
    r.expect_map(o, "output", {"dir", "snapshot_interval"});
    if (o["dir"]) sc.output_dir = r.text(o["dir"], "dir");
    if (o["snapshot_interval"]) {
      sc.snapshot_interval = r.positive(o["snapshot_interval"], "snapshot_interval");
    }
  }

  if (sc.path) {
    try {
      sc.path->validate_clearance(sc.world);
    } catch (const ValidationError& e) {
      r.fail(root["path"], e.what());
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError(file.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), file.string());
}

}  // namespace unimotion
