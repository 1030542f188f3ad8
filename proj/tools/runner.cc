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

#include "runner.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <string_view>

#include "unimotion/error.h"
#include "unimotion/predict.h"
#include "unimotion/turning.h"

#ifndef UNIMOTION_VERSION
#define UNIMOTION_VERSION "0.0.0"
#endif

namespace unimotion {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::array kMethods{PredictionMethod::kBall, PredictionMethod::kCone,
                              PredictionMethod::kDiamond,
                              PredictionMethod::kForwardReachable};
constexpr double kContainmentTol = 1e-6;

void append_row(std::string& out, std::initializer_list<double> values) {
  char buf[32];
  bool first = true;
  for (double v : values) {
    if (!first) out += ' ';
    first = false;
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  }
  out += '\n';
}

fs::path write_file(const fs::path& dir, const std::string& name,
                    const std::string& content) {
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return p;
}

json to_json(const Vec2& v) { return json::array({v.x, v.y}); }

json to_json(const ConvexSet& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return {{"type", "disk"}, {"center", to_json(s.center)},
                  {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Polygon>) {
          json v = json::array();
          for (const Vec2& p : s.vertices()) v.push_back(to_json(p));
          return {{"type", "polygon"}, {"vertices", v}};
        } else if constexpr (std::is_same_v<T, ConeHull>) {
          return {{"type", "cone"}, {"apex", to_json(s.apex)},
                  {"center", to_json(s.disk.center)},
                  {"radius", s.disk.radius}};
        } else {
          json v = json::array();
          for (const Vec2& p : s.points) v.push_back(to_json(p));
          return {{"type", "chain"}, {"points", v}};
        }
      },
      set);
}

json to_json(const UnicycleState& s) {
  return {{"x", s.position.x}, {"y", s.position.y},
          {"theta", s.orientation.radians()}};
}

json header(std::string_view command, const Scenario& sc) {
  return {{"command", command},
          {"scenario", sc.name},
          {"tool_version", tool_version()},
          {"method", to_string(sc.method)},
          {"mode", to_string(sc.mode)},
          {"gains", {{"kv", sc.gains.kv()}, {"kw", sc.gains.kw()}}}};
}

// The point cap only bounds governor cost; emitted geometry keeps the full
// chain so it stays within chain_tolerance of the trajectory.
PredictionOptions snapshot_options(const Scenario& sc) {
  PredictionOptions o = sc.governor_config().prediction;
  o.reachable.max_points = std::numeric_limits<std::size_t>::max();
  return o;
}

struct FollowSummary {
  double average_speed = 0.0;
  TurningIntegral turning;
};

// Trapezoid sums over the recorded samples up to the travel time.
FollowSummary summarize(const FollowResult& r) {
  FollowSummary out;
  double distance = 0.0;
  for (std::size_t i = 1; i < r.samples.size(); ++i) {
    const auto& a = r.samples[i - 1];
    const auto& b = r.samples[i];
    const double h = b.t - a.t;
    distance += 0.5 * h * (std::abs(a.input.v) + std::abs(b.input.v));
    out.turning.signed_total += 0.5 * h * (a.input.w + b.input.w);
    out.turning.absolute_total +=
        0.5 * h * (std::abs(a.input.w) + std::abs(b.input.w));
  }
  out.average_speed = r.travel_time > 0.0 ? distance / r.travel_time : 0.0;
  return out;
}

json follow_report(const Scenario& sc, PredictionMethod method,
                   const FollowResult& r, const fs::path& data) {
  const FollowSummary s = summarize(r);
  return {{"method", to_string(method)},
          {"travel_time", r.travel_time},
          {"average_speed", s.average_speed},
          {"min_clearance", r.min_clearance},
          {"total_turning",
           {{"signed", s.turning.signed_total},
            {"absolute", s.turning.absolute_total}}},
          {"terminal_error", r.terminal_error},
          {"final_s", r.final_s},
          {"path_length", sc.path->length()},
          {"reached_end", r.reached_end},
          {"stalled", r.stalled},
          {"truncated", r.truncated},
          {"samples", r.samples.size()},
          {"data_file", data.filename().string()}};
}

const ReferencePath& require_path(const Scenario& sc) {
  if (!sc.path) throw ValidationError(sc.name + ": this command needs a 'path'");
  return *sc.path;
}

FollowResult follow_with(const Scenario& sc, PredictionMethod method) {
  GovernorConfig cfg = sc.governor_config();
  cfg.method = method;
  return follow_path(sc.world, require_path(sc), sc.initial, cfg, sc.follow);
}

}  // namespace

std::string tool_version() { return UNIMOTION_VERSION; }

std::string format_follow(const FollowResult& result) {
  std::string out = std::string(kColumns) + "\n";
  for (const FollowSample& s : result.samples) {
    append_row(out, {s.t, s.state.robot.position.x, s.state.robot.position.y,
                     s.heading, s.input.v, s.input.w, s.psi, s.dist_goal,
                     s.safedist, s.state.s});
  }
  return out;
}

// Without a governor the s column is NaN; safedist uses the scenario method.
std::string format_trajectory(const Trajectory& trajectory,
                              const Scenario& scenario) {
  const PredictionOptions opts = scenario.governor_config().prediction;
  std::string out = std::string(kColumns) + "\n";
  for (const TrajectorySample& s : trajectory.samples) {
    const double safedist = free_space_distance(
        scenario.world, predict(s.state, trajectory.goal, scenario.gains,
                                scenario.method, scenario.mode, opts));
    append_row(out, {s.t, s.state.position.x, s.state.position.y, s.heading,
                     s.input.v, s.input.w, s.psi, s.dist_goal, safedist,
                     std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

RunOutcome run_simulate(const Scenario& sc) {
  const Trajectory traj =
      simulate_to_goal(sc.initial, sc.goal, sc.gains, sc.mode, sc.integrator);
  const PredictionOptions opts = snapshot_options(sc);

  RunOutcome out;
  out.report = header("simulate", sc);
  out.files.push_back(
      write_file(sc.output_dir, "simulate.txt", format_trajectory(traj, sc)));

  // Snapshot indices: t = 0, then the first sample past each interval mark.
  std::vector<std::size_t> snaps{0};
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double mark = sc.snapshot_interval * static_cast<double>(snaps.size());
    if (traj.samples[i].t >= mark) snaps.push_back(i);
  }

  json snapshots = json::array();
  std::map<std::string, double> worst;
  json unavailable = json::object();
  for (std::size_t idx : snaps) {
    const TrajectorySample& at = traj.samples[idx];
    json sets = json::object();
    for (PredictionMethod m : kMethods) {
      const std::string key(to_string(m));
      try {
        const MotionPrediction p =
            predict(at.state, sc.goal, sc.gains, m, sc.mode, opts);
        double violation = 0.0;
        for (std::size_t k = idx; k < traj.samples.size(); ++k) {
          violation = std::max(
              violation,
              distance_to_prediction(traj.samples[k].state.position, p));
        }
        worst[key] = std::max(worst[key], violation);
        sets[key] = to_json(p.body);
        sets[key]["radius_about_goal"] = prediction_radius_about_goal(p);
      } catch (const PreconditionError& e) {
        unavailable[key] = e.what();
      }
    }
    snapshots.push_back({{"t", at.t}, {"state", to_json(at.state)}, {"sets", sets}});
  }
  json geometry = {{"goal", to_json(sc.goal)}, {"snapshots", snapshots}};
  out.files.push_back(
      write_file(sc.output_dir, "simulate_predictions.json", geometry.dump(1)));

  const TurningReport closed = turning_report(sc.initial, sc.goal, sc.gains, sc.mode);
  json& rep = out.report;
  rep["converged"] = traj.converged;
  rep["final_time"] = traj.samples.back().t;
  rep["terminal_error"] = traj.samples.back().dist_goal;
  rep["total_turning"] = {{"closed_form", closed.theta_total}};
  if (traj.converged) {
    const TurningIntegral ti = integrated_turning(traj);
    rep["total_turning"]["signed"] = ti.signed_total;
    rep["total_turning"]["absolute"] = ti.absolute_total;
  }
  json containment = json::object();
  bool contained = true;
  for (const auto& [k, v] : worst) {
    containment[k] = v;
    contained = contained && v <= kContainmentTol;
  }
  rep["containment_violation"] = containment;
  rep["containment_ok"] = contained;
  rep["unavailable_methods"] = unavailable;
  rep["snapshots"] = snaps.size();
  rep["data_file"] = "simulate.txt";
  out.code = traj.converged ? ExitCode::kOk : ExitCode::kIncomplete;
  out.files.push_back(write_file(sc.output_dir, "simulate_report.json",
                                 rep.dump(2) + "\n"));
  return out;
}

RunOutcome run_predict(const Scenario& sc) {
  const PredictionOptions opts = snapshot_options(sc);
  RunOutcome out;
  out.report = header("predict", sc);
  json& rep = out.report;
  rep["state"] = to_json(sc.initial);
  rep["goal"] = to_json(sc.goal);
  rep["heading_error"] = heading_error(sc.initial, sc.goal, sc.mode);
  const TurningReport tr = turning_report(sc.initial, sc.goal, sc.gains, sc.mode);
  rep["total_turning"] = tr.theta_total;
  rep["final_orientation"] = tr.final_orientation.radians();

  json sets = json::object();
  for (PredictionMethod m : kMethods) {
    const std::string key(to_string(m));
    try {
      const MotionPrediction p =
          predict(sc.initial, sc.goal, sc.gains, m, sc.mode, opts);
      sets[key] = to_json(p.body);
      sets[key]["radius_about_goal"] = prediction_radius_about_goal(p);
    } catch (const PreconditionError& e) {
      if (m == sc.method) throw;
      sets[key] = {{"unavailable", e.what()}};
    }
  }
  rep["sets"] = sets;
  try {
    const CharacteristicPoints cp = characteristic_points(sc.initial, sc.goal, sc.gains);
    rep["characteristic_points"] = {
        {"projected_goal", to_json(cp.projected_goal)},
        {"projected_goal_reflection", to_json(cp.projected_goal_reflection)},
        {"intersection", to_json(cp.intersection)},
        {"intersection_reflection", to_json(cp.intersection_reflection)}};
  } catch (const PreconditionError& e) {
    rep["characteristic_points"] = {{"unavailable", e.what()}};
  }
  out.files.push_back(
      write_file(sc.output_dir, "predict_report.json", rep.dump(2) + "\n"));
  return out;
}

RunOutcome run_follow(const Scenario& sc) {
  const FollowResult r = follow_with(sc, sc.method);
  RunOutcome out;
  const std::string name = "follow_" + std::string(to_string(sc.method)) + ".txt";
  out.files.push_back(write_file(sc.output_dir, name, format_follow(r)));
  out.report = header("follow", sc);
  out.report["governor"] = {{"k_eps", sc.governor.k_eps}, {"k_s", sc.governor.k_s}};
  out.report["reachable_max_points"] = sc.reachable_max_points;
  out.report["run"] = follow_report(sc, sc.method, r, name);
  out.code = r.reached_end ? ExitCode::kOk : ExitCode::kIncomplete;
  out.files.push_back(write_file(sc.output_dir, "follow_report.json",
                                 out.report.dump(2) + "\n"));
  return out;
}

RunOutcome run_compare(const Scenario& sc) {
  require_path(sc);
  std::vector<std::future<FollowResult>> jobs;
  for (PredictionMethod m : kMethods) {
    jobs.push_back(std::async(std::launch::async,
                              [&sc, m] { return follow_with(sc, m); }));
  }
  // Collect every job before rethrowing so no thread outlives the scenario.
  std::vector<FollowResult> results;
  std::exception_ptr error;
  for (auto& j : jobs) {
    try {
      results.push_back(j.get());
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  RunOutcome out;
  out.report = header("compare", sc);
  out.report.erase("method");
  out.report["governor"] = {{"k_eps", sc.governor.k_eps}, {"k_s", sc.governor.k_s}};
  out.report["reachable_max_points"] = sc.reachable_max_points;
  json runs = json::array();
  std::string table =
      "method travel_time average_speed min_clearance terminal_error "
      "reached_end\n";
  bool all_reached = true;
  for (std::size_t i = 0; i < kMethods.size(); ++i) {
    const std::string key(to_string(kMethods[i]));
    const std::string name = "follow_" + key + ".txt";
    out.files.push_back(write_file(sc.output_dir, name, format_follow(results[i])));
    const json run = follow_report(sc, kMethods[i], results[i], name);
    runs.push_back(run);
    all_reached = all_reached && results[i].reached_end;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.17g %.17g %.17g %.17g %d\n", key.c_str(),
                  results[i].travel_time, run["average_speed"].get<double>(),
                  results[i].min_clearance, results[i].terminal_error,
                  results[i].reached_end ? 1 : 0);
    table += buf;
  }
  out.files.push_back(write_file(sc.output_dir, "compare.txt", table));
  const double tb = results[0].travel_time, tc = results[1].travel_time,
               td = results[2].travel_time, tr = results[3].travel_time;
  out.report["runs"] = runs;
  out.report["ordering"] = {{"ball_ge_cone", tb >= tc},
                            {"cone_ge_diamond", tc >= td},
                            {"diamond_ge_reachable", td >= tr}};
  out.code = all_reached ? ExitCode::kOk : ExitCode::kIncomplete;
  out.files.push_back(write_file(sc.output_dir, "compare_report.json",
                                 out.report.dump(2) + "\n"));
  return out;
}

RunOutcome run_fit_si(const fs::path& output_dir,
                      std::optional<std::uint64_t> seed) {
  RunOutcome out;
  out.report = {{"command", "fit-si"}, {"tool_version", tool_version()}};
  if (seed) out.report["seed"] = *seed;
  json fits = json::array();
  std::string table = "order rmse iterations converged weights frequencies\n";
  for (int n = 1; n <= 3; ++n) {
    SiFitOptions o;
    o.order = n;
    o.seed = seed;
    SiFit fit;
    try {
      fit = fit_si_sinusoids(o);
    } catch (const FitError& e) {
      fit = e.best();
      out.code = ExitCode::kIncomplete;
    }
    fits.push_back({{"order", n},
                    {"weights", fit.weights},
                    {"frequencies", fit.frequencies},
                    {"rmse", fit.rmse},
                    {"iterations", fit.iterations},
                    {"converged", fit.converged}});
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d %.17g %d %d", n, fit.rmse, fit.iterations,
                  fit.converged ? 1 : 0);
    table += buf;
    for (const auto* v : {&fit.weights, &fit.frequencies}) {
      table += ' ';
      for (std::size_t i = 0; i < v->size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", (*v)[i]);
        table += buf;
      }
    }
    table += '\n';
  }
  out.report["fits"] = fits;
  out.files.push_back(write_file(output_dir, "fit_si.txt", table));
  out.files.push_back(write_file(output_dir, "fit_si_report.json",
                                 out.report.dump(2) + "\n"));
  return out;
}

}  // namespace unimotion
