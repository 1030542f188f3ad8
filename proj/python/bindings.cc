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

// Python bindings. Points cross the boundary as (x, y) tuples, trajectories
// as dicts of NumPy arrays and prediction sets as dicts.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "unimotion/error.h"
#include "unimotion/predict.h"
#include "unimotion/simulate.h"
#include "unimotion/turning.h"

#ifdef UNIMOTION_WITH_SCENARIO
#include "runner.h"
#include "scenario.h"
#endif

namespace py = pybind11;
using namespace unimotion;

namespace {

using Point = std::pair<double, double>;

Vec2 vec(const Point& p) { return {p.first, p.second}; }
Point point(const Vec2& v) { return {v.x, v.y}; }

UnicycleState state(const Point& position, double orientation) {
  return {vec(position), Angle(orientation)};
}

py::list points(const std::vector<Vec2>& v) {
  py::list out;
  for (const Vec2& p : v) out.append(point(p));
  return out;
}

py::dict geometry(const ConvexSet& set) {
  py::dict d;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          d["type"] = "disk";
          d["center"] = point(s.center);
          d["radius"] = s.radius;
        } else if constexpr (std::is_same_v<T, Polygon>) {
          d["type"] = "polygon";
          d["vertices"] = points(s.vertices());
        } else if constexpr (std::is_same_v<T, ConeHull>) {
          d["type"] = "cone";
          d["apex"] = point(s.apex);
          d["center"] = point(s.disk.center);
          d["radius"] = s.disk.radius;
        } else {
          d["type"] = "chain";
          d["points"] = points(s.points);
        }
      },
      set);
  return d;
}

py::dict simulate(const Point& position, double orientation, const Point& goal,
                  double kv, double kw, const std::string& mode,
                  double max_time, double rel_tol, double abs_tol,
                  double max_step, double goal_eps) {
  IntegratorSettings s{rel_tol, abs_tol, max_step, max_time, goal_eps};
  Trajectory traj;
  {
    py::gil_scoped_release release;
    traj = simulate_to_goal(state(position, orientation), vec(goal),
                            ControlGains(kv, kw), parse_steering_mode(mode), s);
  }
  const auto n = static_cast<py::ssize_t>(traj.samples.size());
  py::array_t<double> t(n), x(n), y(n), theta(n), v(n), w(n), psi(n), dist(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const TrajectorySample& smp = traj.samples[static_cast<std::size_t>(i)];
    t.mutable_at(i) = smp.t;
    x.mutable_at(i) = smp.state.position.x;
    y.mutable_at(i) = smp.state.position.y;
    theta.mutable_at(i) = smp.heading;
    v.mutable_at(i) = smp.input.v;
    w.mutable_at(i) = smp.input.w;
    psi.mutable_at(i) = smp.psi;
    dist.mutable_at(i) = smp.dist_goal;
  }
  py::dict out;
  out["t"] = t;
  out["x"] = x;
  out["y"] = y;
  out["theta"] = theta;
  out["v"] = v;
  out["w"] = w;
  out["psi"] = psi;
  out["dist_goal"] = dist;
  out["converged"] = traj.converged;
  return out;
}

py::dict predict_set(const Point& position, double orientation,
                     const Point& goal, const std::string& method, double kv,
                     double kw, const std::string& mode) {
  const MotionPrediction m =
      predict(state(position, orientation), vec(goal), ControlGains(kv, kw),
              parse_prediction_method(method), parse_steering_mode(mode));
  py::dict d = geometry(m.body);
  d["radius_about_goal"] = prediction_radius_about_goal(m);
  return d;
}

py::dict fit_si(int order, std::optional<std::uint64_t> seed) {
  SiFitOptions o;
  o.order = order;
  o.seed = seed;
  SiFit fit;
  {
    py::gil_scoped_release release;
    fit = fit_si_sinusoids(o);
  }
  py::dict d;
  d["order"] = fit.order;
  d["weights"] = fit.weights;
  d["frequencies"] = fit.frequencies;
  d["rmse"] = fit.rmse;
  d["iterations"] = fit.iterations;
  d["converged"] = fit.converged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_unimotion, m) {
  m.doc() = "Unicycle closed-loop control, turning effort and motion prediction";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_ValueError);

  m.def("sine_integral", &sine_integral, py::arg("x"));
  m.def(
      "total_turning",
      [](const Point& position, double orientation, const Point& goal, double kv,
         double kw, const std::string& mode) {
        return total_turning(state(position, orientation), vec(goal),
                             ControlGains(kv, kw), parse_steering_mode(mode));
      },
      py::arg("position"), py::arg("orientation"), py::arg("goal"),
      py::arg("kv") = 1.0, py::arg("kw") = 2.0, py::arg("mode") = "bi");
  m.def(
      "heading_error",
      [](const Point& position, double orientation, const Point& goal,
         const std::string& mode) {
        return heading_error(state(position, orientation), vec(goal),
                             parse_steering_mode(mode));
      },
      py::arg("position"), py::arg("orientation"), py::arg("goal"),
      py::arg("mode") = "bi");
  m.def("simulate", &simulate, py::arg("position"), py::arg("orientation"),
        py::arg("goal"), py::arg("kv") = 1.0, py::arg("kw") = 2.0,
        py::arg("mode") = "bi", py::arg("max_time") = 100.0,
        py::arg("rel_tol") = 1e-6, py::arg("abs_tol") = 1e-9,
        py::arg("max_step") = std::numeric_limits<double>::infinity(),
        py::arg("goal_eps") = 1e-6,
        "Closed loop to a fixed goal; returns NumPy arrays per column.");
  m.def("predict", &predict_set, py::arg("position"), py::arg("orientation"),
        py::arg("goal"), py::arg("method") = "diamond", py::arg("kv") = 1.0,
        py::arg("kw") = 2.0, py::arg("mode") = "bi",
        "Motion prediction set as a dict describing its geometry.");
  m.def("fit_si", &fit_si, py::arg("order") = 3, py::arg("seed") = py::none());

#ifdef UNIMOTION_WITH_SCENARIO
  m.def(
      "run",
      [](const std::string& command, const std::string& scenario,
         std::optional<std::string> out) {
        RunOutcome r;
        {
          py::gil_scoped_release release;
          Scenario sc = load_scenario(scenario);
          if (out) sc.output_dir = *out;
          if (command == "simulate") r = run_simulate(sc);
          else if (command == "predict") r = run_predict(sc);
          else if (command == "follow") r = run_follow(sc);
          else if (command == "compare") r = run_compare(sc);
          else throw std::invalid_argument("unknown command '" + command + "'");
        }
        return std::make_pair(static_cast<int>(r.code), r.report.dump());
      },
      py::arg("command"), py::arg("scenario"), py::arg("out") = py::none(),
      "Runs a CLI subcommand; returns (exit code, JSON report).");
#endif
}
