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

// Embedded Runge-Kutta 4(5) integration (Dormand-Prince) with proportional
// step-size control and a continuous extension over each accepted step.

#ifndef UNIMOTION_INTEGRATE_H_
#define UNIMOTION_INTEGRATE_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unimotion/error.h"

namespace unimotion {

struct IntegratorSettings {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
  double max_step = std::numeric_limits<double>::infinity();  // s
  double max_time = 100.0;                                     // s
  double goal_eps = 1e-6;                                      // m

  // Throws std::invalid_argument on non-positive tolerances or limits.
  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
      throw std::invalid_argument("integrator tolerances must be positive");
    }
    if (!(max_step > 0.0) || !(max_time > 0.0) || !(goal_eps > 0.0)) {
      throw std::invalid_argument(
          "integrator max_step, max_time and goal_eps must be positive");
    }
  }
};

template <std::size_t N>
using StateVector = std::array<double, N>;

// One accepted step [t0, t0 + h] with its 4th-order continuous extension.
template <std::size_t N>
class DenseStep {
 public:
  double t0() const { return t0_; }
  double t1() const { return t0_ + h_; }
  const StateVector<N>& y0() const { return r_[0]; }
  const StateVector<N>& y1() const { return y1_; }

  // Interpolated state for t in [t0, t1].
  StateVector<N> operator()(double t) const {
    const double s = h_ == 0.0 ? 1.0 : (t - t0_) / h_;
    const double s1 = 1.0 - s;
    StateVector<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = r_[0][i] +
             s * (r_[1][i] + s1 * (r_[2][i] + s * (r_[3][i] + s1 * r_[4][i])));
    }
    return y;
  }

 private:
  template <std::size_t M, class F, class O>
  friend bool integrate(F&&, double, StateVector<M>, const IntegratorSettings&,
                        O&&);

  double t0_ = 0.0;
  double h_ = 0.0;
  StateVector<N> y1_{};
  std::array<StateVector<N>, 5> r_{};
};

namespace integrate_detail {

template <std::size_t N>
double error_norm(const StateVector<N>& err, const StateVector<N>& y0,
                  const StateVector<N>& y1, const IntegratorSettings& s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double sc =
        s.abs_tol + s.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(N));
}

template <std::size_t N>
bool all_finite(const StateVector<N>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace integrate_detail

// Integrates y' = f(t, y) from t0 until `on_step` returns true or
// settings.max_time is reached. `on_step(const DenseStep<N>&)` is called after
// every accepted step. Returns true if stopped by the observer, false when
// truncated at max_time. Throws StepUnderflowError when the step size
// collapses.
template <std::size_t N, class F, class O>
bool integrate(F&& f, double t0, StateVector<N> y, const IntegratorSettings& s,
               O&& on_step) {
  using integrate_detail::all_finite;
  using integrate_detail::error_norm;
  using V = StateVector<N>;
  s.validate();

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double d1 = -12715105075.0 / 11282082432,
                   d3 = 87487479700.0 / 32700410799,
                   d4 = -10690763975.0 / 1880347072,
                   d5 = 701980252875.0 / 199316789632,
                   d6 = -1453857185.0 / 822651844,
                   d7 = 69997945.0 / 29380423;

  auto axpy = [](const V& base, double h,
                 std::initializer_list<std::pair<double, const V*>> terms) {
    V out = base;
    for (const auto& [c, k] : terms) {
      for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
  };

  double t = t0;
  const double t_end = t0 + s.max_time;
  V k1 = f(t, y);

  // Initial step size selection.
  double h;
  {
    double d0 = 0.0, d1n = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = s.abs_tol + s.rel_tol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1n += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1n = std::sqrt(d1n / N);
    double h0 = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h0 = std::min({h0, s.max_step, s.max_time});
    V yp = axpy(y, h0, {{1.0, &k1}});
    V kp = f(t + h0, yp);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = s.abs_tol + s.rel_tol * std::abs(y[i]);
      const double r = (kp[i] - k1[i]) / sc;
      d2 += r * r;
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1n, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                  : std::pow(0.01 / dm, 1.0 / 5.0);
    h = std::min({100.0 * h0, h1, s.max_step});
  }

  DenseStep<N> step;
  bool last_rejected = false;
  while (t < t_end) {
    const double h_min =
        std::max(1e-14, 16.0 * std::numeric_limits<double>::epsilon() *
                            std::abs(t));
    if (h < h_min) {
      throw StepUnderflowError("integrator step size underflow at t = " +
                               std::to_string(t));
    }
    bool final_step = false;
    if (t + h >= t_end) {
      h = t_end - t;
      final_step = true;
    }

    const V k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const V k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const V k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const V k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3},
                                           {a54, &k4}}));
    const V k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                      {a64, &k4}, {a65, &k5}}));
    const V y_new = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5},
                                {a76, &k6}});
    const V k7 = f(t + h, y_new);

    V err;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                    e6 * k6[i] + e7 * k7[i]);
    }
    double en = error_norm<N>(err, y, y_new, s);
    if (!all_finite(y_new) || !std::isfinite(en)) {
      en = std::numeric_limits<double>::infinity();
    }

    if (en <= 1.0) {
      step.t0_ = t;
      step.h_ = h;
      step.y1_ = y_new;
      for (std::size_t i = 0; i < N; ++i) {
        const double dy = y_new[i] - y[i];
        const double bspl = h * k1[i] - dy;
        step.r_[0][i] = y[i];
        step.r_[1][i] = dy;
        step.r_[2][i] = bspl;
        step.r_[3][i] = dy - h * k7[i] - bspl;
        step.r_[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      t = final_step ? t_end : t + h;
      y = y_new;
      k1 = k7;
      if (on_step(static_cast<const DenseStep<N>&>(step))) return true;
      double fac = en == 0.0 ? 10.0 : 0.9 * std::pow(en, -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      h = std::min(h * fac, s.max_step);
      last_rejected = false;
    } else {
      const double fac =
          std::isfinite(en) ? std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9)
                            : 0.1;
      h *= fac;
      last_rejected = true;
    }
  }
  return false;
}

template <std::size_t N>
struct SampledSolution {
  std::vector<double> t;
  std::vector<StateVector<N>> y;
  bool truncated = false;
};

// Convenience wrapper recording the initial state and every accepted step.
// `stop(t, y)` ends the integration early when it returns true.
template <std::size_t N, class F, class Stop>
SampledSolution<N> integrate_samples(F&& f, double t0, const StateVector<N>& y0,
                                     const IntegratorSettings& s, Stop&& stop) {
  SampledSolution<N> out;
  out.t.push_back(t0);
  out.y.push_back(y0);
  if (stop(t0, y0)) return out;
  const bool stopped = integrate<N>(
      f, t0, y0, s, [&](const DenseStep<N>& step) {
        out.t.push_back(step.t1());
        out.y.push_back(step.y1());
        return stop(step.t1(), step.y1());
      });
  out.truncated = !stopped;
  return out;
}

template <std::size_t N, class F>
SampledSolution<N> integrate_samples(F&& f, double t0, const StateVector<N>& y0,
                                     const IntegratorSettings& s) {
  return integrate_samples<N>(std::forward<F>(f), t0, y0, s,
                              [](double, const StateVector<N>&) { return false; });
}

}  // namespace unimotion

#endif  // UNIMOTION_INTEGRATE_H_
