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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "unimotion/turning.h"

namespace unimotion {
namespace {

struct Grid {
  Eigen::VectorXd x;
  Eigen::VectorXd target;
};

Grid make_grid(int size) {
  Grid g{Eigen::VectorXd(size), Eigen::VectorXd(size)};
  for (int i = 0; i < size; ++i) {
    g.x[i] = -kPi + 2.0 * kPi * i / (size - 1);
    g.target[i] = sine_integral(g.x[i]);
  }
  return g;
}

// Parameters are packed as (a_1..a_n, w_1..w_n).
Eigen::VectorXd residual(const Grid& g, const Eigen::VectorXd& p, int n) {
  Eigen::VectorXd r = -g.target;
  for (int k = 0; k < n; ++k) {
    r.array() += p[k] * (p[n + k] * g.x.array()).sin();
  }
  return r;
}

Eigen::MatrixXd jacobian(const Grid& g, const Eigen::VectorXd& p, int n) {
  Eigen::MatrixXd j(g.x.size(), 2 * n);
  for (int k = 0; k < n; ++k) {
    const Eigen::ArrayXd phase = p[n + k] * g.x.array();
    j.col(k) = phase.sin().matrix();
    j.col(n + k) = (p[k] * g.x.array() * phase.cos()).matrix();
  }
  return j;
}

double rmse_of(const Eigen::VectorXd& r) {
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

SiFit to_fit(const Eigen::VectorXd& p, int n, double rmse, int iterations,
             bool converged) {
  std::vector<std::pair<double, double>> terms;
  for (int k = 0; k < n; ++k) {
    double a = p[k];
    double w = p[n + k];
    if (a < 0.0) {
      a = -a;
      w = -w;
    }
    terms.emplace_back(w, a);
  }
  std::sort(terms.begin(), terms.end());
  SiFit fit;
  fit.order = n;
  for (const auto& [w, a] : terms) {
    fit.weights.push_back(a);
    fit.frequencies.push_back(w);
  }
  fit.rmse = rmse;
  fit.iterations = iterations;
  fit.converged = converged;
  return fit;
}

SiFit levenberg_marquardt(const Grid& g, Eigen::VectorXd p, int n,
                          int max_iterations) {
  const Eigen::Index m = g.x.size();
  const int np = 2 * n;
  Eigen::VectorXd r = residual(g, p, n);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (int it = 1; it <= max_iterations; ++it) {
    const Eigen::MatrixXd j = jacobian(g, p, n);
    const Eigen::VectorXd scale = j.colwise().norm().transpose().cwiseMax(1e-12);
    // Stationary once the residual is orthogonal to every Jacobian column.
    const Eigen::VectorXd cosines =
        (j.transpose() * r).cwiseQuotient(scale) / std::max(r.norm(), 1e-300);
    // The residual can also become negligible against the data before the
    // valley floor is reached; further steps then only crawl along it.
    if (cosines.lpNorm<Eigen::Infinity>() <= 1e-8 ||
        r.norm() <= 1e-10 * g.target.norm()) {
      return to_fit(p, n, rmse_of(r), it, true);
    }
    bool accepted = false;
    while (lambda < 1e16) {
      // Damped step from the augmented system [J; sqrt(lambda) D] step = [-r; 0]
      // solved by QR, which avoids squaring the condition number of J.
      // Columns are normalized so the near-collinear sinusoids stay resolvable.
      Eigen::MatrixXd a(m + np, np);
      a.topRows(m) = j * scale.cwiseInverse().asDiagonal();
      a.bottomRows(np) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(np, np);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + np);
      rhs.head(m) = -r;
      const Eigen::VectorXd step =
          a.householderQr().solve(rhs).cwiseQuotient(scale);
      const Eigen::VectorXd trial = p + step;
      const Eigen::VectorXd r_trial = residual(g, trial, n);
      const double trial_cost = r_trial.squaredNorm();
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double reduction = (cost - trial_cost) / cost;
        const bool small_step = step.norm() <= 1e-12 * (p.norm() + 1e-12);
        p = trial;
        r = r_trial;
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-20);
        accepted = true;
        if (small_step || reduction < 1e-12) {
          return to_fit(p, n, rmse_of(r), it, true);
        }
        break;
      }
      lambda *= 10.0;
    }
    // No descent direction left at machine precision: a local minimum.
    if (!accepted) return to_fit(p, n, rmse_of(r), it, true);
  }
  return to_fit(p, n, rmse_of(r), max_iterations, false);
}

Eigen::VectorXd pack(const std::vector<double>& weights,
                     const std::vector<double>& frequencies, int n) {
  if (static_cast<int>(weights.size()) != n ||
      static_cast<int>(frequencies.size()) != n) {
    throw std::invalid_argument(
        "fit_si_sinusoids: initial parameters must have one weight and one "
        "frequency per term");
  }
  Eigen::VectorXd p(2 * n);
  for (int k = 0; k < n; ++k) {
    p[k] = weights[k];
    p[n + k] = frequencies[k];
  }
  return p;
}

// Weights minimizing the residual for fixed frequencies.
Eigen::VectorXd linear_weights(const Grid& g,
                               const std::vector<double>& frequencies) {
  const int n = static_cast<int>(frequencies.size());
  Eigen::MatrixXd basis(g.x.size(), n);
  for (int k = 0; k < n; ++k) {
    basis.col(k) = (frequencies[k] * g.x.array()).sin().matrix();
  }
  return basis.colPivHouseholderQr().solve(g.target);
}

}  // namespace

double SiFit::evaluate(double x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    sum += weights[k] * std::sin(frequencies[k] * x);
  }
  return sum;
}

std::pair<std::vector<double>, std::vector<double>> reference_si_parameters(
    int order) {
  switch (order) {
    case 1:
      return {{1.839}, {0.535}};
    case 2:
      return {{1.931, 0.424}, {0.331, 0.854}};
    case 3:
      return {{1.964, 0.553, 0.189}, {0.235, 0.656, 0.931}};
    default:
      throw std::invalid_argument("Si fit order must be 1, 2 or 3");
  }
}

SiFit fit_si_sinusoids(const SiFitOptions& options) {
  const int n = options.order;
  if (n < 1 || n > 3) {
    throw std::invalid_argument("Si fit order must be 1, 2 or 3, got " +
                                std::to_string(n));
  }
  if (options.grid_size < 2) {
    throw std::invalid_argument("Si fit grid needs at least two points");
  }
  if (options.max_iterations < 1) {
    throw std::invalid_argument("Si fit needs a positive iteration cap");
  }
  const Grid grid = make_grid(options.grid_size);
  const auto [w0, f0] = options.init ? *options.init
                                     : reference_si_parameters(n);

  std::vector<SiFit> candidates;
  candidates.push_back(
      levenberg_marquardt(grid, pack(w0, f0, n), n, options.max_iterations));

  if (options.seed) {
    std::mt19937_64 rng(*options.seed);
    std::uniform_real_distribution<double> freq(0.05, 1.5);
    for (int i = 0; i < options.restarts; ++i) {
      std::vector<double> f(n);
      for (double& v : f) v = freq(rng);
      std::sort(f.begin(), f.end());
      const Eigen::VectorXd w = linear_weights(grid, f);
      std::vector<double> wv(w.data(), w.data() + n);
      candidates.push_back(
          levenberg_marquardt(grid, pack(wv, f, n), n, options.max_iterations));
    }
  }

  const auto by_rmse = [](const SiFit& a, const SiFit& b) {
    return a.rmse < b.rmse;
  };
  const SiFit best_any =
      *std::min_element(candidates.begin(), candidates.end(), by_rmse);
  std::vector<SiFit> converged;
  std::copy_if(candidates.begin(), candidates.end(),
               std::back_inserter(converged),
               [](const SiFit& f) { return f.converged; });
  if (converged.empty()) {
    throw FitError("Si fit did not converge within " +
                       std::to_string(options.max_iterations) + " iterations",
                   best_any);
  }
  return *std::min_element(converged.begin(), converged.end(), by_rmse);
}

}  // namespace unimotion
