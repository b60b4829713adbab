// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Local minimizers used by the multistart searches: an adaptive Nelder-Mead
// simplex (derivative-free) and L-BFGS with backtracking line search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace qre {

/// Reproducibility record for stochastic searches. `workers` only selects the
/// degree of parallelism; results never depend on it.
struct OptimizerBudget {
  std::size_t restarts = 32;
  std::size_t max_iters = 2000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  static OptimizerBudget entanglement_defaults() {
    OptimizerBudget b;
    b.restarts = 64;
    b.max_iters = 5000;
    b.tolerance = 1e-10;
    return b;
  }
};

struct LocalResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with dimension-adaptive coefficients (Gao & Han). Declares
/// convergence when the simplex spread and the best-value improvement since
/// the last rebuild both fall below `tol`; the simplex is rebuilt around the
/// incumbent after each apparent convergence to escape collapsed simplices.
/// Stops early if f reaches -inf.
template <class F>
LocalResult nelder_mead(F&& f, Eigen::VectorXd x0, double step, std::size_t max_iters, double tol) {
  const auto n = x0.size();
  LocalResult out;
  if (n == 0) {
    out.x = x0;
    out.value = f(x0);
    out.evaluations = 1;
    out.converged = true;
    return out;
  }
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn);
  const double sigma = 1.0 - 1.0 / dn;

  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1);
  std::vector<double> vals(pts.size());
  std::vector<std::size_t> order(pts.size());
  auto eval = [&](const Eigen::VectorXd& x) {
    ++out.evaluations;
    return f(x);
  };
  auto build = [&](const Eigen::VectorXd& centre, double fc, double h) {
    pts[0] = centre;
    vals[0] = fc;
    for (Eigen::Index i = 0; i < n; ++i) {
      pts[static_cast<std::size_t>(i) + 1] = centre;
      pts[static_cast<std::size_t>(i) + 1](i) += h;
      vals[static_cast<std::size_t>(i) + 1] = eval(pts[static_cast<std::size_t>(i) + 1]);
    }
  };
  auto is_neg_inf = [](double v) { return std::isinf(v) && v < 0; };

  double best = eval(x0);
  build(x0, best, step);
  double best_at_build = best;
  std::size_t rebuilds = 0;
  constexpr std::size_t kMaxRebuilds = 8;

  Eigen::VectorXd centroid(n), xr(n), xe(n), xc(n);
  while (out.iterations < max_iters) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t ib = order.front(), iw = order.back(), isw = order[order.size() - 2];
    best = vals[ib];
    if (is_neg_inf(best)) break;

    if (vals[iw] - vals[ib] < tol) {
      const bool stalled = best_at_build - best < tol;
      if (stalled || rebuilds >= kMaxRebuilds) {
        out.converged = true;
        break;
      }
      ++rebuilds;
      const Eigen::VectorXd centre = pts[ib];
      double spread = 0.0;
      for (const auto& p : pts) spread = std::max(spread, (p - centre).cwiseAbs().maxCoeff());
      build(centre, best, std::max(spread * 4.0, step * 1e-3));
      best_at_build = best;
      ++out.iterations;
      continue;
    }

    centroid.setZero();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i != iw) centroid += pts[i];
    }
    centroid /= dn;

    xr = centroid + alpha * (centroid - pts[iw]);
    const double fr = eval(xr);
    if (fr < vals[ib]) {
      xe = centroid + gamma * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[iw] = xe;
        vals[iw] = fe;
      } else {
        pts[iw] = xr;
        vals[iw] = fr;
      }
    } else if (fr < vals[isw]) {
      pts[iw] = xr;
      vals[iw] = fr;
    } else {
      const bool outside = fr < vals[iw];
      xc = outside ? Eigen::VectorXd(centroid + rho * (xr - centroid))
                   : Eigen::VectorXd(centroid + rho * (pts[iw] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[iw])) {
        pts[iw] = xc;
        vals[iw] = fc;
      } else {
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i == ib) continue;
          pts[i] = pts[ib] + sigma * (pts[i] - pts[ib]);
          vals[i] = eval(pts[i]);
        }
      }
    }
    ++out.iterations;
  }
  const auto ib = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[ib];
  out.value = vals[ib];
  return out;
}

/// L-BFGS minimization of fg(x, grad) -> f. Converged when the per-iteration
/// decrease stays below `tol` for three consecutive iterations or the gradient
/// vanishes.
template <class FG>
LocalResult lbfgs(FG&& fg, Eigen::VectorXd x, std::size_t max_iters, double tol, std::size_t memory = 12) {
  LocalResult out;
  const auto n = x.size();
  Eigen::VectorXd g(n), g_new(n), x_new(n), d(n);
  double fx = fg(x, g);
  out.evaluations = 1;
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::size_t small_steps = 0;

  while (out.iterations < max_iters) {
    if (!std::isfinite(fx)) break;
    if (g.lpNorm<Eigen::Infinity>() < 1e-14) {
      out.converged = true;
      break;
    }
    // two-loop recursion
    d = -g;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t i = s_hist.size(); i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(d);
      d -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(d);
      d += (alpha[i] - beta) * s_hist[i];
    }
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      d = -g;
      slope = -g.squaredNorm();
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }
    double t = s_hist.empty() ? std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>()) : 1.0;
    double f_new = fx;
    bool accepted = false;
    for (int k = 0; k < 50; ++k) {
      x_new = x + t * d;
      f_new = fg(x_new, g_new);
      ++out.evaluations;
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    ++out.iterations;
    if (!accepted) {
      if (s_hist.empty()) {
        out.converged = true;  // no descent possible at working precision
        break;
      }
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      continue;
    }
    const Eigen::VectorXd s = x_new - x;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double decrease = fx - f_new;
    x = x_new;
    g = g_new;
    fx = f_new;
    small_steps = decrease < tol ? small_steps + 1 : 0;
    if (small_steps >= 3) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.value = fx;
  return out;
}

}  // namespace qre
