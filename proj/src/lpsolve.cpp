// Copyright 2026 the chebfit project
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

#include "chebfit/lpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "chebfit/errors.hpp"
#include "chebfit/rng.hpp"

namespace chebfit {

namespace {

struct Reduced {
  Eigen::MatrixXd M;
  Eigen::VectorXd y;
};

/// Folds the diagonal row weights into the design and right-hand side, so
/// every later step sees the plain problem min ||Mx - y||_p. This makes
/// weight equivariance exact by construction.
Reduced reduce_rows(const DesignMatrix& A, const std::vector<double>& b,
                    const std::vector<double>& row_weights) {
  A.validate();
  const Eigen::Index n = A.rows();
  if (b.size() != static_cast<std::size_t>(n)) {
    throw ParamError("right-hand side length does not match the design rows");
  }
  if (row_weights.size() != static_cast<std::size_t>(n)) {
    throw ParamError("row weight length does not match the design rows");
  }
  Reduced red;
  red.M.resize(n, A.cols());
  red.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = row_weights[static_cast<std::size_t>(i)];
    const double bi = b[static_cast<std::size_t>(i)];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ParamError("row weights must be positive and finite");
    }
    if (!std::isfinite(bi)) throw ParamError("right-hand side must be finite");
    red.M.row(i) = w * A.entries.row(i);
    red.y[i] = w * bi;
  }
  return red;
}

void require_full_rank(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                       Eigen::Index cols) {
  if (qr.rank() < cols) {
    throw RankError("weighted design is column rank deficient",
                    static_cast<long>(qr.rank()));
  }
}

/// log of sum_i (r_i^2 + delta^2)^{p/2}, evaluated in log space so that
/// large p cannot overflow. Used only for line-search comparisons.
double log_smoothed_objective(const Eigen::VectorXd& r, double delta, double p) {
  const Eigen::Index n = r.size();
  double lmax = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    lmax = std::max(lmax, std::log(r[i] * r[i] + delta * delta));
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    acc += std::exp(0.5 * p * (std::log(r[i] * r[i] + delta * delta) - lmax));
  }
  return 0.5 * p * lmax + std::log(acc);
}

/// IRLS row weights (r_i^2 + delta^2)^{(p-2)/2}, normalized by their
/// largest value; a common scale does not change the weighted
/// least-squares minimizer, and normalizing keeps every entry in (0, 1].
Eigen::VectorXd irls_weights(const Eigen::VectorXd& r, double delta, double p) {
  const Eigen::Index n = r.size();
  const double e = 0.5 * (p - 2.0);
  Eigen::VectorXd logs(n);
  for (Eigen::Index i = 0; i < n; ++i) logs[i] = std::log(r[i] * r[i] + delta * delta);
  const double ref = e >= 0.0 ? logs.maxCoeff() : logs.minCoeff();
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) w[i] = std::exp(e * (logs[i] - ref));
  return w;
}

Eigen::VectorXd weighted_ls(const Eigen::MatrixXd& M, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& w) {
  const Eigen::VectorXd s = w.cwiseSqrt();
  const Eigen::MatrixXd Mw = s.asDiagonal() * M;
  const Eigen::VectorXd yw = s.cwiseProduct(y);
  return Mw.colPivHouseholderQr().solve(yw);
}

SolveResult zero_rhs_result(Eigen::Index cols) {
  SolveResult res;
  res.x = Eigen::VectorXd::Zero(cols);
  res.objective = 0.0;
  res.iterations = 0;
  res.converged = true;
  res.smoothing_final = 0.0;
  return res;
}

/// Subgradient of ||r||_p at r (any fixed choice at kinks), computed
/// against a precomputed norm value. Entries are
/// sign(r_i) (|r_i|/||r||_p)^{p-1}, evaluated in log space.
Eigen::VectorXd pnorm_subgradient(const Eigen::VectorXd& r, double p, double norm) {
  const Eigen::Index n = r.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (norm <= 0.0) return g;
  if (std::isinf(p)) {
    Eigen::Index imax = 0;
    r.cwiseAbs().maxCoeff(&imax);
    g[imax] = r[imax] >= 0.0 ? 1.0 : -1.0;
    return g;
  }
  const double lognorm = std::log(norm);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (r[i] == 0.0) continue;
    const double mag = std::exp((p - 1.0) * (std::log(std::abs(r[i])) - lognorm));
    g[i] = r[i] > 0.0 ? mag : -mag;
  }
  return g;
}

}  // namespace

void RegressionProblem::validate() const {
  A.validate();
  if (b.size() != static_cast<std::size_t>(A.rows())) {
    throw ParamError("right-hand side length does not match the design rows");
  }
  if (row_weights.size() != static_cast<std::size_t>(A.rows())) {
    throw ParamError("row weight length does not match the design rows");
  }
  if (!(p >= 1.0)) throw ParamError("regression norm requires p >= 1");
}

double vector_pnorm(const Eigen::VectorXd& r, double p) {
  if (!(p > 0.0)) throw ParamError("p-norm requires p > 0");
  const double rmax = r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
  if (rmax == 0.0) return 0.0;
  if (std::isinf(p)) return rmax;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    acc += std::pow(std::abs(r[i]) / rmax, p);
  }
  return rmax * std::pow(acc, 1.0 / p);
}

SolveResult solve(const RegressionProblem& problem, const SolveOptions& opts) {
  problem.validate();
  if (std::isinf(problem.p)) {
    return solve_linf(problem.A, problem.b, problem.row_weights, opts);
  }
  if (!(opts.tol > 0.0)) throw ParamError("solver tolerance must be positive");
  if (opts.max_iter < 1) throw ParamError("max_iter must be positive");

  const Reduced red = reduce_rows(problem.A, problem.b, problem.row_weights);
  const Eigen::Index cols = red.M.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(red.M);
  require_full_rank(qr, cols);

  const double scale = red.y.cwiseAbs().maxCoeff();
  if (scale == 0.0) return zero_rhs_result(cols);
  const Eigen::VectorXd yt = red.y / scale;
  const double p = problem.p;

  if (p == 2.0) {
    SolveResult res;
    res.x = qr.solve(red.y);
    res.objective = vector_pnorm(red.M * res.x - red.y, 2.0);
    res.iterations = 1;
    res.converged = true;
    res.smoothing_final = 0.0;
    return res;
  }

  double delta = opts.smoothing_init < 0.0 ? 1e-2 : opts.smoothing_init / scale;
  const double delta_floor = opts.tol;  // the rescaled rhs has max-norm 1
  Eigen::VectorXd x = qr.solve(yt);
  Eigen::VectorXd r = red.M * x - yt;
  double obj = vector_pnorm(r, p);
  Eigen::VectorXd best_x = x;
  double best_obj = obj;
  bool converged = false;
  int iter = 0;
  int since_delta_drop = 0;

  for (; iter < opts.max_iter; ++iter) {
    const Eigen::VectorXd w = irls_weights(r, delta, p);
    const Eigen::VectorXd x_new = weighted_ls(red.M, yt, w);
    const Eigen::VectorXd dx = x_new - x;

    // Backtracking on the smoothed objective: the weighted-LS step is a
    // descent direction for it at every p > 1, and exact descent (full
    // step) for p < 2.
    const double phi0 = log_smoothed_objective(r, delta, p);
    double lambda = 1.0;
    bool moved = false;
    for (int h = 0; h < 60; ++h) {
      const Eigen::VectorXd x_try = x + lambda * dx;
      const Eigen::VectorXd r_try = red.M * x_try - yt;
      if (log_smoothed_objective(r_try, delta, p) < phi0) {
        x = x_try;
        r = r_try;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }

    const double obj_new = vector_pnorm(r, p);
    if (obj_new < best_obj) {
      best_obj = obj_new;
      best_x = x;
    }
    const double rel_change = std::abs(obj - obj_new) / std::max(obj_new, 1e-300);
    obj = obj_new;
    ++since_delta_drop;

    // Progress below this threshold means the current smoothing level is
    // exhausted. Tying the threshold to delta keeps early levels cheap; the
    // iteration cap bounds time spent on slowly creeping levels.
    const double stall_threshold = std::max(opts.tol, 0.01 * delta);
    const bool stalled = !moved || rel_change < stall_threshold || since_delta_drop >= 20;
    if (stalled) {
      if (delta <= delta_floor) {
        if (!moved || rel_change < opts.tol) {
          converged = true;
          ++iter;
          break;
        }
      } else {
        delta = std::max(delta / 10.0, delta_floor);
        since_delta_drop = 0;
      }
    }
  }

  SolveResult res;
  res.x = scale * best_x;
  res.objective = vector_pnorm(red.M * res.x - red.y, p);
  res.iterations = iter;
  res.converged = converged;
  res.smoothing_final = delta * scale;
  return res;
}

SolveResult solve_linf(const DesignMatrix& A, const std::vector<double>& b,
                       const std::vector<double>& row_weights,
                       const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParamError("solver tolerance must be positive");
  if (opts.max_iter < 1) throw ParamError("max_iter must be positive");
  const Reduced red = reduce_rows(A, b, row_weights);
  const Eigen::Index n = red.M.rows();
  const Eigen::Index cols = red.M.cols();
  {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(red.M);
    require_full_rank(qr, cols);
  }
  const double scale = red.y.cwiseAbs().maxCoeff();
  if (scale == 0.0) return zero_rhs_result(cols);
  const Eigen::VectorXd yt = red.y / scale;

  // Lawson iteration. With probability weights omega, the weighted LS value
  // sqrt(sum omega r^2) never exceeds the minimax optimum, while the max
  // residual of any iterate never falls below it; their gap certifies how
  // close the current iterate is. The gap closes much more slowly than the
  // objective itself, so a stabilization window on the max residual serves
  // as the second stopping rule.
  Eigen::VectorXd omega = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd best_x = Eigen::VectorXd::Zero(cols);
  double best_obj = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  constexpr int kWindow = 30;
  std::vector<double> recent;
  recent.reserve(kWindow);
  for (; iter < opts.max_iter; ++iter) {
    const Eigen::VectorXd x = weighted_ls(red.M, yt, omega);
    const Eigen::VectorXd r = red.M * x - yt;
    const double obj = r.cwiseAbs().maxCoeff();
    const double wls_value = std::sqrt(omega.dot(r.cwiseAbs2()));
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
    if (obj - wls_value <= opts.tol * std::max(obj, 1e-300)) {
      converged = true;
      ++iter;
      break;
    }
    if (static_cast<int>(recent.size()) == kWindow) recent.erase(recent.begin());
    recent.push_back(obj);
    if (static_cast<int>(recent.size()) == kWindow) {
      const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
      if (*hi - *lo <= opts.tol * std::max(obj, 1e-300)) {
        converged = true;
        ++iter;
        break;
      }
    }
    const double floor = 1e-14 * obj;
    for (Eigen::Index i = 0; i < n; ++i) {
      omega[i] *= std::max(std::abs(r[i]), floor);
    }
    omega /= omega.sum();
  }

  SolveResult res;
  res.x = scale * best_x;
  res.objective = vector_pnorm(red.M * res.x - red.y,
                               std::numeric_limits<double>::infinity());
  res.iterations = iter;
  res.converged = converged;
  res.smoothing_final = 0.0;
  return res;
}

double subgradient_oracle(const RegressionProblem& problem, long budget,
                          int restarts, std::uint64_t seed) {
  problem.validate();
  if (budget < 10000) throw ParamError("subgradient oracle requires budget >= 10000");
  if (restarts < 0) throw ParamError("restart count must be nonnegative");

  const Reduced red = reduce_rows(problem.A, problem.b, problem.row_weights);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(red.M);
  require_full_rank(qr, red.M.cols());
  const double scale = red.y.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const Eigen::VectorXd yt = red.y / scale;
  const double p = problem.p;

  const Eigen::VectorXd warm = qr.solve(yt);
  const int starts = restarts + 1;
  const int stages = 14;
  const long per_stage = std::max<long>(1, budget / (static_cast<long>(starts) * stages));
  const double step0 = 0.5 * (1.0 + warm.norm());

  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd x = warm;
    if (s > 0) {
      const double spread = 1.0 + warm.cwiseAbs().maxCoeff();
      for (Eigen::Index j = 0; j < x.size(); ++j) {
        x[j] += spread * rng.uniform_in(-1.0, 1.0);
      }
    }
    for (int stage = 0; stage < stages; ++stage) {
      const double step = step0 * std::pow(4.0, -stage);
      for (long it = 0; it < per_stage; ++it) {
        const Eigen::VectorXd r = red.M * x - yt;
        const double f = vector_pnorm(r, p);
        best = std::min(best, f);
        if (f == 0.0) break;
        const Eigen::VectorXd g = red.M.transpose() * pnorm_subgradient(r, p, f);
        const double gnorm = g.norm();
        if (gnorm == 0.0) break;
        x -= (step / gnorm) * g;
      }
    }
  }
  return scale * best;
}

}  // namespace chebfit
