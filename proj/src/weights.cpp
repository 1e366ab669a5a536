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

#include "chebfit/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "chebfit/errors.hpp"
#include "chebfit/kernels.hpp"
#include "chebfit/lpsolve.hpp"

namespace chebfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_open_interval(double t) {
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("leverage functions require |t| < 1, got " + std::to_string(t));
  }
}

/// Squared row norms of a thin column-orthonormal factor of A. Throws
/// RankError when the numerical rank falls short of the column count.
Eigen::VectorXd leverage_rows(const Eigen::MatrixXd& A) {
  const Eigen::Index k = A.cols();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < k) {
    throw RankError("matrix is column rank deficient", static_cast<long>(qr.rank()));
  }
  const Eigen::MatrixXd q1 =
      qr.householderQ() * Eigen::MatrixXd::Identity(A.rows(), k);
  return q1.rowwise().squaredNorm();
}

/// min ||M x||_p over the affine slice c^T x = 1, by eliminating the
/// constraint: x = x0 + N z with x0 = c/||c||^2 and N an orthonormal basis
/// of the hyperplane c^T x = 0 from one Householder factorization of c.
double min_pnorm_on_affine(const Eigen::MatrixXd& M, const Eigen::VectorXd& c,
                           double p) {
  const Eigen::Index k = M.cols();
  const double cnorm2 = c.squaredNorm();
  if (cnorm2 == 0.0) throw ParamError("sensitivity constraint row must be nonzero");
  const Eigen::VectorXd x0 = c / cnorm2;
  if (k == 1) return vector_pnorm(M * x0, p);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(c);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
  const Eigen::MatrixXd null_basis = q.rightCols(k - 1);

  RegressionProblem problem;
  problem.A.entries = M * null_basis;
  problem.b.resize(static_cast<std::size_t>(M.rows()));
  const Eigen::VectorXd rhs = -(M * x0);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    problem.b[static_cast<std::size_t>(i)] = rhs[i];
  }
  problem.row_weights.assign(static_cast<std::size_t>(M.rows()), 1.0);
  problem.p = p;
  // Only the minimum value matters here, and it stabilizes to well below
  // any downstream tolerance long before the iterates settle at p = 1.
  SolveOptions opts;
  opts.tol = 1e-8;
  opts.max_iter = 2000;
  const SolveResult res = solve(problem, opts);
  if (!res.converged) {
    throw ConvergenceError("sensitivity minimization did not converge",
                           res.objective);
  }
  return res.objective;
}

}  // namespace

WeightVector matrix_leverage(const DesignMatrix& A) {
  A.validate();
  const Eigen::VectorXd tau = leverage_rows(A.entries);
  WeightVector out;
  out.kind = WeightKind::Leverage;
  out.p = 2.0;
  out.values.assign(tau.data(), tau.data() + tau.size());
  out.converged = true;
  out.fixpoint_residual = 0.0;
  return out;
}

WeightVector matrix_lewis_weights(const DesignMatrix& A, double p, double tol,
                                  int max_iter) {
  A.validate();
  if (!(p > 0.0 && p < 4.0)) {
    throw ParamError("Lewis weights require p in (0,4), got " + std::to_string(p));
  }
  if (!(tol > 0.0)) throw ParamError("Lewis tolerance must be positive");
  if (max_iter < 1) throw ParamError("max_iter must be positive");

  const Eigen::Index n = A.rows();
  const Eigen::Index k = A.cols();
  const double expo = 0.5 - 1.0 / p;

  std::vector<bool> zero_row(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 0; i < n; ++i) {
    zero_row[static_cast<std::size_t>(i)] = A.entries.row(i).norm() == 0.0;
  }

  Eigen::VectorXd w = Eigen::VectorXd::Constant(
      n, static_cast<double>(k) / static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (zero_row[static_cast<std::size_t>(i)]) w[i] = 0.0;
  }

  double res = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd scaled(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double s = w[i] > 0.0 ? std::pow(w[i], expo) : 0.0;
      scaled.row(i) = s * A.entries.row(i);
    }
    const Eigen::VectorXd tau = leverage_rows(scaled);

    double new_res = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (zero_row[static_cast<std::size_t>(i)]) continue;
      new_res = std::max(new_res, std::abs(tau[i] - w[i]) / w[i]);
    }
    if (new_res <= tol) {
      WeightVector out;
      out.kind = WeightKind::Lewis;
      out.p = p;
      out.values.assign(w.data(), w.data() + n);
      out.converged = true;
      out.fixpoint_residual = new_res;
      return out;
    }

    Eigen::VectorXd w_next(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (zero_row[static_cast<std::size_t>(i)]) {
        w_next[i] = 0.0;
        continue;
      }
      w_next[i] = std::pow(tau[i] * std::pow(w[i], 2.0 / p - 1.0), 0.5 * p);
    }
    if (new_res > res) {
      // Residual grew: damp by taking the geometric mean with the previous
      // iterate.
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!zero_row[static_cast<std::size_t>(i)]) {
          w_next[i] = std::sqrt(w_next[i] * w[i]);
        }
      }
    }
    w = w_next;
    res = new_res;
  }
  throw ConvergenceError("Lewis weight iteration exhausted max_iter", res);
}

double operator_leverage(double t, int d) {
  require_open_interval(t);
  if (d < 0) throw ParamError("degree must be nonnegative");
  const kernels::Recurrence rec =
      basis_recurrence(BasisKind::legendre_normalized(), d);
  double out = 0.0;
  kernels::recurrence_sum_squares(rec, d, &t, 1, &out);
  return out;
}

double operator_reweighted_leverage(double t, int d, double p,
                                    const MeasureSpec& measure) {
  require_open_interval(t);
  if (d < 0) throw ParamError("degree must be nonnegative");
  if (!(p >= 2.0 / 3.0 && p <= 2.0)) {
    throw ParamError("reweighted leverage requires p in [2/3, 2], got " +
                     std::to_string(p));
  }
  measure.validate();
  switch (measure.kind) {
    case MeasureKind::Chebyshev: {
      const double alpha = 1.0 / p - 0.5;
      const kernels::Recurrence rec =
          basis_recurrence(BasisKind::gegenbauer_normalized(alpha), d);
      double sum = 0.0;
      kernels::recurrence_sum_squares(rec, d, &t, 1, &sum);
      return std::pow(1.0 - t * t, alpha) * sum;
    }
    case MeasureKind::ClippedChebyshev: {
      const ReweightedGram gram(d, p, measure);
      return gram.leverage(t);
    }
    case MeasureKind::Uniform:
      throw ParamError("reweighted leverage is not defined for the Uniform measure");
  }
  throw ParamError("unknown measure kind");
}

double lewis_ratio_p1(double t, int d) {
  require_open_interval(t);
  if (d < 0) throw ParamError("degree must be nonnegative");
  const double order = 2.0 * (d + 1.0);
  return 1.0 + (1.0 - eval_chebyshev_U(2 * (d + 1), t)) / order;
}

double matrix_sensitivity(const DesignMatrix& A, std::size_t i, double p) {
  A.validate();
  if (!(p >= 1.0)) throw ParamError("sensitivity requires p >= 1");
  if (i >= static_cast<std::size_t>(A.rows())) {
    throw ParamError("row index out of range");
  }
  leverage_rows(A.entries);  // full-rank precondition, throws RankError
  const Eigen::VectorXd row = A.entries.row(static_cast<Eigen::Index>(i));
  const double val = min_pnorm_on_affine(A.entries, row, p);
  return std::pow(val, -p);
}

double operator_sensitivity(double t, int d, double p, int quad_nodes) {
  require_open_interval(t);
  if (d < 0) throw ParamError("degree must be nonnegative");
  if (!(p >= 1.0)) throw ParamError("sensitivity requires p >= 1");
  if (quad_nodes < d + 2) {
    throw ParamError("operator sensitivity needs at least d+2 quadrature nodes");
  }
  const BasisKind basis = BasisKind::chebyshev_t();
  const kernels::Recurrence rec = basis_recurrence(basis, d);

  Eigen::MatrixXd design(quad_nodes, d + 1);
  std::vector<double> nodes(static_cast<std::size_t>(quad_nodes));
  for (int kq = 1; kq <= quad_nodes; ++kq) {
    const double theta = (2.0 * kq - 1.0) * kPi / (2.0 * quad_nodes);
    nodes[static_cast<std::size_t>(kq - 1)] = std::cos(theta);
  }
  kernels::recurrence_rows(rec, d, nodes.data(), nodes.size(), design.data());
  for (int kq = 0; kq < quad_nodes; ++kq) {
    const double theta = (2.0 * kq + 1.0) * kPi / (2.0 * quad_nodes);
    const double omega = (kPi / quad_nodes) * std::sin(theta);
    design.row(kq) *= std::pow(omega, 1.0 / p);
  }

  Eigen::VectorXd constraint(d + 1);
  basis_rows(basis, d, &t, 1, constraint.data());
  const double val = min_pnorm_on_affine(design, constraint, p);
  return std::pow(val, -p);
}

ReweightedGram::ReweightedGram(int d, double p, const MeasureSpec& measure,
                               int quad_nodes)
    : d_(d), p_(p), measure_(measure) {
  if (d < 0) throw ParamError("degree must be nonnegative");
  if (!(p >= 2.0 / 3.0 && p <= 2.0)) {
    throw ParamError("reweighted leverage requires p in [2/3, 2], got " +
                     std::to_string(p));
  }
  measure.validate();
  if (measure.kind == MeasureKind::Uniform) {
    throw ParamError("reweighted leverage is not defined for the Uniform measure");
  }
  const int n = quad_nodes > 0 ? quad_nodes : std::max(4000, 100 * d * d);
  if (n < d + 2) throw ParamError("Gram quadrature needs at least d+2 nodes");

  const kernels::Recurrence rec = basis_recurrence(BasisKind::chebyshev_t(), d);
  const double expo = 1.0 - 2.0 / p;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d + 1, d + 1);
  Eigen::VectorXd row(d + 1);
  for (int kq = 1; kq <= n; ++kq) {
    const double theta = (2.0 * kq - 1.0) * kPi / (2.0 * n);
    const double s = std::cos(theta);
    kernels::recurrence_rows(rec, d, &s, 1, row.data());
    const double m = density(measure_, s);
    const double weight = (kPi / n) * std::pow(m, expo) * std::sin(theta);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(row, weight);
  }
  gram = gram.selfadjointView<Eigen::Lower>();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  condition_ = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (!(lmin > 0.0) || condition_ > 1e14) {
    throw ConditioningError("reweighted Gram matrix numerically singular",
                            condition_);
  }
  gram_.compute(gram);
}

double ReweightedGram::leverage(double t) const {
  require_open_interval(t);
  Eigen::VectorXd row(d_ + 1);
  basis_rows(BasisKind::chebyshev_t(), d_, &t, 1, row.data());
  const double quad_form = row.dot(gram_.solve(row));
  return std::pow(density(measure_, t), 1.0 - 2.0 / p_) * quad_form;
}

}  // namespace chebfit
