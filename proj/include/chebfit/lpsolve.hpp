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

#ifndef CHEBFIT_LPSOLVE_HPP_
#define CHEBFIT_LPSOLVE_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "chebfit/design.hpp"

namespace chebfit {

/// Weighted regression instance: minimize over x the p-norm of
/// S(Ax - b) with S = diag(row_weights). p may be infinity.
struct RegressionProblem {
  DesignMatrix A;
  std::vector<double> b;
  std::vector<double> row_weights;
  double p = 2.0;

  void validate() const;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 300;
  /// Initial smoothing level for the IRLS objective. Negative means
  /// "choose automatically": 1e-2 times the max-norm of the weighted
  /// right-hand side.
  double smoothing_init = -1.0;
};

struct SolveResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double smoothing_final = 0.0;
};

/// p-norm of a residual vector, stable for large p (the largest entry is
/// factored out before exponentiation). p = infinity gives the max-norm.
double vector_pnorm(const Eigen::VectorXd& r, double p);

/// Minimizes the weighted p-norm objective. p = 2 is solved directly by
/// orthogonal factorization; finite p != 2 runs safeguarded IRLS on the
/// smoothed objective sum (r_i^2 + delta^2)^{p/2} with geometric smoothing
/// decrease and step halving; p = infinity delegates to solve_linf.
/// Throws RankError when the weighted design is column rank deficient. On
/// iteration exhaustion the best iterate is returned with converged=false.
SolveResult solve(const RegressionProblem& problem, const SolveOptions& opts = {});

/// Minimax (weighted max-residual) regression by Lawson's multiplicative
/// weight iteration: repeated weighted least squares with weights scaled by
/// residual magnitudes. Stops when the objective stabilizes to relative
/// tolerance.
SolveResult solve_linf(const DesignMatrix& A, const std::vector<double>& b,
                       const std::vector<double>& row_weights,
                       const SolveOptions& opts = {});

/// Slow projected-subgradient reference minimizer; returns the best
/// objective value found within the evaluation budget across the given
/// number of random restarts plus a least-squares warm start. Test oracle
/// only; the fitting pipeline never calls it.
double subgradient_oracle(const RegressionProblem& problem, long budget,
                          int restarts, std::uint64_t seed);

}  // namespace chebfit

#endif  // CHEBFIT_LPSOLVE_HPP_
