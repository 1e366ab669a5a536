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

#ifndef CHEBFIT_WEIGHTS_HPP_
#define CHEBFIT_WEIGHTS_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "chebfit/design.hpp"
#include "chebfit/measures.hpp"

namespace chebfit {

enum class WeightKind { Leverage, Lewis, Sensitivity };

/// Per-row weight scores of a matrix. For leverage and Lewis weights the
/// values lie in [0,1] and sum to the column count; `fixpoint_residual`
/// reports how well the returned Lewis weights satisfy their defining
/// fixed-point identity.
struct WeightVector {
  std::vector<double> values;
  WeightKind kind = WeightKind::Leverage;
  double p = 2.0;
  bool converged = true;
  double fixpoint_residual = 0.0;
};

/// Leverage scores: squared row norms of a column-orthonormal factor,
/// equivalently a_i^T (A^T A)^{-1} a_i. Throws RankError (with the
/// numerical rank) when A is column rank deficient.
WeightVector matrix_leverage(const DesignMatrix& A);

/// ell_p Lewis weights by fixed-point iteration
///   w_i <- (a_i^T (A^T W^{1-2/p} A)^{-1} a_i)^{p/2},
/// started from uniform weights cols/rows, with geometric-mean damping
/// when the residual oscillates. Requires p in (0,4), the contraction
/// regime of the plain iteration. Throws ConvergenceError (carrying the
/// last residual) when max_iter is exhausted.
WeightVector matrix_lewis_weights(const DesignMatrix& A, double p,
                                  double tol = 1e-10, int max_iter = 500);

/// Leverage function of the degree-d polynomial operator on (-1,1):
/// the sum of squared normalized Legendre values at t.
double operator_leverage(double t, int d);

/// Leverage function of the density-reweighted polynomial operator, for
/// p in [2/3, 2]. Under the Chebyshev measure this is the closed form
/// (1-t^2)^a Sum_i J_i^(a)(t)^2 with a = 1/p - 1/2 and J the orthonormal
/// Gegenbauer family; under ClippedChebyshev it is evaluated through a
/// quadrature Gram matrix. The Uniform measure is not supported.
double operator_reweighted_leverage(double t, int d, double p,
                                    const MeasureSpec& measure);

/// Closed-form ratio of the p=1 reweighted leverage function to the scaled
/// Chebyshev density: 1 + (1 - U_{2(d+1)}(t)) / (2(d+1)).
double lewis_ratio_p1(double t, int d);

/// ell_p sensitivity of row i: 1 / (min{||Ax||_p : a_i^T x = 1})^p,
/// computed by eliminating the constraint through a null-space basis and
/// minimizing with the ell_p solver. Requires p >= 1, a nonzero row, and
/// full column rank.
double matrix_sensitivity(const DesignMatrix& A, std::size_t i, double p);

/// Sensitivity of the degree-d polynomial operator at t: the integral
/// ||q||_p^p is discretized on quad_nodes Gauss-Chebyshev points (weights
/// folded into the rows as omega^{1/p}), and the constraint row is the
/// basis evaluation at t.
double operator_sensitivity(double t, int d, double p, int quad_nodes);

/// Precomputed Gram factorization for repeated reweighted-leverage queries
/// under one (degree, p, measure) triple. Quadrature node count defaults
/// to max(4000, 100 d^2); the integrand is expressed in the theta variable
/// so the endpoint singularity of the p < 2 reweighting integrates cleanly.
class ReweightedGram {
 public:
  ReweightedGram(int d, double p, const MeasureSpec& measure, int quad_nodes = -1);

  /// Reweighted leverage m(t)^{1-2/p} r(t)^T G^{-1} r(t) at |t| < 1.
  double leverage(double t) const;

  double condition_estimate() const { return condition_; }

 private:
  int d_;
  double p_;
  MeasureSpec measure_;
  double condition_ = 0.0;
  Eigen::LDLT<Eigen::MatrixXd> gram_;
};

}  // namespace chebfit

#endif  // CHEBFIT_WEIGHTS_HPP_
