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

#ifndef CHEBFIT_ACTIVE_HPP_
#define CHEBFIT_ACTIVE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "chebfit/basis.hpp"
#include "chebfit/design.hpp"
#include "chebfit/lpsolve.hpp"
#include "chebfit/measures.hpp"

namespace chebfit {

/// A function on [-1,1] that can only be observed pointwise, with a query
/// counter: `query` increments it once per call, `peek` (used by error
/// estimation and plotting) does not. Copies share state, so a Residual
/// oracle forwards every query to its base and the base's counter sees it.
/// An oracle instance is single-caller at a time; concurrent fits need
/// separate oracles.
class FunctionOracle {
 public:
  /// Built-in test functions: "abs" (|t|), "runge" (1/(1+25 t^2)),
  /// "exp" (e^t), "step" (0 for t < 0, 1 otherwise).
  static FunctionOracle builtin(const std::string& name);

  /// Signed indicator: amplitude on [center - width/2, center + width/2],
  /// zero elsewhere. `amplitude` may be any nonzero real.
  static FunctionOracle spike(double center, double width, double amplitude);

  static FunctionOracle poly(const PolyCoeffs& coeffs);

  /// Piecewise-linear interpolant of (points, values). Points must be
  /// strictly increasing, at least two, and cover [-1, 1]. Guarantees of
  /// the fitting pipeline then apply to the interpolant itself, not to
  /// whatever data source produced the table.
  static FunctionOracle tabulated(std::vector<double> points,
                                  std::vector<double> values);

  /// The pointwise difference base(t) - subtract(t). Querying the residual
  /// queries the base exactly once.
  static FunctionOracle residual(const FunctionOracle& base,
                                 const PolyCoeffs& subtract);

  /// Counted evaluation.
  double query(double t);

  /// Uncounted evaluation, for error estimation against known fits.
  double peek(double t) const;

  long query_count() const;

 private:
  struct Impl;
  FunctionOracle() = default;
  std::shared_ptr<Impl> impl_;
};

/// Result of a fitting run. `poly` is in the Chebyshev-T basis;
/// `poly_monomial` is the same polynomial converted to monomials when the
/// degree allows it (has_monomial). `est_error` is the L_p norm of the
/// residual f - poly over plain dt on (-1,1), estimated by deterministic
/// quadrature (sup over a dense grid when p is infinite).
struct FitReport {
  PolyCoeffs poly;
  PolyCoeffs poly_monomial;
  bool has_monomial = false;
  std::vector<SolveResult> stage_results;
  long n_queries = 0;
  double p = 2.0;
  double est_error = 0.0;
  /// Quadrature resolution behind est_error, recorded so the estimate can
  /// be reproduced exactly from the serialized report.
  int error_quad_nodes = 0;
  std::uint64_t seed = 0;
  SampleSet samples;
};

/// L_p distance between the oracle (via peek, uncounted) and the
/// polynomial over plain dt, by theta-substituted midpoint quadrature with
/// `quad_nodes` nodes; for infinite p, the max over a uniform grid of
/// quad_nodes+1 points including both endpoints.
double residual_pnorm(const FunctionOracle& oracle, const PolyCoeffs& poly,
                      double p, int quad_nodes = 8192);

/// One-shot constant-factor fit: n Chebyshev-density samples, observed
/// values, Chebyshev-T design, row weights (sqrt(1-t_i^2))^{1/p}, weighted
/// ell_p solve. Requires n >= d+1 and finite p >= 1. A rank-deficient
/// sampled design is resampled once with seed+1 before the error
/// propagates.
FitReport fit_constant_factor(FunctionOracle& oracle, int d, double p,
                              std::size_t n, std::uint64_t seed);

/// Two-stage relative-error fit: constant-factor fit q on floor(n/2)
/// samples, then a second constant-factor fit of the residual f - q on the
/// remaining samples; returns the sum of the two polynomials. Requires
/// n >= 2(d+1).
FitReport fit_relative_error(FunctionOracle& oracle, int d, double p,
                             std::size_t n, std::uint64_t seed);

/// Row subsampling for matrix regression: row i survives an independent
/// coin with probability p_i = min{1, (m/n0)/sqrt(1-s_i^2)} and carries
/// rescale p_i^{-1/p}. Requires row_points and m <= rows.
SampleSet subsample_rows(const DesignMatrix& A, std::size_t m, double p,
                         std::uint64_t seed);

/// Two-round subsampled ell_p regression: solve on one subsample for x_c,
/// re-subsample against the residual b - A x_c for a correction, return
/// their sum. The row budget m is split in half between the rounds.
Eigen::VectorXd matrix_fit_relative(const DesignMatrix& A,
                                    const std::vector<double>& b, double p,
                                    std::size_t m, std::uint64_t seed);

/// Row rescale used by the minimax fit: ((d p / n) sqrt(1-t^2))^{1/p}.
double linf_rescale(int d, double p, std::size_t n, double t);

/// Minimax fit: n Chebyshev-density samples, rescales from linf_rescale
/// with p = p_override when given, otherwise max(3, ceil(ln(d+1)) + 2),
/// solved as a weighted minimax problem. Requires d >= 1 and n >= d+1.
/// est_error is the dense-grid sup-norm of the residual.
FitReport fit_linf(FunctionOracle& oracle, int d, std::size_t n,
                   std::uint64_t seed,
                   std::optional<double> p_override = std::nullopt);

}  // namespace chebfit

#endif  // CHEBFIT_ACTIVE_HPP_
