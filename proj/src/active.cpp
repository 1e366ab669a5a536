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

#include "chebfit/active.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "chebfit/errors.hpp"
#include "chebfit/rng.hpp"

namespace chebfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Seed offset between the two stages of relative-error fitting, so the
/// stages draw independent-looking streams from one user seed.
constexpr std::uint64_t kStageSeedOffset = 7919;

enum class OracleKind { Abs, Runge, Exp, Step, Spike, Poly, Tabulated, Residual };

}  // namespace

struct FunctionOracle::Impl {
  OracleKind kind = OracleKind::Abs;
  long count = 0;

  // Spike parameters.
  double center = 0.0;
  double width = 0.0;
  double amplitude = 0.0;

  // Poly / Residual payloads.
  PolyCoeffs coeffs;
  std::shared_ptr<Impl> base;

  // Tabulated payload.
  std::vector<double> xs;
  std::vector<double> ys;

  double eval(double t) const {
    switch (kind) {
      case OracleKind::Abs:
        return std::abs(t);
      case OracleKind::Runge:
        return 1.0 / (1.0 + 25.0 * t * t);
      case OracleKind::Exp:
        return std::exp(t);
      case OracleKind::Step:
        return t < 0.0 ? 0.0 : 1.0;
      case OracleKind::Spike:
        return std::abs(t - center) <= 0.5 * width ? amplitude : 0.0;
      case OracleKind::Poly:
        return eval_poly(coeffs, t);
      case OracleKind::Tabulated: {
        const auto it = std::upper_bound(xs.begin(), xs.end(), t);
        if (it == xs.begin()) return ys.front();
        if (it == xs.end()) return ys.back();
        const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
        const std::size_t lo = hi - 1;
        const double frac = (t - xs[lo]) / (xs[hi] - xs[lo]);
        return ys[lo] + frac * (ys[hi] - ys[lo]);
      }
      case OracleKind::Residual:
        return base->eval(t) - eval_poly(coeffs, t);
    }
    return 0.0;
  }

  void count_query() {
    ++count;
    if (kind == OracleKind::Residual) base->count_query();
  }
};

FunctionOracle FunctionOracle::builtin(const std::string& name) {
  FunctionOracle oracle;
  oracle.impl_ = std::make_shared<Impl>();
  if (name == "abs") {
    oracle.impl_->kind = OracleKind::Abs;
  } else if (name == "runge") {
    oracle.impl_->kind = OracleKind::Runge;
  } else if (name == "exp") {
    oracle.impl_->kind = OracleKind::Exp;
  } else if (name == "step") {
    oracle.impl_->kind = OracleKind::Step;
  } else {
    throw ParamError("unknown builtin oracle: " + name);
  }
  return oracle;
}

FunctionOracle FunctionOracle::spike(double center, double width, double amplitude) {
  if (!(width > 0.0)) throw ParamError("spike width must be positive");
  if (amplitude == 0.0 || !std::isfinite(amplitude)) {
    throw ParamError("spike amplitude must be nonzero and finite");
  }
  FunctionOracle oracle;
  oracle.impl_ = std::make_shared<Impl>();
  oracle.impl_->kind = OracleKind::Spike;
  oracle.impl_->center = center;
  oracle.impl_->width = width;
  oracle.impl_->amplitude = amplitude;
  return oracle;
}

FunctionOracle FunctionOracle::poly(const PolyCoeffs& coeffs) {
  coeffs.validate();
  FunctionOracle oracle;
  oracle.impl_ = std::make_shared<Impl>();
  oracle.impl_->kind = OracleKind::Poly;
  oracle.impl_->coeffs = coeffs;
  return oracle;
}

FunctionOracle FunctionOracle::tabulated(std::vector<double> points,
                                         std::vector<double> values) {
  if (points.size() < 2 || points.size() != values.size()) {
    throw ParamError("tabulated oracle needs at least two (point, value) pairs");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw ParamError("tabulated points must be strictly increasing");
    }
  }
  if (!(points.front() <= -1.0 && points.back() >= 1.0)) {
    throw ParamError("tabulated points must cover [-1, 1]");
  }
  for (double y : values) {
    if (!std::isfinite(y)) throw ParamError("tabulated values must be finite");
  }
  FunctionOracle oracle;
  oracle.impl_ = std::make_shared<Impl>();
  oracle.impl_->kind = OracleKind::Tabulated;
  oracle.impl_->xs = std::move(points);
  oracle.impl_->ys = std::move(values);
  return oracle;
}

FunctionOracle FunctionOracle::residual(const FunctionOracle& base,
                                        const PolyCoeffs& subtract) {
  if (!base.impl_) throw ParamError("residual oracle requires a base oracle");
  subtract.validate();
  FunctionOracle oracle;
  oracle.impl_ = std::make_shared<Impl>();
  oracle.impl_->kind = OracleKind::Residual;
  oracle.impl_->base = base.impl_;
  oracle.impl_->coeffs = subtract;
  return oracle;
}

double FunctionOracle::query(double t) {
  impl_->count_query();
  return impl_->eval(t);
}

double FunctionOracle::peek(double t) const { return impl_->eval(t); }

long FunctionOracle::query_count() const { return impl_->count; }

double residual_pnorm(const FunctionOracle& oracle, const PolyCoeffs& poly,
                      double p, int quad_nodes) {
  poly.validate();
  if (quad_nodes < 2) throw ParamError("error quadrature needs at least 2 nodes");
  if (std::isinf(p)) {
    double worst = 0.0;
    for (int k = 0; k <= quad_nodes; ++k) {
      const double t = -1.0 + 2.0 * k / quad_nodes;
      worst = std::max(worst, std::abs(oracle.peek(t) - eval_poly(poly, t)));
    }
    return worst;
  }
  if (!(p > 0.0)) throw ParamError("error norm requires p > 0");
  double acc = 0.0;
  for (int k = 1; k <= quad_nodes; ++k) {
    const double theta = (2.0 * k - 1.0) * kPi / (2.0 * quad_nodes);
    const double t = std::cos(theta);
    const double r = std::abs(oracle.peek(t) - eval_poly(poly, t));
    acc += std::pow(r, p) * std::sin(theta);
  }
  return std::pow(acc * kPi / quad_nodes, 1.0 / p);
}

namespace {

/// Converts a Chebyshev-T solution into the report's polynomial pair.
void fill_report_polys(FitReport& report, const Eigen::VectorXd& x, int d) {
  report.poly.degree = d;
  report.poly.basis = BasisKind::chebyshev_t();
  report.poly.coeffs.assign(x.data(), x.data() + x.size());
  report.has_monomial = false;
  if (d <= 64) {
    try {
      report.poly_monomial = convert_basis(report.poly, BasisKind::monomial());
      report.has_monomial = true;
    } catch (const ConditioningError&) {
      report.has_monomial = false;
    }
  }
}

FitReport fit_constant_factor_once(FunctionOracle& oracle, int d, double p,
                                   std::size_t n, std::uint64_t seed) {
  SampleSet samples = sample(MeasureSpec::chebyshev(d), n, seed);
  samples.values.resize(n);
  const long before = oracle.query_count();
  for (std::size_t i = 0; i < n; ++i) {
    samples.values[i] = oracle.query(samples.points[i]);
  }

  RegressionProblem problem;
  problem.A = design_from_points(samples.points, d, BasisKind::chebyshev_t());
  problem.b = samples.values;
  problem.row_weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = samples.points[i];
    problem.row_weights[i] = std::pow(std::sqrt(1.0 - t * t), 1.0 / p);
    samples.rescales[i] = problem.row_weights[i];
  }
  problem.p = p;
  const SolveResult result = solve(problem);

  FitReport report;
  fill_report_polys(report, result.x, d);
  report.stage_results.push_back(result);
  report.n_queries = oracle.query_count() - before;
  report.p = p;
  report.seed = seed;
  report.samples = std::move(samples);
  report.est_error = residual_pnorm(oracle, report.poly, p);
  report.error_quad_nodes = 8192;
  return report;
}

}  // namespace

FitReport fit_constant_factor(FunctionOracle& oracle, int d, double p,
                              std::size_t n, std::uint64_t seed) {
  if (d < 0) throw ParamError("degree must be nonnegative");
  if (!(p >= 1.0) || std::isinf(p)) {
    throw ParamError("constant-factor fit requires finite p >= 1");
  }
  if (n < static_cast<std::size_t>(d) + 1) {
    throw ParamError("constant-factor fit requires n >= d+1");
  }
  try {
    return fit_constant_factor_once(oracle, d, p, n, seed);
  } catch (const RankError&) {
    // One automatic resample; a second rank failure propagates.
    return fit_constant_factor_once(oracle, d, p, n, seed + 1);
  }
}

FitReport fit_relative_error(FunctionOracle& oracle, int d, double p,
                             std::size_t n, std::uint64_t seed) {
  if (d < 0) throw ParamError("degree must be nonnegative");
  if (n < 2 * (static_cast<std::size_t>(d) + 1)) {
    throw ParamError("relative-error fit requires n >= 2(d+1)");
  }
  const long before = oracle.query_count();
  const std::size_t n1 = n / 2;
  const std::size_t n2 = n - n1;

  const FitReport stage1 = fit_constant_factor(oracle, d, p, n1, seed);
  FunctionOracle stage2_oracle = FunctionOracle::residual(oracle, stage1.poly);
  const FitReport stage2 =
      fit_constant_factor(stage2_oracle, d, p, n2, seed + kStageSeedOffset);

  FitReport report;
  Eigen::VectorXd combined(d + 1);
  for (int k = 0; k <= d; ++k) {
    combined[k] = stage1.poly.coeffs[static_cast<std::size_t>(k)] +
                  stage2.poly.coeffs[static_cast<std::size_t>(k)];
  }
  fill_report_polys(report, combined, d);
  report.stage_results = stage1.stage_results;
  report.stage_results.insert(report.stage_results.end(),
                              stage2.stage_results.begin(),
                              stage2.stage_results.end());
  report.n_queries = oracle.query_count() - before;
  report.p = p;
  report.seed = seed;
  report.samples = stage1.samples;
  report.samples.points.insert(report.samples.points.end(),
                               stage2.samples.points.begin(),
                               stage2.samples.points.end());
  report.samples.values.insert(report.samples.values.end(),
                               stage2.samples.values.begin(),
                               stage2.samples.values.end());
  report.samples.probs.insert(report.samples.probs.end(),
                              stage2.samples.probs.begin(),
                              stage2.samples.probs.end());
  report.samples.rescales.insert(report.samples.rescales.end(),
                                 stage2.samples.rescales.begin(),
                                 stage2.samples.rescales.end());
  report.est_error = residual_pnorm(oracle, report.poly, p);
  report.error_quad_nodes = 8192;
  return report;
}

SampleSet subsample_rows(const DesignMatrix& A, std::size_t m, double p,
                         std::uint64_t seed) {
  A.validate();
  if (A.row_points.empty()) {
    throw ParamError("row subsampling requires row_points");
  }
  if (m == 0) throw ParamError("row budget must be positive");
  if (m > static_cast<std::size_t>(A.rows())) {
    throw ParamError("row budget exceeds the row count");
  }
  if (!(p > 0.0) || std::isinf(p)) throw ParamError("subsampling requires finite p > 0");

  const std::size_t n0 = static_cast<std::size_t>(A.rows());
  const double base = static_cast<double>(m) / static_cast<double>(n0);
  Rng rng(seed);
  SampleSet kept;
  kept.seed = seed;
  for (std::size_t i = 0; i < n0; ++i) {
    const double s = A.row_points[i];
    const double denom2 = 1.0 - s * s;
    const double pi = denom2 > 0.0 ? std::min(1.0, base / std::sqrt(denom2)) : 1.0;
    if (!rng.bernoulli(pi)) continue;
    kept.indices.push_back(i);
    kept.points.push_back(s);
    kept.probs.push_back(pi);
    kept.rescales.push_back(std::pow(pi, -1.0 / p));
  }
  return kept;
}

namespace {

Eigen::VectorXd solve_on_subsample(const DesignMatrix& A,
                                   const std::vector<double>& rhs, double p,
                                   std::size_t m, std::uint64_t seed) {
  const SampleSet kept = subsample_rows(A, m, p, seed);
  if (kept.indices.size() < static_cast<std::size_t>(A.cols())) {
    throw RankError("subsample kept fewer rows than columns",
                    static_cast<long>(kept.indices.size()));
  }
  RegressionProblem problem;
  problem.A.entries.resize(static_cast<Eigen::Index>(kept.indices.size()), A.cols());
  problem.A.basis = A.basis;
  problem.b.resize(kept.indices.size());
  problem.row_weights = kept.rescales;
  for (std::size_t j = 0; j < kept.indices.size(); ++j) {
    problem.A.entries.row(static_cast<Eigen::Index>(j)) =
        A.entries.row(static_cast<Eigen::Index>(kept.indices[j]));
    problem.b[j] = rhs[kept.indices[j]];
    problem.A.row_points.push_back(kept.points[j]);
  }
  problem.p = p;
  return solve(problem).x;
}

Eigen::VectorXd solve_on_subsample_with_retry(const DesignMatrix& A,
                                              const std::vector<double>& rhs,
                                              double p, std::size_t m,
                                              std::uint64_t seed) {
  try {
    return solve_on_subsample(A, rhs, p, m, seed);
  } catch (const RankError&) {
    return solve_on_subsample(A, rhs, p, m, seed + 1);
  }
}

}  // namespace

Eigen::VectorXd matrix_fit_relative(const DesignMatrix& A,
                                    const std::vector<double>& b, double p,
                                    std::size_t m, std::uint64_t seed) {
  A.validate();
  if (A.row_points.empty()) {
    throw ParamError("matrix fitting requires row_points");
  }
  if (b.size() != static_cast<std::size_t>(A.rows())) {
    throw ParamError("right-hand side length does not match the design rows");
  }
  if (!(p >= 1.0) || std::isinf(p)) throw ParamError("matrix fitting requires finite p >= 1");
  if (m < 2) throw ParamError("row budget must allow two rounds");

  const std::size_t m1 = m / 2;
  const std::size_t m2 = m - m1;
  const Eigen::VectorXd x_c = solve_on_subsample_with_retry(A, b, p, m1, seed);

  std::vector<double> z(b.size());
  const Eigen::VectorXd ax = A.entries * x_c;
  for (std::size_t i = 0; i < b.size(); ++i) {
    z[i] = b[i] - ax[static_cast<Eigen::Index>(i)];
  }
  const Eigen::VectorXd x_hat =
      solve_on_subsample_with_retry(A, z, p, m2, seed + kStageSeedOffset);
  return x_c + x_hat;
}

double linf_rescale(int d, double p, std::size_t n, double t) {
  if (d < 1) throw ParamError("minimax rescale requires degree >= 1");
  if (!(p > 0.0)) throw ParamError("minimax rescale requires p > 0");
  if (n == 0) throw ParamError("sample count must be positive");
  if (!(std::abs(t) <= 1.0)) throw DomainError("minimax rescale requires |t| <= 1");
  const double inner =
      (static_cast<double>(d) * p / static_cast<double>(n)) * std::sqrt(1.0 - t * t);
  return std::pow(inner, 1.0 / p);
}

FitReport fit_linf(FunctionOracle& oracle, int d, std::size_t n,
                   std::uint64_t seed, std::optional<double> p_override) {
  if (d < 1) {
    throw ParamError("minimax fit requires degree >= 1 (the row rescale is "
                     "identically zero at degree 0)");
  }
  if (n < static_cast<std::size_t>(d) + 1) {
    throw ParamError("minimax fit requires n >= d+1");
  }
  const double p =
      p_override ? *p_override
                 : std::max(3.0, std::ceil(std::log(static_cast<double>(d) + 1.0)) + 2.0);
  if (!(p > 0.0) || std::isinf(p)) throw ParamError("weighting exponent must be finite and positive");

  SampleSet samples = sample(MeasureSpec::chebyshev(d), n, seed);
  samples.values.resize(n);
  const long before = oracle.query_count();
  for (std::size_t i = 0; i < n; ++i) {
    samples.values[i] = oracle.query(samples.points[i]);
  }
  std::vector<double> rescales(n);
  for (std::size_t i = 0; i < n; ++i) {
    rescales[i] = linf_rescale(d, p, n, samples.points[i]);
    samples.rescales[i] = rescales[i];
  }

  const DesignMatrix design =
      design_from_points(samples.points, d, BasisKind::chebyshev_t());
  // Lawson converges linearly; the window-stabilization rule at 1e-6 gives
  // objectives within ~1e-5 relative of the discrete optimum, far inside
  // the guarantee's constant factors.
  SolveOptions opts;
  opts.tol = 1e-6;
  opts.max_iter = 20000;
  const SolveResult result = solve_linf(design, samples.values, rescales, opts);

  FitReport report;
  fill_report_polys(report, result.x, d);
  report.stage_results.push_back(result);
  report.n_queries = oracle.query_count() - before;
  report.p = std::numeric_limits<double>::infinity();
  report.seed = seed;
  report.samples = std::move(samples);
  report.est_error = residual_pnorm(
      oracle, report.poly, std::numeric_limits<double>::infinity(), 20000);
  report.error_quad_nodes = 20000;
  return report;
}

}  // namespace chebfit
