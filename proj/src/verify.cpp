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

#include "chebfit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "chebfit/active.hpp"
#include "chebfit/basis.hpp"
#include "chebfit/design.hpp"
#include "chebfit/errors.hpp"
#include "chebfit/lpsolve.hpp"
#include "chebfit/measures.hpp"
#include "chebfit/rng.hpp"
#include "chebfit/weights.hpp"

namespace chebfit {
namespace {

constexpr double kPi = std::numbers::pi;

double cube_log(int d) {
  if (d < 2) {
    return 0.0;
  }
  const double l = std::log(static_cast<double>(d));
  return l * l * l;
}

// Nodes and weights of the order-point Gauss-Legendre rule on [-1, 1],
// by Newton iteration from the Chebyshev-angle initial guess.
void gauss_legendre(int order, std::vector<double>* nodes,
                    std::vector<double>* wts) {
  nodes->assign(static_cast<std::size_t>(order), 0.0);
  wts->assign(static_cast<std::size_t>(order), 0.0);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) {
        break;
      }
    }
    (*nodes)[static_cast<std::size_t>(i)] = x;
    (*wts)[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

// integral over [lo, hi] of |q(t) - shift|^p dt by a mapped 64-point
// Gauss-Legendre rule.
double piece_error_integral(const PolyCoeffs& poly, double shift, double p,
                            double lo, double hi,
                            const std::vector<double>& nodes,
                            const std::vector<double>& wts) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double t = mid + half * nodes[i];
    const double r = std::abs(eval_poly(poly, t) - shift);
    acc += wts[i] * std::pow(r, p);
  }
  return acc * half;
}

// min over c of |amp - c|^p w + c^p (2 - w), the best constant
// approximation of the hidden indicator, by golden-section search on
// [0, amp]. The objective is convex for p >= 1.
double constant_witness(double amp, double width, double p) {
  const auto objective = [&](double c) {
    return std::pow(std::abs(amp - c), p) * width +
           std::pow(std::abs(c), p) * (2.0 - width);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = amp;
  double c1 = hi - inv_phi * (hi - lo);
  double c2 = lo + inv_phi * (hi - lo);
  double f1 = objective(c1);
  double f2 = objective(c2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * amp; ++it) {
    if (f1 < f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - inv_phi * (hi - lo);
      f1 = objective(c1);
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + inv_phi * (hi - lo);
      f2 = objective(c2);
    }
  }
  return objective(0.5 * (lo + hi));
}

// Unweighted least-squares fit of (points, values) at degree d in the
// Chebyshev T basis.
PolyCoeffs plain_ls_fit(const std::vector<double>& points,
                        const std::vector<double>& values, int d) {
  RegressionProblem problem;
  problem.A = design_from_points(points, d, BasisKind::chebyshev_t());
  problem.b = values;
  problem.row_weights.assign(points.size(), 1.0);
  problem.p = 2.0;
  SolveResult result = solve(problem, SolveOptions{});
  PolyCoeffs poly;
  poly.degree = d;
  poly.basis = BasisKind::chebyshev_t();
  poly.coeffs.assign(result.x.data(), result.x.data() + result.x.size());
  return poly;
}

double dense_sup_error(const PolyCoeffs& poly, const FunctionOracle& oracle) {
  constexpr int kGrid = 20000;
  double worst = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double t = -1.0 + 2.0 * i / kGrid;
    worst = std::max(worst, std::abs(eval_poly(poly, t) - oracle.peek(t)));
  }
  return worst;
}

}  // namespace

std::vector<double> standard_grid(int grid_size) {
  if (grid_size < 2) {
    throw ParamError("standard_grid: grid_size must be at least 2");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_size) + 14);
  for (int j = grid_size - 1; j >= 0; --j) {
    const double theta = kPi * (j + 0.5) / grid_size;
    grid.push_back(std::cos(theta));
  }
  for (int k = 2; k <= 8; ++k) {
    const double t = 1.0 - std::pow(10.0, -k);
    grid.push_back(t);
    grid.push_back(-t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<RatioReport> verify_ratio_bounds(const std::vector<int>& d_list,
                                             const std::vector<double>& p_list,
                                             int grid_size,
                                             double clip_constant) {
  if (d_list.empty() || p_list.empty()) {
    throw ParamError("verify_ratio_bounds: d_list and p_list must be nonempty");
  }
  const std::vector<double> grid = standard_grid(grid_size);
  std::vector<RatioReport> reports;
  reports.reserve(d_list.size() * p_list.size());
  for (int d : d_list) {
    for (double p : p_list) {
      MeasureSpec measure = MeasureSpec::clipped_chebyshev(d, clip_constant);
      ReweightedGram gram(d, p, measure);
      const double t_mid = mid_region_edge(measure);
      // Inner part of the mid region where 1/sqrt(1-t^2) stays below
      // 1 + 2(d+1)(1 - 1/gamma); there the ratio bracket [1/gamma, gamma]
      // follows directly from the bound |U_k| <= 1/sqrt(1-t^2).
      const double gamma = 1.25 + kPi * clip_constant / 2.0;
      const double core_cap = 1.0 + 2.0 * (d + 1) * (1.0 - 1.0 / gamma);

      RatioReport report;
      report.d = d;
      report.p = p;
      report.clip_constant = clip_constant;
      report.grid = grid;
      report.ratios.reserve(grid.size());
      report.max_ratio = -std::numeric_limits<double>::infinity();
      report.min_ratio = std::numeric_limits<double>::infinity();
      report.mid_min_ratio = std::numeric_limits<double>::infinity();
      report.mid_max_ratio = -std::numeric_limits<double>::infinity();
      report.core_min_ratio = std::numeric_limits<double>::infinity();
      report.core_max_ratio = -std::numeric_limits<double>::infinity();
      for (double t : grid) {
        const double ratio = gram.leverage(t) / density(measure, t);
        report.ratios.push_back(ratio);
        report.max_ratio = std::max(report.max_ratio, ratio);
        report.min_ratio = std::min(report.min_ratio, ratio);
        if (std::abs(t) <= t_mid) {
          report.mid_min_ratio = std::min(report.mid_min_ratio, ratio);
          report.mid_max_ratio = std::max(report.mid_max_ratio, ratio);
          if (1.0 / std::sqrt(1.0 - t * t) <= core_cap) {
            report.core_min_ratio = std::min(report.core_min_ratio, ratio);
            report.core_max_ratio = std::max(report.core_max_ratio, ratio);
          }
        }
      }
      report.min_ratio_times_log3d = report.min_ratio * cube_log(d);
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

DecayReport verify_unclipped_endcap_decay(int d, double p) {
  DecayReport report;
  report.d = d;
  report.p = p;
  MeasureSpec measure = MeasureSpec::chebyshev(d);
  for (int k = 2; k <= 8; ++k) {
    const double t = 1.0 - std::pow(10.0, -k);
    report.ts.push_back(t);
    report.ratios.push_back(operator_reweighted_leverage(t, d, p, measure) /
                            density(measure, t));
  }
  report.strictly_decreasing = true;
  for (std::size_t i = 1; i < report.ratios.size(); ++i) {
    if (!(report.ratios[i] < report.ratios[i - 1])) {
      report.strictly_decreasing = false;
      break;
    }
  }
  return report;
}

AdversaryReport adversary_lower_bound(double p, double eps,
                                      std::size_t n_queries, int trials,
                                      std::uint64_t seed,
                                      std::optional<std::size_t> n_fit_override) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ParamError("adversary_lower_bound: p must be finite and >= 1");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw ParamError("adversary_lower_bound: eps must lie in (0, 1)");
  }
  if (n_queries == 0) {
    throw ParamError("adversary_lower_bound: n_queries must be positive");
  }
  if (trials < 1) {
    throw ParamError("adversary_lower_bound: trials must be positive");
  }
  constexpr int kFitDegree = 2;
  constexpr std::uint64_t kTrialSeedStride = 104729;

  AdversaryReport report;
  report.p = p;
  report.eps = eps;
  report.n_queries = n_queries;
  report.n_fit = n_fit_override.value_or(n_queries);
  report.trials = trials;
  report.seed = seed;
  report.interval_width = 1.0 / (4.0 * static_cast<double>(n_queries));
  const double half_width = 0.5 * report.interval_width;
  report.interval_mass =
      cdf_chebyshev(half_width) - cdf_chebyshev(-half_width);
  report.amplitude = std::pow(2.0, 1.0 / p) / eps;
  const double hidden_norm_p =
      std::pow(report.amplitude, p) * report.interval_width;
  const double c_factor = std::pow(2.0, -1.0 / p) - 0.5;
  report.failure_threshold = 1.0 - (c_factor * eps) * (c_factor * eps);
  report.witness_ratio =
      constant_witness(report.amplitude, report.interval_width, p) /
      hidden_norm_p;
  report.criterion_sound = report.witness_ratio <= report.failure_threshold;

  std::vector<double> gl_nodes;
  std::vector<double> gl_wts;
  gauss_legendre(64, &gl_nodes, &gl_wts);

  report.trial_missed.reserve(static_cast<std::size_t>(trials));
  report.trial_failed.reserve(static_cast<std::size_t>(trials));
  report.trial_error_ratio.reserve(static_cast<std::size_t>(trials));
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed + kTrialSeedStride *
        static_cast<std::uint64_t>(trial);
    Rng sign_rng(trial_seed);
    const double sign = sign_rng.bernoulli(0.5) ? 1.0 : -1.0;
    FunctionOracle oracle = FunctionOracle::spike(
        0.0, report.interval_width, sign * report.amplitude);
    FitReport fit = fit_relative_error(oracle, kFitDegree, p, report.n_fit,
                                       trial_seed + 1);

    bool missed = true;
    for (double t : fit.samples.points) {
      if (std::abs(t) <= half_width) {
        missed = false;
        break;
      }
    }
    const double err_p =
        piece_error_integral(fit.poly, 0.0, p, -1.0, -half_width, gl_nodes,
                             gl_wts) +
        piece_error_integral(fit.poly, sign * report.amplitude, p, -half_width,
                             half_width, gl_nodes, gl_wts) +
        piece_error_integral(fit.poly, 0.0, p, half_width, 1.0, gl_nodes,
                             gl_wts);
    const double error_ratio = err_p / hidden_norm_p;
    const bool failed = error_ratio >= report.failure_threshold;

    report.trial_missed.push_back(missed);
    report.trial_failed.push_back(failed);
    report.trial_error_ratio.push_back(error_ratio);
    report.miss_count += missed ? 1 : 0;
    report.fail_count += failed ? 1 : 0;
    report.fail_among_miss += (missed && failed) ? 1 : 0;
  }
  report.miss_fraction =
      static_cast<double>(report.miss_count) / static_cast<double>(trials);
  report.fail_rate_among_missed =
      report.miss_count > 0 ? static_cast<double>(report.fail_among_miss) /
                                  static_cast<double>(report.miss_count)
                            : 0.0;
  report.overall_fail_rate =
      static_cast<double>(report.fail_count) / static_cast<double>(trials);
  return report;
}

RungeReport runge_comparison(int d, std::size_t n, std::uint64_t seed) {
  if (d < 1) {
    throw ParamError("runge_comparison: degree must be at least 1");
  }
  if (n < static_cast<std::size_t>(d) + 1) {
    throw ParamError("runge_comparison: need at least d+1 samples");
  }
  FunctionOracle oracle = FunctionOracle::builtin("runge");

  RungeReport report;
  report.d = d;
  report.n = n;
  report.seed = seed;
  report.interpolation_regime = (n == static_cast<std::size_t>(d) + 1);
  if (report.interpolation_regime) {
    std::vector<double> equi(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) {
      equi[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / d;
    }
    std::vector<double> cheb = chebyshev_nodes(static_cast<std::size_t>(d) + 1);
    auto values_at = [&](const std::vector<double>& pts) {
      std::vector<double> vals(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        vals[i] = oracle.peek(pts[i]);
      }
      return vals;
    };
    report.uniform_error =
        dense_sup_error(plain_ls_fit(equi, values_at(equi), d), oracle);
    report.chebyshev_error =
        dense_sup_error(plain_ls_fit(cheb, values_at(cheb), d), oracle);
  } else {
    MeasureSpec uniform = MeasureSpec::uniform();
    SampleSet draws = sample(uniform, n, seed);
    std::vector<double> vals(draws.points.size());
    for (std::size_t i = 0; i < draws.points.size(); ++i) {
      vals[i] = oracle.peek(draws.points[i]);
    }
    report.uniform_error =
        dense_sup_error(plain_ls_fit(draws.points, vals, d), oracle);
    FitReport fit = fit_constant_factor(oracle, d, 2.0, n, seed);
    report.chebyshev_error = dense_sup_error(fit.poly, oracle);
  }
  report.ratio = report.uniform_error / report.chebyshev_error;
  return report;
}

SensitivityReport verify_sensitivity_bounds(int d, double p, int grid_size) {
  if (d < 1) {
    throw ParamError("verify_sensitivity_bounds: degree must be at least 1");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ParamError("verify_sensitivity_bounds: p must be finite and >= 1");
  }
  if (grid_size < 2) {
    throw ParamError("verify_sensitivity_bounds: grid_size must be at least 2");
  }
  const int quad_nodes = std::max(512, 32 * (d + 1));

  SensitivityReport report;
  report.d = d;
  report.p = p;
  report.grid_size = grid_size;
  report.global_bound = static_cast<double>(d) * d * (p + 1.0);
  report.min_psi = std::numeric_limits<double>::infinity();
  double max_psi = 0.0;
  double kappa = 0.0;
  const double interior = 1.0 - 1.0 / d;
  // The log factor in the interior envelope, floored at 1 so the fitted
  // constant stays finite when d * p is close to 1.
  const double log_dp = std::max(std::log(d * p), 1.0);
  for (int j = grid_size - 1; j >= 0; --j) {
    const double theta = kPi * (j + 0.5) / grid_size;
    const double t = std::cos(theta);
    const double psi = operator_sensitivity(t, d, p, quad_nodes);
    report.grid.push_back(t);
    report.psi.push_back(psi);
    max_psi = std::max(max_psi, psi);
    report.min_psi = std::min(report.min_psi, psi);
    if (std::abs(t) <= interior) {
      kappa = std::max(kappa, psi * std::sqrt(1.0 - t * t) /
                                  (d * p * log_dp));
    }
  }
  report.max_over_bound = max_psi / report.global_bound;
  report.kappa = kappa;
  // Five percent slack absorbs the quadrature discretization of the
  // continuous minimization underlying each sensitivity value.
  report.all_within_global = max_psi <= 1.05 * report.global_bound;
  return report;
}

}  // namespace chebfit
