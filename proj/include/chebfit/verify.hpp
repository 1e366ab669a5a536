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

#ifndef CHEBFIT_VERIFY_HPP_
#define CHEBFIT_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace chebfit {

/// Pointwise ratio of the clipped-measure reweighted leverage function to
/// the clipped density, over a grid that covers both the mid region and
/// the endcaps. The `core_*` extremes restrict to the inner part of the
/// mid region where the closed-form U-bound argument pins the ratio
/// bracket; `mid_*` cover the whole mid region and are reported as
/// measured values.
struct RatioReport {
  int d = 0;
  double p = 2.0;
  double clip_constant = 1.0;
  std::vector<double> grid;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  double min_ratio_times_log3d = 0.0;
  double mid_min_ratio = 0.0;
  double mid_max_ratio = 0.0;
  double core_min_ratio = 0.0;
  double core_max_ratio = 0.0;
};

/// The standard evaluation grid: grid_size points uniform in
/// theta = arccos t (midpoints, so the open interval) plus the fixed
/// endpoint approach points +-(1 - 10^-k) for k = 2..8, sorted ascending.
std::vector<double> standard_grid(int grid_size);

/// One report per (d, p) pair, evaluated on standard_grid(grid_size).
std::vector<RatioReport> verify_ratio_bounds(const std::vector<int>& d_list,
                                             const std::vector<double>& p_list,
                                             int grid_size, double clip_constant);

/// Ratio of the unclipped reweighted leverage function to the scaled
/// Chebyshev density at t = 1 - 10^-k, k = 2..8.
struct DecayReport {
  int d = 0;
  double p = 1.0;
  std::vector<double> ts;
  std::vector<double> ratios;
  bool strictly_decreasing = false;
};

DecayReport verify_unclipped_endcap_decay(int d, double p);

/// Outcome of the query-lower-bound experiment. Each trial hides a signed
/// indicator of width 1/(4 n_queries) centered where the Chebyshev sampler
/// places the least mass (t = 0), with amplitude 2^{1/p}/eps, fits it at
/// degree 2 with the two-stage pipeline, and scores the fit against the
/// hidden truth. A trial "fails" when the fitted error p-th power is at
/// least (1 - (C eps)^2) times ||f||_p^p with C = 2^{-1/p} - 1/2; the
/// report also carries the constant-polynomial witness ratio showing that
/// a better fit exists, so failing trials genuinely miss the achievable
/// error. `n_fit_override` decouples the number of fitting queries from
/// the interval geometry for contrast experiments.
struct AdversaryReport {
  double p = 2.0;
  double eps = 0.1;
  std::size_t n_queries = 0;
  std::size_t n_fit = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double interval_width = 0.0;
  double interval_mass = 0.0;
  double amplitude = 0.0;
  double failure_threshold = 0.0;
  double witness_ratio = 0.0;
  bool criterion_sound = false;
  int miss_count = 0;
  int fail_count = 0;
  int fail_among_miss = 0;
  double miss_fraction = 0.0;
  double fail_rate_among_missed = 0.0;
  double overall_fail_rate = 0.0;
  std::vector<bool> trial_missed;
  std::vector<bool> trial_failed;
  std::vector<double> trial_error_ratio;
};

AdversaryReport adversary_lower_bound(
    double p, double eps, std::size_t n_queries, int trials, std::uint64_t seed,
    std::optional<std::size_t> n_fit_override = std::nullopt);

/// Dense-grid sup-norm errors of degree-d least-squares fits of the Runge
/// function from uniform draws vs Chebyshev-density draws. With n = d+1
/// the comparison uses the classical deterministic node sets (equispaced
/// with endpoints vs Chebyshev nodes) instead of random draws.
struct RungeReport {
  int d = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool interpolation_regime = false;
  double uniform_error = 0.0;
  double chebyshev_error = 0.0;
  double ratio = 0.0;
};

RungeReport runge_comparison(int d, std::size_t n, std::uint64_t seed);

/// Grid sweep of the operator sensitivity: global-bound check against
/// d^2 (p+1) and the fitted interior constant kappa in
/// psi <= kappa d p log(dp) / sqrt(1-t^2) over |t| <= 1 - 1/d.
struct SensitivityReport {
  int d = 0;
  double p = 1.0;
  int grid_size = 0;
  std::vector<double> grid;
  std::vector<double> psi;
  double global_bound = 0.0;
  double max_over_bound = 0.0;
  double min_psi = 0.0;
  double kappa = 0.0;
  bool all_within_global = false;
};

SensitivityReport verify_sensitivity_bounds(int d, double p, int grid_size);

}  // namespace chebfit

#endif  // CHEBFIT_VERIFY_HPP_
