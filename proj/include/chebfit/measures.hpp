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

#ifndef CHEBFIT_MEASURES_HPP_
#define CHEBFIT_MEASURES_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chebfit {

enum class MeasureKind { Uniform, Chebyshev, ClippedChebyshev };

/// A sampling measure on (-1, 1). Chebyshev carries the degree-scaled
/// density (d+1)/(pi sqrt(1-t^2)); ClippedChebyshev caps it at C(d+1)^2.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::Chebyshev;
  int degree = 0;
  double clip_constant = 1.0;

  static MeasureSpec uniform();
  static MeasureSpec chebyshev(int degree);
  static MeasureSpec clipped_chebyshev(int degree, double clip_constant);

  /// Throws ParamError on negative degree or, for ClippedChebyshev, a clip
  /// constant at or below 1/pi (the cap would fall under the density's
  /// minimum and the mid region would vanish).
  void validate() const;
};

/// A batch of sample points with their bookkeeping. `values` stays empty
/// until an oracle is queried at the points; `probs` and `rescales` hold
/// the placeholder 1 until a sampling scheme assigns them. `indices` is
/// used only by matrix-row subsampling, where it records source rows.
struct SampleSet {
  std::vector<double> points;
  std::vector<double> values;
  std::vector<double> probs;
  std::vector<double> rescales;
  std::vector<std::size_t> indices;
  std::uint64_t seed = 0;
};

/// Density of the measure at t. Uniform is 1/2; Chebyshev is
/// (d+1)/(pi sqrt(1-t^2)); ClippedChebyshev is the pointwise minimum of the
/// Chebyshev density and C(d+1)^2. Throws DomainError when |t| >= 1.
double density(const MeasureSpec& spec, double t);

/// CDF of the unit Chebyshev density: (1/pi) asin(t) + 1/2 on [-1, 1].
double cdf_chebyshev(double t);

/// Largest |t| at which the clipped density still equals the unclipped one:
/// sqrt(1 - 1/(pi^2 (d+1)^2 C^2)). Requires a ClippedChebyshev spec.
double mid_region_edge(const MeasureSpec& spec);

/// Draws n independent points from the measure (normalized to a
/// probability distribution). Chebyshev uses the inverse transform
/// t = cos(pi u); ClippedChebyshev inverts its piecewise closed-form CDF.
/// Points are clamped to |t| <= 1 - 1e-12. probs/rescales are set to 1.
SampleSet sample(const MeasureSpec& spec, std::size_t n, std::uint64_t seed);

/// Number of survivors of the two-stage scheme: each of n0 uniform draws
/// s_i is kept with probability min{1, (m/n0)/sqrt(1-s_i^2)}, so the count
/// is Binomial(n0, q) with q the acceptance mass. q is evaluated once by
/// quadrature in the substituted variable s = cos(theta). Requires m <= n0.
std::size_t sample_count_two_stage(std::size_t n0, std::size_t m, std::uint64_t seed);

}  // namespace chebfit

#endif  // CHEBFIT_MEASURES_HPP_
