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

#include "chebfit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chebfit/errors.hpp"
#include "chebfit/rng.hpp"

namespace chebfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEdgeClamp = 1e-12;

double clamp_point(double t) {
  return std::clamp(t, -1.0 + kEdgeClamp, 1.0 - kEdgeClamp);
}

/// Inverse CDF of the normalized clipped density. The density is the flat
/// cap C(d+1)^2 on the two end segments |t| > t_mid and the Chebyshev arc
/// (d+1)/(pi sqrt(1-t^2)) in between, so the CDF inverts in closed form on
/// each piece.
double invert_clipped_cdf(const MeasureSpec& spec, double u) {
  const double dp1 = spec.degree + 1.0;
  const double cap = spec.clip_constant * dp1 * dp1;
  const double tm = mid_region_edge(spec);
  const double end_mass = cap * (1.0 - tm);
  const double mid_mass = dp1 * (2.0 / kPi) * std::asin(tm);
  const double total = 2.0 * end_mass + mid_mass;
  const double target = u * total;
  if (target <= end_mass) return -1.0 + target / cap;
  if (target >= end_mass + mid_mass) return 1.0 - (total - target) / cap;
  const double mid_target = target - end_mass;
  return std::sin(kPi / dp1 * mid_target - std::asin(tm));
}

}  // namespace

MeasureSpec MeasureSpec::uniform() { return {MeasureKind::Uniform, 0, 1.0}; }

MeasureSpec MeasureSpec::chebyshev(int degree) {
  MeasureSpec spec{MeasureKind::Chebyshev, degree, 1.0};
  spec.validate();
  return spec;
}

MeasureSpec MeasureSpec::clipped_chebyshev(int degree, double clip_constant) {
  MeasureSpec spec{MeasureKind::ClippedChebyshev, degree, clip_constant};
  spec.validate();
  return spec;
}

void MeasureSpec::validate() const {
  if (degree < 0) throw ParamError("measure degree must be nonnegative");
  if (kind == MeasureKind::ClippedChebyshev && !(clip_constant > 1.0 / kPi)) {
    throw ParamError("clip constant must exceed 1/pi, got " +
                     std::to_string(clip_constant));
  }
}

double density(const MeasureSpec& spec, double t) {
  spec.validate();
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("density requires |t| < 1, got " + std::to_string(t));
  }
  if (spec.kind == MeasureKind::Uniform) return 0.5;
  const double dp1 = spec.degree + 1.0;
  const double v = dp1 / (kPi * std::sqrt(1.0 - t * t));
  if (spec.kind == MeasureKind::Chebyshev) return v;
  return std::min(spec.clip_constant * dp1 * dp1, v);
}

double cdf_chebyshev(double t) {
  if (!(std::abs(t) <= 1.0)) {
    throw DomainError("cdf_chebyshev requires |t| <= 1, got " + std::to_string(t));
  }
  return std::asin(t) / kPi + 0.5;
}

double mid_region_edge(const MeasureSpec& spec) {
  spec.validate();
  if (spec.kind != MeasureKind::ClippedChebyshev) {
    throw ParamError("mid_region_edge requires a ClippedChebyshev measure");
  }
  const double denom = kPi * (spec.degree + 1.0) * spec.clip_constant;
  return std::sqrt(1.0 - 1.0 / (denom * denom));
}

SampleSet sample(const MeasureSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw ParamError("sample size must be positive");
  Rng rng(seed);
  SampleSet set;
  set.seed = seed;
  set.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform_open();
    double t = 0.0;
    switch (spec.kind) {
      case MeasureKind::Uniform:
        t = 2.0 * u - 1.0;
        break;
      case MeasureKind::Chebyshev:
        t = std::cos(kPi * u);
        break;
      case MeasureKind::ClippedChebyshev:
        t = invert_clipped_cdf(spec, u);
        break;
    }
    set.points[i] = clamp_point(t);
  }
  set.probs.assign(n, 1.0);
  set.rescales.assign(n, 1.0);
  return set;
}

std::size_t sample_count_two_stage(std::size_t n0, std::size_t m, std::uint64_t seed) {
  if (n0 == 0 || m == 0) throw ParamError("two-stage counts must be positive");
  if (m > n0) {
    throw ParamError("two-stage scheme requires m <= n0, got m = " +
                     std::to_string(m) + ", n0 = " + std::to_string(n0));
  }
  const double c = static_cast<double>(m) / static_cast<double>(n0);
  // Acceptance mass q = (1/2) Int_{-1}^{1} min{1, c/sqrt(1-s^2)} ds. Under
  // s = cos(theta) the integrand becomes min{sin(theta), c}, which the
  // midpoint rule handles without endpoint singularities.
  const int quad_n = 20000;
  double acc = 0.0;
  for (int k = 1; k <= quad_n; ++k) {
    const double theta = (2.0 * k - 1.0) * kPi / (2.0 * quad_n);
    acc += std::min(std::sin(theta), c);
  }
  const double q = std::min(1.0, 0.5 * acc * (kPi / quad_n));

  Rng rng(seed);
  std::size_t kept = 0;
  for (std::size_t i = 0; i < n0; ++i) {
    if (rng.bernoulli(q)) ++kept;
  }
  return kept;
}

}  // namespace chebfit
