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

#include "chebfit/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "chebfit/errors.hpp"

namespace chebfit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_index(int i) {
  if (i < 0) throw DomainError("polynomial index must be nonnegative, got " + std::to_string(i));
}

void require_closed_interval(double t) {
  if (!(std::abs(t) <= 1.0)) {
    throw DomainError("evaluation point must satisfy |t| <= 1, got " + std::to_string(t));
  }
}

void require_open_interval(double t) {
  if (!(std::abs(t) < 1.0)) {
    throw DomainError("evaluation point must satisfy |t| < 1, got " + std::to_string(t));
  }
}

void require_alpha(double alpha) {
  if (!(alpha > -1.0)) {
    throw ParamError("Gegenbauer alpha must exceed -1, got " + std::to_string(alpha));
  }
}

/// log of the squared-norm constant of the classical alpha=beta Jacobi
/// polynomial: h_n = 2^(2a+1)/(2n+2a+1) * Gamma(n+a+1)^2 / (Gamma(n+2a+1) n!).
double log_jacobi_norm(int n, double alpha) {
  const double na = static_cast<double>(n) + alpha;
  return (2.0 * alpha + 1.0) * std::log(2.0) - std::log(2.0 * na + 1.0) +
         2.0 * std::lgamma(na + 1.0) - std::lgamma(na + alpha + 1.0) -
         std::lgamma(static_cast<double>(n) + 1.0);
}

/// Classical (unnormalized) alpha=beta Jacobi value by the standard
/// three-term recurrence.
double eval_jacobi_classical(int i, double alpha, double t) {
  if (i == 0) return 1.0;
  double pkm1 = 1.0;
  double pk = (alpha + 1.0) * t;
  for (int n = 2; n <= i; ++n) {
    const double m = 2.0 * n + 2.0 * alpha;
    const double an = (m - 1.0) * m / (2.0 * n * (n + 2.0 * alpha));
    const double bn =
        (n + alpha - 1.0) * (n + alpha - 1.0) * m / (n * (n + 2.0 * alpha) * (m - 2.0));
    const double pnext = an * t * pk - bn * pkm1;
    pkm1 = pk;
    pk = pnext;
  }
  return pk;
}

}  // namespace

BasisKind BasisKind::monomial() { return {BasisTag::Monomial, 0.0}; }
BasisKind BasisKind::chebyshev_t() { return {BasisTag::ChebyshevT, 0.0}; }
BasisKind BasisKind::legendre_normalized() { return {BasisTag::LegendreNormalized, 0.0}; }

BasisKind BasisKind::gegenbauer_normalized(double alpha) {
  require_alpha(alpha);
  return {BasisTag::GegenbauerNormalized, alpha};
}

bool BasisKind::operator==(const BasisKind& other) const {
  if (tag != other.tag) return false;
  if (tag == BasisTag::GegenbauerNormalized) return alpha == other.alpha;
  return true;
}

std::string BasisKind::name() const {
  switch (tag) {
    case BasisTag::Monomial:
      return "monomial";
    case BasisTag::ChebyshevT:
      return "chebyshev_t";
    case BasisTag::LegendreNormalized:
      return "legendre_normalized";
    case BasisTag::GegenbauerNormalized:
      return "gegenbauer_normalized(" + std::to_string(alpha) + ")";
  }
  return "unknown";
}

void PolyCoeffs::validate() const {
  if (degree < 0) throw ParamError("polynomial degree must be nonnegative");
  if (coeffs.size() != static_cast<std::size_t>(degree) + 1) {
    throw ParamError("coefficient count " + std::to_string(coeffs.size()) +
                     " does not match degree " + std::to_string(degree));
  }
  for (double coef : coeffs) {
    if (!std::isfinite(coef)) throw ParamError("coefficients must be finite");
  }
  if (basis.tag == BasisTag::GegenbauerNormalized) require_alpha(basis.alpha);
}

double eval_legendre_normalized(int i, double t) {
  require_index(i);
  require_closed_interval(t);
  double pkm1 = 1.0;
  double pk = t;
  if (i == 0) pk = 1.0;
  for (int n = 2; n <= i; ++n) {
    const double pnext = ((2.0 * n - 1.0) * t * pk - (n - 1.0) * pkm1) / n;
    pkm1 = pk;
    pk = pnext;
  }
  return pk * std::sqrt((2.0 * i + 1.0) / 2.0);
}

double eval_chebyshev_U(int i, double t) {
  require_index(i);
  require_closed_interval(t);
  double pkm1 = 1.0;
  double pk = 2.0 * t;
  if (i == 0) return 1.0;
  for (int n = 2; n <= i; ++n) {
    const double pnext = 2.0 * t * pk - pkm1;
    pkm1 = pk;
    pk = pnext;
  }
  return pk;
}

double eval_chebyshev_T(int i, double t) {
  require_index(i);
  require_closed_interval(t);
  double pkm1 = 1.0;
  double pk = t;
  if (i == 0) return 1.0;
  for (int n = 2; n <= i; ++n) {
    const double pnext = 2.0 * t * pk - pkm1;
    pkm1 = pk;
    pk = pnext;
  }
  return pk;
}

double eval_gegenbauer_normalized(int i, double alpha, double t) {
  require_index(i);
  require_alpha(alpha);
  require_open_interval(t);
  const double scale = std::exp(-0.5 * log_jacobi_norm(i, alpha));
  return eval_jacobi_classical(i, alpha, t) * scale;
}

kernels::Recurrence basis_recurrence(const BasisKind& basis, int degree) {
  if (degree < 0) throw ParamError("degree must be nonnegative");
  kernels::Recurrence rec;
  rec.a.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  rec.c.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  switch (basis.tag) {
    case BasisTag::Monomial: {
      rec.p0 = 1.0;
      for (int k = 1; k <= degree; ++k) rec.a[k] = 1.0;
      break;
    }
    case BasisTag::ChebyshevT: {
      rec.p0 = 1.0;
      if (degree >= 1) rec.a[1] = 1.0;
      for (int k = 2; k <= degree; ++k) {
        rec.a[k] = 2.0;
        rec.c[k] = 1.0;
      }
      break;
    }
    case BasisTag::LegendreNormalized:
    case BasisTag::GegenbauerNormalized: {
      // Orthonormal three-term recurrence t p_{k-1} = b_k p_k + b_{k-1} p_{k-2}
      // for the weight (1-t^2)^alpha; Legendre is alpha = 0.
      const double alpha =
          basis.tag == BasisTag::LegendreNormalized ? 0.0 : basis.alpha;
      require_alpha(alpha);
      rec.p0 = std::exp(-0.5 * log_jacobi_norm(0, alpha));
      std::vector<double> b(static_cast<std::size_t>(degree) + 1, 0.0);
      for (int k = 1; k <= degree; ++k) {
        // The k=1 entry is written in cancelled form: the raw quotient
        // k(k+2a)/((2k+2a-1)(2k+2a+1)) is 0/0 at alpha = -1/2.
        const double b2 =
            k == 1 ? 1.0 / (3.0 + 2.0 * alpha)
                   : k * (k + 2.0 * alpha) /
                         ((2.0 * k + 2.0 * alpha - 1.0) * (2.0 * k + 2.0 * alpha + 1.0));
        b[k] = std::sqrt(b2);
      }
      for (int k = 1; k <= degree; ++k) {
        rec.a[k] = 1.0 / b[k];
        if (k >= 2) rec.c[k] = b[k - 1] / b[k];
      }
      break;
    }
  }
  return rec;
}

void basis_rows(const BasisKind& basis, int degree, const double* t,
                std::size_t n, double* out) {
  const kernels::Recurrence rec = basis_recurrence(basis, degree);
  kernels::recurrence_rows(rec, degree, t, n, out);
}

double eval_poly(const PolyCoeffs& poly, double t) {
  poly.validate();
  const int d = poly.degree;
  if (poly.basis.tag == BasisTag::Monomial) {
    double acc = poly.coeffs[d];
    for (int k = d - 1; k >= 0; --k) acc = acc * t + poly.coeffs[k];
    return acc;
  }
  // Clenshaw summation; relies on p_1 = a_1 t p_0, which holds for every
  // supported family.
  const kernels::Recurrence rec = basis_recurrence(poly.basis, d);
  double bk1 = 0.0;
  double bk2 = 0.0;
  for (int k = d; k >= 1; --k) {
    const double ak1 = k + 1 <= d ? rec.a[k + 1] : 0.0;
    const double ck2 = k + 2 <= d ? rec.c[k + 2] : 0.0;
    const double bk = poly.coeffs[k] + ak1 * t * bk1 - ck2 * bk2;
    bk2 = bk1;
    bk1 = bk;
  }
  const double a1 = d >= 1 ? rec.a[1] : 0.0;
  const double c2 = d >= 2 ? rec.c[2] : 0.0;
  return rec.p0 * (poly.coeffs[0] + a1 * t * bk1 - c2 * bk2);
}

std::vector<double> chebyshev_nodes(int count) {
  if (count < 1) throw ParamError("node count must be positive");
  std::vector<double> nodes(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) {
    nodes[static_cast<std::size_t>(count - k)] =
        std::cos((2.0 * k - 1.0) * kPi / (2.0 * count));
  }
  return nodes;
}

PolyCoeffs convert_basis(const PolyCoeffs& poly, const BasisKind& target) {
  poly.validate();
  if (target.tag == BasisTag::GegenbauerNormalized) require_alpha(target.alpha);
  if (poly.basis == target) return poly;
  if (target.tag == BasisTag::Monomial && poly.degree > 64) {
    throw DomainError(
        "monomial conversion refused above degree 64; the interpolation "
        "system is numerically singular (degree " +
        std::to_string(poly.degree) + ")");
  }
  const int d = poly.degree;
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  const std::vector<double> nodes = chebyshev_nodes(d + 1);

  Eigen::VectorXd y(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) y[static_cast<Eigen::Index>(j)] = eval_poly(poly, nodes[j]);

  Eigen::MatrixXd design(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  basis_rows(target, d, nodes.data(), m, design.data());

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < static_cast<Eigen::Index>(m)) {
    const auto diag = qr.matrixR().diagonal().cwiseAbs();
    const double cond =
        diag.minCoeff() > 0.0 ? diag.maxCoeff() / diag.minCoeff()
                              : std::numeric_limits<double>::infinity();
    throw ConditioningError("basis conversion system numerically singular", cond);
  }
  const Eigen::VectorXd c = qr.solve(y);

  PolyCoeffs out;
  out.degree = d;
  out.basis = target;
  out.coeffs.assign(c.data(), c.data() + m);
  return out;
}

}  // namespace chebfit
