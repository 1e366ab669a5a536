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

#ifndef CHEBFIT_BASIS_HPP_
#define CHEBFIT_BASIS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "chebfit/kernels.hpp"

namespace chebfit {

/// The polynomial families the library evaluates and fits in.
///  - Monomial: 1, t, t^2, ...
///  - ChebyshevT: T_i(t) = cos(i arccos t)
///  - LegendreNormalized: L_i with integral of L_i^2 over (-1,1) equal to 1
///  - GegenbauerNormalized(alpha): the alpha=beta Jacobi family J_i with
///    integral of J_i J_j (1-t^2)^alpha equal to delta_ij
enum class BasisTag { Monomial, ChebyshevT, LegendreNormalized, GegenbauerNormalized };

struct BasisKind {
  BasisTag tag = BasisTag::ChebyshevT;
  double alpha = 0.0;  // meaningful only for GegenbauerNormalized

  static BasisKind monomial();
  static BasisKind chebyshev_t();
  static BasisKind legendre_normalized();
  /// Throws ParamError when alpha <= -1 (the weight (1-t^2)^alpha must be
  /// integrable).
  static BasisKind gegenbauer_normalized(double alpha);

  bool operator==(const BasisKind& other) const;
  std::string name() const;
};

/// A degree-d polynomial as d+1 coefficients in a declared basis.
struct PolyCoeffs {
  int degree = 0;
  BasisKind basis;
  std::vector<double> coeffs;

  /// Throws ParamError unless coeffs has length degree+1 with all entries
  /// finite.
  void validate() const;
};

/// L_i(t), the Legendre polynomial normalized to unit L2 norm on (-1,1).
/// Throws DomainError when |t| > 1.
double eval_legendre_normalized(int i, double t);

/// U_i(t), the Chebyshev polynomial of the second kind. Throws DomainError
/// when |t| > 1.
double eval_chebyshev_U(int i, double t);

/// T_i(t), the Chebyshev polynomial of the first kind. Throws DomainError
/// when |t| > 1.
double eval_chebyshev_T(int i, double t);

/// J_i(t) for the alpha=beta Jacobi family, normalized so that
/// integral of J_i J_j (1-t^2)^alpha over (-1,1) is delta_ij. Evaluated by
/// the classical Jacobi recurrence and scaled by the reciprocal square root
/// of the norm constant, computed in log-Gamma form. Throws ParamError when
/// alpha <= -1 and DomainError when |t| >= 1.
double eval_gegenbauer_normalized(int i, double alpha, double t);

/// Evaluates a polynomial at t: Horner for the monomial basis, Clenshaw
/// summation for the recurrence bases.
double eval_poly(const PolyCoeffs& poly, double t);

/// Re-expresses the polynomial in the target basis via interpolation at
/// degree+1 Chebyshev nodes. Monomial targets are refused above degree 64
/// (DomainError); a numerically singular interpolation system raises
/// ConditioningError with a condition estimate.
PolyCoeffs convert_basis(const PolyCoeffs& poly, const BasisKind& target);

/// Coefficient arrays for the three-term recurrence of a basis, in the form
/// the block kernels consume. For the normalized families this is the
/// orthonormal-recurrence parameterization; it agrees with the per-term
/// normalized evaluation to rounding error (unit tested).
kernels::Recurrence basis_recurrence(const BasisKind& basis, int degree);

/// Fills out (column-major, n rows, degree+1 columns) with basis values at
/// the n points; out[k*n + j] = B_k(t[j]).
void basis_rows(const BasisKind& basis, int degree, const double* t,
                std::size_t n, double* out);

/// The count Chebyshev nodes cos((2k-1)pi/(2 count)), k = 1..count,
/// in decreasing order of angle (increasing t).
std::vector<double> chebyshev_nodes(int count);

}  // namespace chebfit

#endif  // CHEBFIT_BASIS_HPP_
