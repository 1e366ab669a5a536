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

#ifndef CHEBFIT_KERNELS_HPP_
#define CHEBFIT_KERNELS_HPP_

#include <cstddef>
#include <vector>

namespace chebfit::kernels {

// Every polynomial family used in this project (monomials, Chebyshev T,
// normalized Legendre, normalized Gegenbauer) satisfies
//   p_0(t) = p0
//   p_1(t) = a[1] * t * p0
//   p_k(t) = a[k] * t * p_{k-1}(t) - c[k] * p_{k-2}(t),   k >= 2
// with family-specific coefficient arrays. The kernels below evaluate such a
// family over a block of points; they are the hot inner loops behind design
// matrices, Gram quadrature, leverage sums, and dense-grid evaluation.
struct Recurrence {
  double p0 = 1.0;
  std::vector<double> a;  // index 1..degree used
  std::vector<double> c;  // index 2..degree used
};

enum class SimdLevel { Scalar, Avx2 };

const char* simd_level_name(SimdLevel level);

/// True when the AVX2 variant is both compiled in and supported by the CPU.
bool avx2_available();

/// The level the dispatched entry points resolve to. Decided once per process:
/// AVX2 when available, unless the environment variable CHEBFIT_SIMD is set to
/// "scalar" (or "avx2" to insist, which fails if unavailable).
SimdLevel active_simd_level();

/// out is column-major n x (degree+1): out[k*n + j] = p_k(t[j]).
void recurrence_rows(const Recurrence& rec, int degree, const double* t,
                     std::size_t n, double* out);

/// out[j] = sum_{k=0..degree} p_k(t[j])^2.
void recurrence_sum_squares(const Recurrence& rec, int degree, const double* t,
                            std::size_t n, double* out);

/// out[j] = sum_{k=0..degree} coef[k] * p_k(t[j]).
void recurrence_dot(const Recurrence& rec, int degree, const double* t,
                    std::size_t n, const double* coef, double* out);

/// Variant entry points pinned to one implementation, for equivalence tests.
/// Throw ParamError when the requested level is unavailable on this machine.
void recurrence_rows_at(SimdLevel level, const Recurrence& rec, int degree,
                        const double* t, std::size_t n, double* out);
void recurrence_sum_squares_at(SimdLevel level, const Recurrence& rec, int degree,
                               const double* t, std::size_t n, double* out);
void recurrence_dot_at(SimdLevel level, const Recurrence& rec, int degree,
                       const double* t, std::size_t n, const double* coef,
                       double* out);

}  // namespace chebfit::kernels

#endif  // CHEBFIT_KERNELS_HPP_
