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

// This translation unit is compiled with -mavx2 -mfma and must only be
// entered after a runtime CPU-feature check (see kernels.cpp).

#include "chebfit/kernels.hpp"

#include <immintrin.h>

namespace chebfit::kernels::avx2_impl {

namespace {
constexpr std::size_t kLanes = 4;
}  // namespace

void recurrence_rows(const Recurrence& rec, int degree, const double* t,
                     std::size_t n, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  const std::size_t main = n - n % kLanes;
  for (std::size_t j = 0; j < main; j += kLanes) {
    const __m256d vt = _mm256_loadu_pd(t + j);
    __m256d pkm1 = _mm256_set1_pd(rec.p0);
    _mm256_storeu_pd(out + j, pkm1);
    if (degree >= 1) {
      __m256d pk = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(a[1]), vt), pkm1);
      _mm256_storeu_pd(out + n + j, pk);
      for (int k = 2; k <= degree; ++k) {
        const __m256d at = _mm256_mul_pd(_mm256_set1_pd(a[k]), vt);
        const __m256d pnext =
            _mm256_fmsub_pd(at, pk, _mm256_mul_pd(_mm256_set1_pd(c[k]), pkm1));
        pkm1 = pk;
        pk = pnext;
        _mm256_storeu_pd(out + static_cast<std::size_t>(k) * n + j, pk);
      }
    }
  }
  if (main < n) {
    for (std::size_t j = main; j < n; ++j) {
      const double tj = t[j];
      double pkm1 = rec.p0;
      out[j] = pkm1;
      if (degree >= 1) {
        double pk = a[1] * tj * pkm1;
        out[n + j] = pk;
        for (int k = 2; k <= degree; ++k) {
          const double pnext = a[k] * tj * pk - c[k] * pkm1;
          pkm1 = pk;
          pk = pnext;
          out[static_cast<std::size_t>(k) * n + j] = pk;
        }
      }
    }
  }
}

void recurrence_sum_squares(const Recurrence& rec, int degree, const double* t,
                            std::size_t n, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  const std::size_t main = n - n % kLanes;
  for (std::size_t j = 0; j < main; j += kLanes) {
    const __m256d vt = _mm256_loadu_pd(t + j);
    __m256d pkm1 = _mm256_set1_pd(rec.p0);
    __m256d acc = _mm256_mul_pd(pkm1, pkm1);
    if (degree >= 1) {
      __m256d pk = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(a[1]), vt), pkm1);
      acc = _mm256_fmadd_pd(pk, pk, acc);
      for (int k = 2; k <= degree; ++k) {
        const __m256d at = _mm256_mul_pd(_mm256_set1_pd(a[k]), vt);
        const __m256d pnext =
            _mm256_fmsub_pd(at, pk, _mm256_mul_pd(_mm256_set1_pd(c[k]), pkm1));
        pkm1 = pk;
        pk = pnext;
        acc = _mm256_fmadd_pd(pk, pk, acc);
      }
    }
    _mm256_storeu_pd(out + j, acc);
  }
  if (main < n) {
    for (std::size_t j = main; j < n; ++j) {
      const double tj = t[j];
      double pkm1 = rec.p0;
      double acc = pkm1 * pkm1;
      if (degree >= 1) {
        double pk = a[1] * tj * pkm1;
        acc += pk * pk;
        for (int k = 2; k <= degree; ++k) {
          const double pnext = a[k] * tj * pk - c[k] * pkm1;
          pkm1 = pk;
          pk = pnext;
          acc += pk * pk;
        }
      }
      out[j] = acc;
    }
  }
}

void recurrence_dot(const Recurrence& rec, int degree, const double* t,
                    std::size_t n, const double* coef, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  const std::size_t main = n - n % kLanes;
  for (std::size_t j = 0; j < main; j += kLanes) {
    const __m256d vt = _mm256_loadu_pd(t + j);
    __m256d pkm1 = _mm256_set1_pd(rec.p0);
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(coef[0]), pkm1);
    if (degree >= 1) {
      __m256d pk = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(a[1]), vt), pkm1);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(coef[1]), pk, acc);
      for (int k = 2; k <= degree; ++k) {
        const __m256d at = _mm256_mul_pd(_mm256_set1_pd(a[k]), vt);
        const __m256d pnext =
            _mm256_fmsub_pd(at, pk, _mm256_mul_pd(_mm256_set1_pd(c[k]), pkm1));
        pkm1 = pk;
        pk = pnext;
        acc = _mm256_fmadd_pd(_mm256_set1_pd(coef[k]), pk, acc);
      }
    }
    _mm256_storeu_pd(out + j, acc);
  }
  if (main < n) {
    for (std::size_t j = main; j < n; ++j) {
      const double tj = t[j];
      double pkm1 = rec.p0;
      double acc = coef[0] * pkm1;
      if (degree >= 1) {
        double pk = a[1] * tj * pkm1;
        acc += coef[1] * pk;
        for (int k = 2; k <= degree; ++k) {
          const double pnext = a[k] * tj * pk - c[k] * pkm1;
          pkm1 = pk;
          pk = pnext;
          acc += coef[k] * pk;
        }
      }
      out[j] = acc;
    }
  }
}

}  // namespace chebfit::kernels::avx2_impl
