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

#include "chebfit/kernels.hpp"

namespace chebfit::kernels::scalar_impl {

void recurrence_rows(const Recurrence& rec, int degree, const double* t,
                     std::size_t n, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  for (std::size_t j = 0; j < n; ++j) {
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

void recurrence_sum_squares(const Recurrence& rec, int degree, const double* t,
                            std::size_t n, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  for (std::size_t j = 0; j < n; ++j) {
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

void recurrence_dot(const Recurrence& rec, int degree, const double* t,
                    std::size_t n, const double* coef, double* out) {
  const double* a = rec.a.data();
  const double* c = rec.c.data();
  for (std::size_t j = 0; j < n; ++j) {
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

}  // namespace chebfit::kernels::scalar_impl
