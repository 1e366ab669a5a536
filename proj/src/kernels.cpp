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

#include <cstdlib>
#include <string>

#include "chebfit/errors.hpp"

namespace chebfit::kernels {

namespace scalar_impl {
void recurrence_rows(const Recurrence&, int, const double*, std::size_t, double*);
void recurrence_sum_squares(const Recurrence&, int, const double*, std::size_t, double*);
void recurrence_dot(const Recurrence&, int, const double*, std::size_t, const double*, double*);
}  // namespace scalar_impl

#if defined(CHEBFIT_AVX2_COMPILED)
namespace avx2_impl {
void recurrence_rows(const Recurrence&, int, const double*, std::size_t, double*);
void recurrence_sum_squares(const Recurrence&, int, const double*, std::size_t, double*);
void recurrence_dot(const Recurrence&, int, const double*, std::size_t, const double*, double*);
}  // namespace avx2_impl
#endif

const char* simd_level_name(SimdLevel level) {
  switch (level) {
    case SimdLevel::Scalar:
      return "scalar";
    case SimdLevel::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(CHEBFIT_AVX2_COMPILED) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

SimdLevel resolve_simd_level() {
  const char* env = std::getenv("CHEBFIT_SIMD");
  if (env != nullptr) {
    const std::string want(env);
    if (want == "scalar") return SimdLevel::Scalar;
    if (want == "avx2") {
      if (!avx2_available()) {
        throw ParamError("CHEBFIT_SIMD=avx2 requested but AVX2 is unavailable");
      }
      return SimdLevel::Avx2;
    }
    throw ParamError("unrecognized CHEBFIT_SIMD value \"" + want +
                     "\" (expected \"scalar\" or \"avx2\")");
  }
  return avx2_available() ? SimdLevel::Avx2 : SimdLevel::Scalar;
}

void check_level(SimdLevel level) {
  if (level == SimdLevel::Avx2 && !avx2_available()) {
    throw ParamError("AVX2 kernels unavailable on this machine");
  }
}

}  // namespace

SimdLevel active_simd_level() {
  static const SimdLevel level = resolve_simd_level();
  return level;
}

void recurrence_rows_at(SimdLevel level, const Recurrence& rec, int degree,
                        const double* t, std::size_t n, double* out) {
  check_level(level);
#if defined(CHEBFIT_AVX2_COMPILED)
  if (level == SimdLevel::Avx2) {
    avx2_impl::recurrence_rows(rec, degree, t, n, out);
    return;
  }
#endif
  scalar_impl::recurrence_rows(rec, degree, t, n, out);
}

void recurrence_sum_squares_at(SimdLevel level, const Recurrence& rec, int degree,
                               const double* t, std::size_t n, double* out) {
  check_level(level);
#if defined(CHEBFIT_AVX2_COMPILED)
  if (level == SimdLevel::Avx2) {
    avx2_impl::recurrence_sum_squares(rec, degree, t, n, out);
    return;
  }
#endif
  scalar_impl::recurrence_sum_squares(rec, degree, t, n, out);
}

void recurrence_dot_at(SimdLevel level, const Recurrence& rec, int degree,
                       const double* t, std::size_t n, const double* coef,
                       double* out) {
  check_level(level);
#if defined(CHEBFIT_AVX2_COMPILED)
  if (level == SimdLevel::Avx2) {
    avx2_impl::recurrence_dot(rec, degree, t, n, coef, out);
    return;
  }
#endif
  scalar_impl::recurrence_dot(rec, degree, t, n, coef, out);
}

void recurrence_rows(const Recurrence& rec, int degree, const double* t,
                     std::size_t n, double* out) {
  recurrence_rows_at(active_simd_level(), rec, degree, t, n, out);
}

void recurrence_sum_squares(const Recurrence& rec, int degree, const double* t,
                            std::size_t n, double* out) {
  recurrence_sum_squares_at(active_simd_level(), rec, degree, t, n, out);
}

void recurrence_dot(const Recurrence& rec, int degree, const double* t,
                    std::size_t n, const double* coef, double* out) {
  recurrence_dot_at(active_simd_level(), rec, degree, t, n, coef, out);
}

}  // namespace chebfit::kernels
