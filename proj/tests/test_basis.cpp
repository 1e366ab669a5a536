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

#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "chebfit/basis.hpp"
#include "chebfit/errors.hpp"
#include "chebfit/rng.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// integral of f over (-1,1) in plain dt by the theta-midpoint rule, which
// is spectrally accurate for smooth integrands.
template <typename F>
double integrate(F f, int n = 20000) {
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double theta = kPi * (j + 0.5) / n;
    acc += f(std::cos(theta)) * std::sin(theta);
  }
  return acc * kPi / n;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("legendre normalized matches explicit low-degree formulas") {
  for (double t : {-0.9, -0.3, 0.0, 0.5, 0.99, 1.0, -1.0}) {
    CHECK(chebfit::eval_legendre_normalized(0, t) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(chebfit::eval_legendre_normalized(1, t) ==
          doctest::Approx(std::sqrt(1.5) * t).epsilon(1e-14));
    CHECK(chebfit::eval_legendre_normalized(2, t) ==
          doctest::Approx(std::sqrt(2.5) * 0.5 * (3 * t * t - 1))
              .epsilon(1e-13));
    CHECK(chebfit::eval_legendre_normalized(3, t) ==
          doctest::Approx(std::sqrt(3.5) * 0.5 * (5 * t * t * t - 3 * t))
              .epsilon(1e-13));
  }
}

TEST_CASE("chebyshev T and U match the trigonometric definitions") {
  for (int k : {0, 1, 2, 5, 17, 40}) {
    for (double theta : {0.1, 0.7, 1.3, 2.2, 3.0}) {
      const double t = std::cos(theta);
      CHECK(chebfit::eval_chebyshev_T(k, t) ==
            doctest::Approx(std::cos(k * theta)).epsilon(1e-12));
      CHECK(chebfit::eval_chebyshev_U(k, t) ==
            doctest::Approx(std::sin((k + 1) * theta) / std::sin(theta))
                .epsilon(1e-11));
    }
  }
}

TEST_CASE("gegenbauer normalized families are orthonormal") {
  for (double alpha : {-0.4, 0.0, 0.5, 1.0, 2.3}) {
    for (int m = 0; m <= 6; ++m) {
      for (int n = m; n <= 6; ++n) {
        const double ip = integrate([&](double t) {
          return chebfit::eval_gegenbauer_normalized(m, alpha, t) *
                 chebfit::eval_gegenbauer_normalized(n, alpha, t) *
                 std::pow(1.0 - t * t, alpha);
        });
        // Midpoint quadrature converges slowly for alpha < 0, where the
        // weight is singular at the endpoints; 1e-5 covers the worst case.
        CHECK(ip == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("gegenbauer specializations agree with legendre and chebyshev U") {
  for (double t : {-0.8, -0.1, 0.4, 0.95}) {
    for (int n = 0; n <= 8; ++n) {
      CHECK(chebfit::eval_gegenbauer_normalized(n, 0.0, t) ==
            doctest::Approx(chebfit::eval_legendre_normalized(n, t))
                .epsilon(1e-12));
      // U_n has squared norm pi/2 under the weight (1-t^2)^{1/2}.
      CHECK(chebfit::eval_gegenbauer_normalized(n, 0.5, t) ==
            doctest::Approx(chebfit::eval_chebyshev_U(n, t) *
                            std::sqrt(2.0 / kPi))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("basis_rows agrees with the per-function evaluators") {
  const int d = 12;
  std::vector<double> pts;
  for (int i = 0; i <= 40; ++i) pts.push_back(-1.0 + 2.0 * i / 40.0);
  std::vector<double> rows(pts.size() * (d + 1));

  chebfit::basis_rows(chebfit::BasisKind::chebyshev_t(), d, pts.data(),
                      pts.size(), rows.data());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (int k = 0; k <= d; ++k) {
      CHECK(rows[k * pts.size() + j] ==
            doctest::Approx(chebfit::eval_chebyshev_T(k, pts[j]))
                .epsilon(1e-12));
    }
  }

  chebfit::basis_rows(chebfit::BasisKind::legendre_normalized(), d, pts.data(),
                      pts.size(), rows.data());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (int k = 0; k <= d; ++k) {
      CHECK(rows[k * pts.size() + j] ==
            doctest::Approx(chebfit::eval_legendre_normalized(k, pts[j]))
                .epsilon(1e-12));
    }
  }

  chebfit::basis_rows(chebfit::BasisKind::monomial(), d, pts.data(), pts.size(),
                      rows.data());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (int k = 0; k <= d; ++k) {
      CHECK(rows[k * pts.size() + j] ==
            doctest::Approx(std::pow(pts[j], k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("eval_poly matches a direct basis-function sum") {
  chebfit::Rng rng(31);
  for (const chebfit::BasisKind& basis :
       {chebfit::BasisKind::monomial(), chebfit::BasisKind::chebyshev_t(),
        chebfit::BasisKind::legendre_normalized(),
        chebfit::BasisKind::gegenbauer_normalized(0.75)}) {
    chebfit::PolyCoeffs poly;
    poly.degree = 9;
    poly.basis = basis;
    for (int k = 0; k <= 9; ++k) {
      poly.coeffs.push_back(rng.uniform_in(-1.0, 1.0));
    }
    std::vector<double> rows(10);
    for (double t : {-0.95, -0.2, 0.0, 0.33, 0.999}) {
      chebfit::basis_rows(basis, 9, &t, 1, rows.data());
      double direct = 0.0;
      for (int k = 0; k <= 9; ++k) direct += poly.coeffs[k] * rows[k];
      CHECK(chebfit::eval_poly(poly, t) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("chebyshev_nodes returns increasing classical nodes") {
  const std::vector<double> nodes = chebfit::chebyshev_nodes(3);
  REQUIRE(nodes.size() == 3);
  CHECK(nodes[0] == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(nodes[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(nodes[2] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
  const std::vector<double> many = chebfit::chebyshev_nodes(50);
  for (std::size_t i = 1; i < many.size(); ++i) {
    CHECK(many[i] > many[i - 1]);
  }
}

TEST_CASE("convert_basis round trips and preserves values") {
  chebfit::Rng rng(77);
  chebfit::PolyCoeffs poly;
  poly.degree = 7;
  poly.basis = chebfit::BasisKind::chebyshev_t();
  for (int k = 0; k <= 7; ++k) poly.coeffs.push_back(rng.uniform_in(-2.0, 2.0));

  const chebfit::PolyCoeffs mono =
      chebfit::convert_basis(poly, chebfit::BasisKind::monomial());
  const chebfit::PolyCoeffs back =
      chebfit::convert_basis(mono, chebfit::BasisKind::chebyshev_t());
  for (double t : {-1.0, -0.6, -0.1, 0.0, 0.42, 0.9, 1.0}) {
    CHECK(chebfit::eval_poly(mono, t) ==
          doctest::Approx(chebfit::eval_poly(poly, t)).epsilon(1e-10));
  }
  for (int k = 0; k <= 7; ++k) {
    CHECK(back.coeffs[k] == doctest::Approx(poly.coeffs[k]).epsilon(1e-9));
  }

  const chebfit::PolyCoeffs leg =
      chebfit::convert_basis(poly, chebfit::BasisKind::legendre_normalized());
  for (double t : {-0.77, 0.13, 0.88}) {
    CHECK(chebfit::eval_poly(leg, t) ==
          doctest::Approx(chebfit::eval_poly(poly, t)).epsilon(1e-10));
  }
}

TEST_CASE("domain and parameter violations throw") {
  CHECK_THROWS_AS(chebfit::eval_legendre_normalized(0, 1.0000001),
                  chebfit::DomainError);
  CHECK_THROWS_AS(chebfit::eval_legendre_normalized(0, std::nan("")),
                  chebfit::DomainError);
  CHECK_THROWS_AS(chebfit::eval_legendre_normalized(-1, 0.0),
                  chebfit::DomainError);
  CHECK_THROWS_AS(chebfit::eval_gegenbauer_normalized(2, -1.0, 0.0),
                  chebfit::ParamError);
  CHECK_THROWS_AS(chebfit::BasisKind::gegenbauer_normalized(-1.5),
                  chebfit::ParamError);
  chebfit::PolyCoeffs bad;
  bad.degree = 2;
  bad.basis = chebfit::BasisKind::chebyshev_t();
  bad.coeffs = {1.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), chebfit::ParamError);

  chebfit::PolyCoeffs big;
  big.degree = 70;
  big.basis = chebfit::BasisKind::chebyshev_t();
  big.coeffs.assign(71, 0.01);
  CHECK_THROWS_AS(chebfit::convert_basis(big, chebfit::BasisKind::monomial()),
                  chebfit::DomainError);
}

}  // TEST_SUITE
