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
#include <Eigen/Dense>

#include "chebfit/basis.hpp"
#include "chebfit/design.hpp"
#include "chebfit/errors.hpp"
#include "chebfit/measures.hpp"
#include "chebfit/rng.hpp"
#include "chebfit/weights.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

chebfit::DesignMatrix wrap(const Eigen::MatrixXd& m) {
  chebfit::DesignMatrix design;
  design.entries = m;
  return design;
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              std::uint64_t seed) {
  chebfit::Rng rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      m(i, j) = rng.uniform_in(-1.0, 1.0);
    }
  }
  return m;
}

// Chebyshev-T rows at t, for building reference Gram matrices in-test.
Eigen::VectorXd t_row(int d, double t) {
  Eigen::VectorXd r(d + 1);
  for (int k = 0; k <= d; ++k) r[k] = chebfit::eval_chebyshev_T(k, t);
  return r;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("leverage of a hand example") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 0, 0, 1, 1, 1;
  const chebfit::WeightVector tau = chebfit::matrix_leverage(wrap(a));
  REQUIRE(tau.values.size() == 3);
  for (double v : tau.values) {
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("leverage sums to the rank and ignores right multiplication") {
  const Eigen::MatrixXd a = random_matrix(40, 5, 3);
  const chebfit::WeightVector tau = chebfit::matrix_leverage(wrap(a));
  double total = 0.0;
  for (double v : tau.values) {
    total += v;
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
  CHECK(total == doctest::Approx(5.0).epsilon(1e-10));

  Eigen::MatrixXd m = random_matrix(5, 5, 4);
  m += 5.0 * Eigen::MatrixXd::Identity(5, 5);
  const chebfit::WeightVector tau2 = chebfit::matrix_leverage(wrap(a * m));
  for (std::size_t i = 0; i < tau.values.size(); ++i) {
    CHECK(tau2.values[i] == doctest::Approx(tau.values[i]).epsilon(1e-9));
  }
}

TEST_CASE("rank-deficient leverage throws RankError") {
  Eigen::MatrixXd a(4, 2);
  a << 1, 2, 2, 4, 3, 6, -1, -2;
  CHECK_THROWS_AS(chebfit::matrix_leverage(wrap(a)), chebfit::RankError);
}

TEST_CASE("lewis weights collapse to leverage at p=2 and sum to the rank") {
  const Eigen::MatrixXd a = random_matrix(60, 6, 8);
  const chebfit::WeightVector lev = chebfit::matrix_leverage(wrap(a));
  for (double p : {2.0 / 3.0, 1.0, 1.5, 2.0}) {
    const chebfit::WeightVector w = chebfit::matrix_lewis_weights(wrap(a), p);
    CHECK(w.converged);
    CHECK(w.fixpoint_residual <= 1e-10);
    double total = 0.0;
    for (double v : w.values) total += v;
    CHECK(total == doctest::Approx(6.0).epsilon(1e-8));
    if (p == 2.0) {
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        CHECK(w.values[i] == doctest::Approx(lev.values[i]).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS(chebfit::matrix_lewis_weights(wrap(a), 4.0),
                  chebfit::ParamError);
  CHECK_THROWS_AS(chebfit::matrix_lewis_weights(wrap(a), 0.0),
                  chebfit::ParamError);
}

TEST_CASE("lewis weights match a plain fixpoint iteration") {
  const Eigen::MatrixXd a = random_matrix(30, 4, 15);
  const double p = 1.0;
  const chebfit::WeightVector w = chebfit::matrix_lewis_weights(wrap(a), p);

  // Independent reference: iterate w <- (tau_i(W^{1/2-1/p} A) w^{2/p-1})^{p/2}
  // directly, recomputing leverage from a fresh QR each round.
  Eigen::VectorXd ref = Eigen::VectorXd::Constant(30, 4.0 / 30.0);
  for (int it = 0; it < 4000; ++it) {
    Eigen::MatrixXd scaled = a;
    for (Eigen::Index i = 0; i < scaled.rows(); ++i) {
      scaled.row(i) *= std::pow(ref[i], 0.5 - 1.0 / p);
    }
    const Eigen::MatrixXd q =
        Eigen::HouseholderQR<Eigen::MatrixXd>(scaled).householderQ() *
        Eigen::MatrixXd::Identity(30, 4);
    for (Eigen::Index i = 0; i < ref.size(); ++i) {
      const double tau = q.row(i).squaredNorm();
      ref[i] = std::pow(tau * std::pow(ref[i], 2.0 / p - 1.0), p / 2.0);
    }
  }
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    CHECK(w.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(ref[i]).epsilon(1e-7));
  }
}

TEST_CASE("operator leverage matches a quadrature Gram reference") {
  // Reference: r(t)^T G^{-1} r(t) with G the Gram of Chebyshev-T rows under
  // plain dt, which is basis independent. The library computes the same
  // quantity as a normalized Legendre square sum.
  const int d = 7;
  const int n = 20000;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int j = 0; j < n; ++j) {
    const double theta = kPi * (j + 0.5) / n;
    const Eigen::VectorXd r = t_row(d, std::cos(theta));
    gram += (kPi / n) * std::sin(theta) * r * r.transpose();
  }
  const Eigen::MatrixXd inv = gram.inverse();
  for (double t : {-0.99, -0.5, 0.0, 0.3, 0.87}) {
    const Eigen::VectorXd r = t_row(d, t);
    CHECK(chebfit::operator_leverage(t, d) ==
          doctest::Approx(r.dot(inv * r)).epsilon(1e-7));
  }
}

TEST_CASE("reweighted leverage ratio matches the U-polynomial closed form") {
  for (int d : {1, 4, 9}) {
    const auto cheb = chebfit::MeasureSpec::chebyshev(d);
    for (double theta : {0.3, 1.0, 1.9, 2.8}) {
      const double t = std::cos(theta);
      const int order = 2 * (d + 1);
      const double u =
          std::sin((order + 1) * theta) / std::sin(theta);
      const double expect = 1.0 + (1.0 - u) / (2.0 * (d + 1));
      CHECK(chebfit::lewis_ratio_p1(t, d) ==
            doctest::Approx(expect).epsilon(1e-12));
      CHECK(chebfit::operator_reweighted_leverage(t, d, 1.0, cheb) /
                chebfit::density(cheb, t) ==
            doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("clipped reweighted leverage integrates to d+1") {
  for (double p : {2.0 / 3.0, 1.0, 2.0}) {
    const int d = 5;
    const auto spec = chebfit::MeasureSpec::clipped_chebyshev(d, 1.0);
    chebfit::ReweightedGram gram(d, p, spec);
    CHECK(gram.condition_estimate() >= 1.0);
    const int n = 20000;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      const double theta = kPi * (j + 0.5) / n;
      total += gram.leverage(std::cos(theta)) * std::sin(theta);
    }
    total *= kPi / n;
    CHECK(total == doctest::Approx(d + 1.0).epsilon(1e-6));
  }
  CHECK_THROWS_AS(
      chebfit::ReweightedGram(5, 2.5, chebfit::MeasureSpec::clipped_chebyshev(5, 1.0)),
      chebfit::ParamError);
  CHECK_THROWS_AS(chebfit::ReweightedGram(5, 1.0, chebfit::MeasureSpec::uniform()),
                  chebfit::ParamError);
}

TEST_CASE("matrix sensitivity on hand examples") {
  Eigen::MatrixXd pair(2, 1);
  pair << 1, 1;
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CHECK(chebfit::matrix_sensitivity(wrap(pair), 0, p) ==
          doctest::Approx(0.5).epsilon(1e-9));
  }
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(4, 4);
  for (double p : {1.0, 2.0, 2.7}) {
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(chebfit::matrix_sensitivity(wrap(eye), i, p) ==
            doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("matrix sensitivity equals leverage at p=2") {
  const Eigen::MatrixXd a = random_matrix(25, 4, 21);
  const chebfit::WeightVector lev = chebfit::matrix_leverage(wrap(a));
  for (std::size_t i : {0u, 7u, 24u}) {
    CHECK(chebfit::matrix_sensitivity(wrap(a), i, 2.0) ==
          doctest::Approx(lev.values[i]).epsilon(1e-8));
  }
}

TEST_CASE("operator sensitivity matches an explicit p=2 Gram reference") {
  const int d = 5;
  const int n = 4000;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d + 1, d + 1);
  for (int j = 0; j < n; ++j) {
    const double theta = kPi * (j + 0.5) / n;
    const Eigen::VectorXd r = t_row(d, std::cos(theta));
    gram += (kPi / n) * std::sin(theta) * r * r.transpose();
  }
  const Eigen::MatrixXd inv = gram.inverse();
  for (double t : {-0.9, -0.2, 0.4, 0.95}) {
    const Eigen::VectorXd r = t_row(d, t);
    CHECK(chebfit::operator_sensitivity(t, d, 2.0, 4000) ==
          doctest::Approx(r.dot(inv * r)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(chebfit::operator_sensitivity(0.0, 5, 2.0, 4),
                  chebfit::ParamError);
  CHECK_THROWS_AS(chebfit::operator_sensitivity(0.0, 5, 0.5, 4000),
                  chebfit::ParamError);
}

}  // TEST_SUITE
