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

#ifndef CHEBFIT_ERRORS_HPP_
#define CHEBFIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace chebfit {

/// Base class for all chebfit exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An argument lies outside the mathematical domain of the operation
/// (e.g. |t| > 1 for a polynomial family defined on [-1, 1]).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// A configuration parameter is invalid (e.g. alpha <= -1, p outside the
/// supported range, nonpositive tolerance).
class ParamError : public Error {
 public:
  explicit ParamError(const std::string& what) : Error(what) {}
};

/// A matrix that must have full column rank does not; carries the numerical
/// rank detected by the factorization.
class RankError : public Error {
 public:
  RankError(const std::string& what, long numerical_rank)
      : Error(what + " (numerical rank " + std::to_string(numerical_rank) + ")"),
        numerical_rank_(numerical_rank) {}
  long numerical_rank() const { return numerical_rank_; }

 private:
  long numerical_rank_;
};

/// A linear system is too ill-conditioned to solve reliably; carries a
/// condition-number estimate.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double condition_estimate)
      : Error(what + " (condition estimate " + std::to_string(condition_estimate) + ")"),
        condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// An iterative method exhausted its budget; carries the last residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (last residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// File or stream input/output failed.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace chebfit

#endif  // CHEBFIT_ERRORS_HPP_
