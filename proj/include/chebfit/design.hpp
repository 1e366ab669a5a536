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

#ifndef CHEBFIT_DESIGN_HPP_
#define CHEBFIT_DESIGN_HPP_

#include <vector>

#include <Eigen/Core>

#include "chebfit/basis.hpp"

namespace chebfit {

/// Dense design matrix. When the rows are basis evaluations at sample
/// points, `row_points` records those points (one per row); otherwise it
/// stays empty and `basis` is ignored.
struct DesignMatrix {
  Eigen::MatrixXd entries;
  std::vector<double> row_points;
  BasisKind basis;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }

  /// Throws ParamError on non-finite entries, an empty matrix, or a
  /// row_points length that disagrees with the row count.
  void validate() const;
};

/// Builds the (points.size()) x (degree+1) matrix whose row j holds the
/// basis values at points[j].
DesignMatrix design_from_points(const std::vector<double>& points, int degree,
                                const BasisKind& basis);

}  // namespace chebfit

#endif  // CHEBFIT_DESIGN_HPP_
