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

#include "chebfit/design.hpp"

#include <cstddef>

#include "chebfit/errors.hpp"

namespace chebfit {

void DesignMatrix::validate() const {
  if (entries.rows() == 0 || entries.cols() == 0) {
    throw ParamError("design matrix must be nonempty");
  }
  if (!entries.allFinite()) throw ParamError("design matrix entries must be finite");
  if (!row_points.empty() &&
      row_points.size() != static_cast<std::size_t>(entries.rows())) {
    throw ParamError("row_points length does not match the row count");
  }
}

DesignMatrix design_from_points(const std::vector<double>& points, int degree,
                                const BasisKind& basis) {
  if (points.empty()) throw ParamError("design requires at least one point");
  if (degree < 0) throw ParamError("degree must be nonnegative");
  DesignMatrix design;
  design.basis = basis;
  design.row_points = points;
  const std::size_t n = points.size();
  // basis_rows writes column-major, matching Eigen's default layout, so the
  // kernel can fill the matrix storage directly.
  Eigen::MatrixXd cols(static_cast<Eigen::Index>(n), degree + 1);
  basis_rows(basis, degree, points.data(), n, cols.data());
  design.entries = std::move(cols);
  return design;
}

}  // namespace chebfit
