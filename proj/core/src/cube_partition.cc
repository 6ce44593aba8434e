//
// Copyright 2026 The labeldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "labeldp/cube_partition.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace labeldp {

namespace {
constexpr double kMaxCells = 2147483648.0;  // 2^31
}  // namespace

absl::StatusOr<CubePartition> CubePartition::Make(int dim, double side) {
  if (dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", dim));
  }
  if (!(side > 0.0 && side <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cube side must lie in (0, 1], got ", side));
  }
  // The slack absorbs representation error in 1/h for exact divisors such
  // as h = 1/3, whose reciprocal evaluates to 3.0000000000000004.
  const double per_axis = std::ceil(1.0 / side - 1e-9);
  const double cells = std::pow(per_axis, dim);
  if (per_axis > kMaxCells || cells > kMaxCells) {
    return absl::InvalidArgumentError(absl::StrCat(
        "partition with side ", side, " in dimension ", dim,
        " has too many cells"));
  }
  return CubePartition(dim, side, static_cast<int>(per_axis),
                       static_cast<size_t>(cells));
}

absl::StatusOr<size_t> CubePartition::CellIndex(
    std::span<const double> x) const {
  if (x.size() != static_cast<size_t>(dim_)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "point has dimension ", x.size(), ", partition has ", dim_));
  }
  for (double c : x) {
    if (!(c >= 0.0 && c <= 1.0)) {
      return absl::OutOfRangeError(
          absl::StrCat("coordinate ", c, " lies outside [0, 1]"));
    }
  }
  return CellIndexUnchecked(x);
}

std::vector<int> CubePartition::AxisIndices(size_t cell) const {
  std::vector<int> axes(dim_);
  for (int i = dim_ - 1; i >= 0; --i) {
    axes[i] = static_cast<int>(cell % cells_per_axis_);
    cell /= cells_per_axis_;
  }
  return axes;
}

std::vector<double> CubePartition::CellCenter(size_t cell) const {
  std::vector<double> center(dim_);
  const auto axes = AxisIndices(cell);
  for (int i = 0; i < dim_; ++i) {
    center[i] = (axes[i] + 0.5) * cell_width();
  }
  return center;
}

}  // namespace labeldp
