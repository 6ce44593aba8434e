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

#ifndef LABELDP_CUBE_PARTITION_H_
#define LABELDP_CUBE_PARTITION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace labeldp {

// Tiling of [0,1]^d into G = m^d congruent half-open cubes, m = ceil(1/h).
// The requested side h is rounded down to the exact divisor 1/m. Cells are
// numbered row-major: the first coordinate's axis index is most significant.
// Points with a coordinate equal to 1 fall into the last cell on that axis.
class CubePartition {
 public:
  // Rejects d < 1, h <= 0, h > 1 and partitions with more than 2^31 cells.
  static absl::StatusOr<CubePartition> Make(int dim, double side);

  int dim() const { return dim_; }
  double requested_side() const { return requested_side_; }
  int cells_per_axis() const { return cells_per_axis_; }
  // Effective side length 1 / cells_per_axis.
  double cell_width() const { return 1.0 / cells_per_axis_; }
  size_t num_cells() const { return num_cells_; }

  // Rejects points of the wrong dimension or outside [0,1]^d.
  absl::StatusOr<size_t> CellIndex(std::span<const double> x) const;

  // Caller guarantees x is a valid point of [0,1]^d.
  size_t CellIndexUnchecked(std::span<const double> x) const {
    size_t index = 0;
    for (int i = 0; i < dim_; ++i) {
      index = index * cells_per_axis_ + AxisIndex(x[i]);
    }
    return index;
  }

  int AxisIndex(double coordinate) const {
    const int a = static_cast<int>(coordinate * cells_per_axis_);
    return a < cells_per_axis_ ? a : cells_per_axis_ - 1;
  }

  std::vector<int> AxisIndices(size_t cell) const;
  std::vector<double> CellCenter(size_t cell) const;

 private:
  CubePartition(int dim, double side, int per_axis, size_t cells)
      : dim_(dim),
        requested_side_(side),
        cells_per_axis_(per_axis),
        num_cells_(cells) {}

  int dim_;
  double requested_side_;
  int cells_per_axis_;
  size_t num_cells_;
};

}  // namespace labeldp

#endif  // LABELDP_CUBE_PARTITION_H_
