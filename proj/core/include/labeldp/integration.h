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

// Integration of functions over [0,1]^d against the uniform density:
// deterministic midpoint grids for d <= 3, Monte Carlo with a reported
// standard error otherwise.

#ifndef LABELDP_INTEGRATION_H_
#define LABELDP_INTEGRATION_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace labeldp {

enum class IntegrationMethod { kAuto, kGrid, kMonteCarlo };

struct IntegrationOptions {
  // kAuto uses the grid for d <= 3 and Monte Carlo above.
  IntegrationMethod method = IntegrationMethod::kAuto;
  // Grid points per axis; 0 selects DefaultGridResolution(d).
  int grid_per_axis = 0;
  size_t monte_carlo_points = 100000;
  uint64_t monte_carlo_seed = 0x1abe1d9;
};

struct IntegralEstimate {
  double value = 0.0;
  // 0 for grid integration.
  double std_error = 0.0;
  // kGrid or kMonteCarlo, never kAuto.
  IntegrationMethod method = IntegrationMethod::kGrid;
  size_t eval_points = 0;
};

// Midpoint-grid resolution per axis: 2048 (d=1), 256 (d=2), 64 (d=3);
// 0 for d > 3, where grid integration is refused.
int DefaultGridResolution(int dim);

// Calls fn(x) at every point (i + 1/2) / per_axis of the midpoint grid on
// [0,1]^d, in row-major order.
template <typename Fn>
void ForEachMidpoint(int dim, int per_axis, Fn&& fn) {
  std::vector<int> idx(dim, 0);
  const double step = 1.0 / per_axis;
  std::vector<double> x(dim, 0.5 * step);
  while (true) {
    fn(std::span<const double>(x));
    int axis = dim - 1;
    while (axis >= 0 && ++idx[axis] == per_axis) {
      idx[axis] = 0;
      x[axis] = 0.5 * step;
      --axis;
    }
    if (axis < 0) return;
    x[axis] = (idx[axis] + 0.5) * step;
  }
}

// Integral of fn over [0,1]^d with respect to Lebesgue measure.
// Explicit kGrid with d > 3 is rejected.
absl::StatusOr<IntegralEstimate> IntegrateOverUnitCube(
    int dim, const std::function<double(std::span<const double>)>& fn,
    const IntegrationOptions& options = {});

}  // namespace labeldp

#endif  // LABELDP_INTEGRATION_H_
