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

#include "labeldp/integration.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "labeldp/random.h"

namespace labeldp {

int DefaultGridResolution(int dim) {
  switch (dim) {
    case 1:
      return 2048;
    case 2:
      return 256;
    case 3:
      return 64;
    default:
      return 0;
  }
}

absl::StatusOr<IntegralEstimate> IntegrateOverUnitCube(
    int dim, const std::function<double(std::span<const double>)>& fn,
    const IntegrationOptions& options) {
  if (dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", dim));
  }
  IntegrationMethod method = options.method;
  if (method == IntegrationMethod::kAuto) {
    method = dim <= 3 ? IntegrationMethod::kGrid : IntegrationMethod::kMonteCarlo;
  }

  IntegralEstimate out;
  out.method = method;
  if (method == IntegrationMethod::kGrid) {
    if (dim > 3) {
      return absl::InvalidArgumentError(absl::StrCat(
          "grid integration supports d <= 3, got d = ", dim));
    }
    const int per_axis = options.grid_per_axis > 0
                             ? options.grid_per_axis
                             : DefaultGridResolution(dim);
    double sum = 0.0;
    size_t count = 0;
    ForEachMidpoint(dim, per_axis, [&](std::span<const double> x) {
      sum += fn(x);
      ++count;
    });
    out.value = sum / static_cast<double>(count);
    out.eval_points = count;
    return out;
  }

  if (options.monte_carlo_points < 2) {
    return absl::InvalidArgumentError("Monte Carlo needs at least 2 points");
  }
  Rng rng(options.monte_carlo_seed);
  std::vector<double> x(dim);
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (size_t i = 0; i < options.monte_carlo_points; ++i) {
    for (double& c : x) c = rng.Uniform();
    const double v = fn(x);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double n = static_cast<double>(options.monte_carlo_points);
  out.value = mean;
  out.std_error = std::sqrt(m2 / (n - 1) / n);
  out.eval_points = options.monte_carlo_points;
  return out;
}

}  // namespace labeldp
