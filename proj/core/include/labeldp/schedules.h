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

// Bandwidth, neighbor-count and clipping-radius schedules. The theory fixes
// only the order of each quantity in (N, eps); every schedule carries a
// constant multiplier `c_mult` (default 1) that rate fits are invariant to.

#ifndef LABELDP_SCHEDULES_H_
#define LABELDP_SCHEDULES_H_

#include <cstddef>
#include <optional>

#include "absl/status/statusor.h"
#include "labeldp/core.h"

namespace labeldp {

// c (N (eps^2 ∧ 1) / ln K)^(-1/(2 beta + d)), clamped to (0, 1].
absl::StatusOr<double> LocalClassificationSide(size_t n,
                                               const PrivacyBudget& budget,
                                               int num_classes, double beta,
                                               int dim, double c_mult = 1.0);

// c [(ln K / (eps N))^(1/(beta + d)) + (ln K / N)^(1/(2 beta + d))], clamped
// to (0, 1]. The first term vanishes for the INFINITE budget.
absl::StatusOr<double> CentralClassificationSide(size_t n,
                                                 const PrivacyBudget& budget,
                                                 int num_classes, double beta,
                                                 int dim, double c_mult = 1.0);

// Neighbor count for the local kNN regressor, rounded and clamped to [1, N].
//   bounded:       c N^(2b/(d+2b)) (eps ∧ 1)^(-2d/(d+2b))
//   heavy (p):     c [(N eps^2)^(2pb/(2pb+d(p-1))) ∨ N^(2b/(2b+d))]
// With the INFINITE budget the heavy schedule keeps only its non-private
// term N^(2b/(2b+d)).
absl::StatusOr<size_t> LocalRegressionNeighbors(
    size_t n, const PrivacyBudget& budget, double beta, int dim,
    std::optional<double> heavy_moment = std::nullopt, double c_mult = 1.0);

// c (k eps^2)^(1/(2p)); +infinity for the INFINITE budget.
absl::StatusOr<double> LocalClipRadius(size_t k, const PrivacyBudget& budget,
                                       double moment_order,
                                       double c_mult = 1.0);

// c (eps N h^d)^(1/p); +infinity for the INFINITE budget.
absl::StatusOr<double> CentralClipRadius(const PrivacyBudget& budget, size_t n,
                                         double side, int dim,
                                         double moment_order,
                                         double c_mult = 1.0);

// Cube side for the central regressors, clamped to (0, 1].
//   bounded:    c [N^(-1/(2b+d)) + (eps N)^(-1/(d+b))]
//   heavy (p):  c [N^(-1/(2b+d)) + (eps N)^(-1/(p b + d(p-1)))]
absl::StatusOr<double> CentralRegressionSide(
    size_t n, const PrivacyBudget& budget, double beta, int dim,
    std::optional<double> heavy_moment = std::nullopt, double c_mult = 1.0);

}  // namespace labeldp

#endif  // LABELDP_SCHEDULES_H_
