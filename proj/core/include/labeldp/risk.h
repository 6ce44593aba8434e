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

// Excess risk of fitted models against a known distribution, and the
// clipping-bias bound for heavy-tailed labels.

#ifndef LABELDP_RISK_H_
#define LABELDP_RISK_H_

#include <cstddef>
#include <functional>
#include <span>

#include "absl/status/statusor.h"
#include "labeldp/cube_models.h"
#include "labeldp/integration.h"
#include "labeldp/knn_regressor.h"
#include "labeldp/synthdata.h"

namespace labeldp {

struct RiskReport {
  double excess_risk = 0.0;
  // 0 for grid evaluation.
  double std_error = 0.0;
  IntegrationMethod method = IntegrationMethod::kGrid;
  size_t eval_points = 0;
};

using ClassifierFn = std::function<int(std::span<const double>)>;
using RegressorFn = std::function<double(std::span<const double>)>;

// Integral of eta*(x) - eta_{c(x)}(x) over [0,1]^d. `num_classes` is the
// model's K and must match the distribution.
absl::StatusOr<RiskReport> ExcessRiskClassifier(
    const ClassifierFn& model, int dim, int num_classes,
    const Distribution& dist, const IntegrationOptions& options = {});
absl::StatusOr<RiskReport> ExcessRiskClassifier(
    const CubeClassifier& model, const Distribution& dist,
    const IntegrationOptions& options = {});

// Integral of (eta_hat(x) - eta(x))^2 over [0,1]^d.
absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const RegressorFn& model, int dim, const Distribution& dist,
    const IntegrationOptions& options = {});
absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const CubeRegressor& model, const Distribution& dist,
    const IntegrationOptions& options = {});
absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const KnnRegressor& model, const Distribution& dist,
    const IntegrationOptions& options = {});

// M_p / (p - 1) * T^(1 - p): bound on |E[clip(Y, T) | x] - E[Y | x]| when
// E[|Y|^p | x] <= M_p.
absl::StatusOr<double> ClipBiasBound(double clip_radius, double moment_order,
                                     double moment_bound);

}  // namespace labeldp

#endif  // LABELDP_RISK_H_
