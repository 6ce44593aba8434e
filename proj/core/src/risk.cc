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

#include "labeldp/risk.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

RiskReport ToReport(const IntegralEstimate& estimate) {
  return RiskReport{estimate.value, estimate.std_error, estimate.method,
                    estimate.eval_points};
}

absl::Status CheckDim(int model_dim, const Distribution& dist) {
  if (model_dim != dist.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "model dimension ", model_dim, " != distribution dimension ",
        dist.dim()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RiskReport> ExcessRiskClassifier(
    const ClassifierFn& model, int dim, int num_classes,
    const Distribution& dist, const IntegrationOptions& options) {
  if (dist.task() != TaskKind::kClassification) {
    return absl::InvalidArgumentError("classification distribution required");
  }
  RETURN_IF_ERROR(CheckDim(dim, dist));
  if (num_classes != dist.num_classes()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "model has K = ", num_classes, ", distribution has K = ",
        dist.num_classes()));
  }
  std::vector<double> eta(num_classes);
  bool bad_class = false;
  auto integrand = [&](std::span<const double> x) {
    dist.ClassProbabilities(x, eta);
    const int c = model(x);
    if (c < 1 || c > num_classes) {
      bad_class = true;
      return 0.0;
    }
    return *std::max_element(eta.begin(), eta.end()) - eta[c - 1];
  };
  ASSIGN_OR_RETURN(IntegralEstimate estimate,
                   IntegrateOverUnitCube(dim, integrand, options));
  if (bad_class) {
    return absl::InvalidArgumentError("model predicted a class outside 1..K");
  }
  return ToReport(estimate);
}

absl::StatusOr<RiskReport> ExcessRiskClassifier(
    const CubeClassifier& model, const Distribution& dist,
    const IntegrationOptions& options) {
  return ExcessRiskClassifier(
      [&model](std::span<const double> x) { return model.Predict(x); },
      model.partition.dim(), model.num_classes, dist, options);
}

absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const RegressorFn& model, int dim, const Distribution& dist,
    const IntegrationOptions& options) {
  if (dist.task() != TaskKind::kRegression) {
    return absl::InvalidArgumentError("regression distribution required");
  }
  RETURN_IF_ERROR(CheckDim(dim, dist));
  auto integrand = [&](std::span<const double> x) {
    const double diff = model(x) - dist.RegressionFunction(x);
    return diff * diff;
  };
  ASSIGN_OR_RETURN(IntegralEstimate estimate,
                   IntegrateOverUnitCube(dim, integrand, options));
  return ToReport(estimate);
}

absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const CubeRegressor& model, const Distribution& dist,
    const IntegrationOptions& options) {
  return ExcessRiskRegressor(
      [&model](std::span<const double> x) { return model.Predict(x); },
      model.partition.dim(), dist, options);
}

absl::StatusOr<RiskReport> ExcessRiskRegressor(
    const KnnRegressor& model, const Distribution& dist,
    const IntegrationOptions& options) {
  return ExcessRiskRegressor(
      [&model](std::span<const double> x) { return model.Predict(x); },
      model.dim(), dist, options);
}

absl::StatusOr<double> ClipBiasBound(double clip_radius, double moment_order,
                                     double moment_bound) {
  if (!(moment_order > 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("moment order must exceed 1, got ", moment_order));
  }
  if (!(clip_radius > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip radius must be positive, got ", clip_radius));
  }
  if (!(moment_bound > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("moment bound must be positive, got ", moment_bound));
  }
  return moment_bound / (moment_order - 1.0) *
         std::pow(clip_radius, 1.0 - moment_order);
}

}  // namespace labeldp
