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

#include "labeldp/schedules.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

absl::Status CheckCommon(size_t n, const PrivacyBudget& budget, double beta,
                         int dim, double c_mult) {
  if (n < 1) return absl::InvalidArgumentError("N must be >= 1");
  RETURN_IF_ERROR(budget.RequirePositive());
  if (!(beta > 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1], got ", beta));
  }
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (!(c_mult > 0.0) || !std::isfinite(c_mult)) {
    return absl::InvalidArgumentError(
        absl::StrCat("constant multiplier must be positive, got ", c_mult));
  }
  return absl::OkStatus();
}

absl::Status CheckMoment(double p) {
  if (!(p >= 2.0) || !std::isfinite(p)) {
    return absl::InvalidArgumentError(
        absl::StrCat("moment order must be >= 2, got ", p));
  }
  return absl::OkStatus();
}

double ClampSide(double h) { return std::min(h, 1.0); }

}  // namespace

absl::StatusOr<double> LocalClassificationSide(size_t n,
                                               const PrivacyBudget& budget,
                                               int num_classes, double beta,
                                               int dim, double c_mult) {
  RETURN_IF_ERROR(CheckCommon(n, budget, beta, dim, c_mult));
  if (num_classes < 2) return absl::InvalidArgumentError("need K >= 2");
  const double eps = budget.epsilon();
  const double effective = n * std::min(eps * eps, 1.0) / std::log(num_classes);
  return ClampSide(c_mult * std::pow(effective, -1.0 / (2 * beta + dim)));
}

absl::StatusOr<double> CentralClassificationSide(size_t n,
                                                 const PrivacyBudget& budget,
                                                 int num_classes, double beta,
                                                 int dim, double c_mult) {
  RETURN_IF_ERROR(CheckCommon(n, budget, beta, dim, c_mult));
  if (num_classes < 2) return absl::InvalidArgumentError("need K >= 2");
  const double log_k = std::log(num_classes);
  const double privacy_term =
      budget.is_infinite()
          ? 0.0
          : std::pow(log_k / (budget.epsilon() * n), 1.0 / (beta + dim));
  const double sampling_term = std::pow(log_k / n, 1.0 / (2 * beta + dim));
  return ClampSide(c_mult * (privacy_term + sampling_term));
}

absl::StatusOr<size_t> LocalRegressionNeighbors(
    size_t n, const PrivacyBudget& budget, double beta, int dim,
    std::optional<double> heavy_moment, double c_mult) {
  RETURN_IF_ERROR(CheckCommon(n, budget, beta, dim, c_mult));
  const double nn = static_cast<double>(n);
  const double non_private = std::pow(nn, 2 * beta / (2 * beta + dim));
  double k = 0.0;
  if (!heavy_moment.has_value()) {
    const double eps = std::min(budget.epsilon(), 1.0);
    k = non_private * std::pow(eps, -2.0 * dim / (dim + 2 * beta));
  } else {
    const double p = *heavy_moment;
    RETURN_IF_ERROR(CheckMoment(p));
    if (budget.is_infinite()) {
      k = non_private;
    } else {
      const double eps = budget.epsilon();
      const double exponent = 2 * p * beta / (2 * p * beta + dim * (p - 1));
      k = std::max(std::pow(nn * eps * eps, exponent), non_private);
    }
  }
  k = std::round(c_mult * k);
  return static_cast<size_t>(std::clamp(k, 1.0, nn));
}

absl::StatusOr<double> LocalClipRadius(size_t k, const PrivacyBudget& budget,
                                       double moment_order, double c_mult) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  RETURN_IF_ERROR(budget.RequirePositive());
  RETURN_IF_ERROR(CheckMoment(moment_order));
  if (!(c_mult > 0.0)) {
    return absl::InvalidArgumentError("constant multiplier must be positive");
  }
  if (budget.is_infinite()) return std::numeric_limits<double>::infinity();
  const double eps = budget.epsilon();
  return c_mult * std::pow(k * eps * eps, 1.0 / (2 * moment_order));
}

absl::StatusOr<double> CentralClipRadius(const PrivacyBudget& budget, size_t n,
                                         double side, int dim,
                                         double moment_order, double c_mult) {
  if (n < 1) return absl::InvalidArgumentError("N must be >= 1");
  RETURN_IF_ERROR(budget.RequirePositive());
  RETURN_IF_ERROR(CheckMoment(moment_order));
  if (!(side > 0.0) || dim < 1 || !(c_mult > 0.0)) {
    return absl::InvalidArgumentError(
        "side, dimension and multiplier must be positive");
  }
  if (budget.is_infinite()) return std::numeric_limits<double>::infinity();
  return c_mult * std::pow(budget.epsilon() * n * std::pow(side, dim),
                           1.0 / moment_order);
}

absl::StatusOr<double> CentralRegressionSide(size_t n,
                                             const PrivacyBudget& budget,
                                             double beta, int dim,
                                             std::optional<double> heavy_moment,
                                             double c_mult) {
  RETURN_IF_ERROR(CheckCommon(n, budget, beta, dim, c_mult));
  const double nn = static_cast<double>(n);
  const double sampling_term = std::pow(nn, -1.0 / (2 * beta + dim));
  double privacy_exponent = 1.0 / (dim + beta);
  if (heavy_moment.has_value()) {
    const double p = *heavy_moment;
    RETURN_IF_ERROR(CheckMoment(p));
    privacy_exponent = 1.0 / (p * beta + dim * (p - 1));
  }
  const double privacy_term =
      budget.is_infinite()
          ? 0.0
          : std::pow(budget.epsilon() * nn, -privacy_exponent);
  return ClampSide(c_mult * (sampling_term + privacy_term));
}

}  // namespace labeldp
