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

#include "labeldp/cube_models.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

absl::Status CheckPoint(const CubePartition& partition,
                        std::span<const double> x) {
  return partition.CellIndex(x).status();
}

}  // namespace

absl::StatusOr<int> PredictCube(const CubeClassifier& model,
                                std::span<const double> x) {
  RETURN_IF_ERROR(CheckPoint(model.partition, x));
  return model.Predict(x);
}

absl::StatusOr<double> PredictCube(const CubeRegressor& model,
                                   std::span<const double> x) {
  RETURN_IF_ERROR(CheckPoint(model.partition, x));
  return model.Predict(x);
}

absl::StatusOr<CubeClassifier> FitLocalCubeClassifier(
    PointsView features, std::span<const PrivatizedBits> bits,
    int num_classes, double side) {
  if (num_classes < 2) return absl::InvalidArgumentError("need K >= 2");
  if (features.size() != bits.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        features.size(), " feature rows but ", bits.size(), " bit reports"));
  }
  RETURN_IF_ERROR(ValidateFeatures(features.dim, features.coords));
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(features.dim, side));
  const size_t cells = partition.num_cells();
  std::vector<int64_t> sums(cells * num_classes, 0);
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i].bits.size() != static_cast<size_t>(num_classes)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "bit report ", i, " has length ", bits[i].bits.size(),
          ", expected ", num_classes));
    }
    const size_t cell = partition.CellIndexUnchecked(features.row(i));
    int64_t* row = sums.data() + cell * num_classes;
    for (int j = 0; j < num_classes; ++j) row[j] += bits[i].bits[j];
  }
  CubeClassifier model{partition, num_classes, std::vector<int>(cells, 1)};
  for (size_t l = 0; l < cells; ++l) {
    const int64_t* row = sums.data() + l * num_classes;
    // max_element returns the first maximum: smallest-index tie-break.
    model.class_of[l] =
        static_cast<int>(std::max_element(row, row + num_classes) - row) + 1;
  }
  return model;
}

std::vector<int64_t> CellClassCounts(const Dataset& dataset,
                                     const CubePartition& partition) {
  const int k = dataset.num_classes();
  std::vector<int64_t> counts(partition.num_cells() * k, 0);
  for (size_t i = 0; i < dataset.size(); ++i) {
    const size_t cell = partition.CellIndexUnchecked(dataset.x(i));
    ++counts[cell * k + dataset.label_class(i) - 1];
  }
  return counts;
}

std::vector<double> ExpMechanismProbabilities(std::span<const int64_t> counts,
                                              const PrivacyBudget& budget,
                                              bool full_dp) {
  std::vector<double> probs(counts.size(), 0.0);
  const auto top = std::max_element(counts.begin(), counts.end());
  if (budget.is_infinite()) {
    probs[top - counts.begin()] = 1.0;
    return probs;
  }
  const double rate = budget.epsilon() / (full_dp ? 4.0 : 2.0);
  double total = 0.0;
  for (size_t j = 0; j < counts.size(); ++j) {
    probs[j] = std::exp(rate * static_cast<double>(counts[j] - *top));
    total += probs[j];
  }
  for (double& p : probs) p /= total;
  return probs;
}

absl::StatusOr<CubeClassifier> FitCentralExpClassifier(
    const Dataset& dataset, double side, const PrivacyBudget& budget,
    bool full_dp, Rng& rng) {
  if (dataset.task() != TaskKind::kClassification) {
    return absl::InvalidArgumentError("classification dataset required");
  }
  RETURN_IF_ERROR(budget.RequirePositive());
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(dataset.dim(), side));
  const int k = dataset.num_classes();
  const std::vector<int64_t> counts = CellClassCounts(dataset, partition);
  CubeClassifier model{partition, k,
                       std::vector<int>(partition.num_cells(), 1)};
  for (size_t l = 0; l < partition.num_cells(); ++l) {
    const auto probs = ExpMechanismProbabilities(
        std::span<const int64_t>(counts.data() + l * k, k), budget, full_dp);
    if (budget.is_infinite()) {
      model.class_of[l] = static_cast<int>(
          std::max_element(probs.begin(), probs.end()) - probs.begin()) + 1;
      continue;
    }
    const double u = rng.Uniform();
    double cumulative = 0.0;
    int chosen = k;
    for (int j = 0; j < k; ++j) {
      cumulative += probs[j];
      if (u < cumulative) {
        chosen = j + 1;
        break;
      }
    }
    model.class_of[l] = chosen;
  }
  return model;
}

absl::StatusOr<std::vector<double>> ExpMechanismModelDistribution(
    const Dataset& dataset, double side, const PrivacyBudget& budget,
    bool full_dp) {
  if (dataset.task() != TaskKind::kClassification) {
    return absl::InvalidArgumentError("classification dataset required");
  }
  RETURN_IF_ERROR(budget.RequirePositive());
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(dataset.dim(), side));
  const int k = dataset.num_classes();
  const size_t cells = partition.num_cells();
  const double models = std::pow(static_cast<double>(k), cells);
  if (models > static_cast<double>(kMaxAuditModels)) {
    return absl::ResourceExhaustedError(
        absl::StrCat("K^G = ", models, " models exceed 2^16"));
  }
  const std::vector<int64_t> counts = CellClassCounts(dataset, partition);
  std::vector<std::vector<double>> per_cell;
  for (size_t l = 0; l < cells; ++l) {
    per_cell.push_back(ExpMechanismProbabilities(
        std::span<const int64_t>(counts.data() + l * k, k), budget, full_dp));
  }
  std::vector<double> dist(static_cast<size_t>(models));
  for (size_t m = 0; m < dist.size(); ++m) {
    double p = 1.0;
    size_t rest = m;
    for (size_t l = 0; l < cells; ++l) {
      p *= per_cell[l][rest % k];
      rest /= k;
    }
    dist[m] = p;
  }
  return dist;
}

absl::StatusOr<CubeRegressor> FitCentralCubeRegressor(
    const Dataset& dataset, const CubeRegressorOptions& options,
    const PrivacyBudget& budget, Rng& rng) {
  if (dataset.task() != TaskKind::kRegression) {
    return absl::InvalidArgumentError("regression dataset required");
  }
  RETURN_IF_ERROR(budget.RequirePositive());
  const double t = options.bound;
  if (!(t > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("label bound / clip radius must be positive, got ", t));
  }
  if (!std::isfinite(t) && !budget.is_infinite()) {
    return absl::InvalidArgumentError(
        "an infinite bound needs the infinite budget");
  }
  if (options.full_dp &&
      !(options.density_lower_bound > 0.0 && options.corner_constant > 0.0)) {
    return absl::InvalidArgumentError("c and theta must be positive");
  }
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(dataset.dim(), options.side));
  const size_t cells = partition.num_cells();
  std::vector<double> sums(cells, 0.0);
  std::vector<int64_t> counts(cells, 0);
  for (size_t i = 0; i < dataset.size(); ++i) {
    double y = dataset.label_value(i);
    if (options.clipped) {
      y = Clip(y, t);
    } else if (!(std::abs(y) <= t)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "label ", y, " of sample ", i, " violates |y| <= T = ", t));
    }
    const size_t cell = partition.CellIndexUnchecked(dataset.x(i));
    sums[cell] += y;
    ++counts[cell];
  }

  CubeRegressor model{partition, std::vector<double>(cells, 0.0), counts,
                      0.0};
  const bool noisy = !budget.is_infinite();
  if (options.full_dp) {
    const double n0 = 0.5 * static_cast<double>(dataset.size()) *
                      options.density_lower_bound * options.corner_constant *
                      std::pow(partition.cell_width(), dataset.dim());
    model.count_floor = n0;
    const double scale = noisy ? 6.0 * t / (n0 * budget.epsilon()) : 0.0;
    for (size_t l = 0; l < cells; ++l) {
      const double denom = std::max(static_cast<double>(counts[l]), n0);
      model.value_of[l] = sums[l] / denom;
      if (noisy) model.value_of[l] += rng.Laplace(scale);
    }
    return model;
  }
  for (size_t l = 0; l < cells; ++l) {
    if (counts[l] == 0) continue;
    const double n = static_cast<double>(counts[l]);
    model.value_of[l] = sums[l] / n;
    if (noisy) model.value_of[l] += rng.Laplace(2.0 * t / (n * budget.epsilon()));
  }
  return model;
}

}  // namespace labeldp
