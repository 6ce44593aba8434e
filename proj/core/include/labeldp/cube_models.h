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

// Histogram-style estimators over the cube partition: the local K-bit
// classifier, the central exponential-mechanism classifier and the central
// (optionally clipped, optionally full-DP) cube-mean regressor.

#ifndef LABELDP_CUBE_MODELS_H_
#define LABELDP_CUBE_MODELS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "labeldp/core.h"
#include "labeldp/cube_partition.h"
#include "labeldp/dataset.h"
#include "labeldp/mechanisms.h"
#include "labeldp/random.h"

namespace labeldp {

// Piecewise-constant classifier: one class in {1..K} per cell.
struct CubeClassifier {
  CubePartition partition;
  int num_classes = 2;
  std::vector<int> class_of;

  // x must lie in [0,1]^d.
  int Predict(std::span<const double> x) const {
    return class_of[partition.CellIndexUnchecked(x)];
  }
};

// Piecewise-constant regressor: one value per cell.
struct CubeRegressor {
  CubePartition partition;
  std::vector<double> value_of;
  // Per-cell sample counts and the full-DP denominator floor (0 when unused),
  // kept for diagnostics.
  std::vector<int64_t> count_of;
  double count_floor = 0.0;

  double Predict(std::span<const double> x) const {
    return value_of[partition.CellIndexUnchecked(x)];
  }
};

// Checked prediction; rejects x outside [0,1]^d.
absl::StatusOr<int> PredictCube(const CubeClassifier& model,
                                std::span<const double> x);
absl::StatusOr<double> PredictCube(const CubeRegressor& model,
                                   std::span<const double> x);

// Local classifier. S_lj = sum of bit j over samples in cell l; each cell
// takes argmax_j S_lj with ties (and empty cells) going to the smallest
// class index.
absl::StatusOr<CubeClassifier> FitLocalCubeClassifier(
    PointsView features, std::span<const PrivatizedBits> bits,
    int num_classes, double side);

// n_lj: number of samples in cell l with class j + 1, row-major G x K.
std::vector<int64_t> CellClassCounts(const Dataset& dataset,
                                     const CubePartition& partition);

// Exponential-mechanism selection probabilities for one cell:
// P(j) ∝ exp(eps n_j / s), s = 2 (label CDP) or 4 (full DP), computed after
// subtracting max_j n_j. The INFINITE budget puts all mass on the smallest
// argmax.
std::vector<double> ExpMechanismProbabilities(std::span<const int64_t> counts,
                                              const PrivacyBudget& budget,
                                              bool full_dp);

// Central classifier: each cell's class drawn independently from
// ExpMechanismProbabilities of its counts.
absl::StatusOr<CubeClassifier> FitCentralExpClassifier(
    const Dataset& dataset, double side, const PrivacyBudget& budget,
    bool full_dp, Rng& rng);

// Exact output law of FitCentralExpClassifier over all K^G class
// assignments. Model index = sum_l (c_l - 1) K^l. Rejects K^G > 2^16.
absl::StatusOr<std::vector<double>> ExpMechanismModelDistribution(
    const Dataset& dataset, double side, const PrivacyBudget& budget,
    bool full_dp);

struct CubeRegressorOptions {
  double side = 0.1;
  // Label bound T (plain path, |y| <= T enforced) or clip radius.
  double bound = 1.0;
  bool clipped = false;
  bool full_dp = false;
  // c and theta of the full-DP floor n0 = N c theta h^d / 2, where h is the
  // effective cell width.
  double density_lower_bound = 1.0;
  double corner_constant = 1.0;
};

// Label CDP:  value_l = mean_l(y) + Lap(2T / (n_l eps)), 0 for empty cells.
// Full DP:    value_l = sum_l(y) / (n_l ∨ n0) + Lap(6T / (n0 eps)) for every
//             cell, empty ones included.
// Labels are clipped to [-T, T] first when `clipped` is set. The INFINITE
// budget drops the noise; T = +infinity is allowed only then.
absl::StatusOr<CubeRegressor> FitCentralCubeRegressor(
    const Dataset& dataset, const CubeRegressorOptions& options,
    const PrivacyBudget& budget, Rng& rng);

}  // namespace labeldp

#endif  // LABELDP_CUBE_MODELS_H_
