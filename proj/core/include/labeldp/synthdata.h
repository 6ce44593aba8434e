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

// Joint laws of (X, Y) on [0,1]^d with exactly evaluable regression
// functions, used as ground truth for excess-risk evaluation.
//
// Shipped families
// ----------------
// Smooth classification (K >= 2, amplitude a in (0, 1/2)):
//
//   eta_j(x) = 1/K + (2a/K) sin(2 pi sum_i x_i + 2 pi (j - 2) / K).
//
// For K = 2 this is eta_2 = 1/2 + a s(x), eta_1 = 1/2 - a s(x) with
// s(x) = sin(2 pi sum_i x_i). The shifted sines sum to zero, so the eta_j sum
// to one exactly and lie in (0, 2/K).
//
//   Holder constant. |grad eta_j| <= (4 pi a sqrt(d)) / K and the range of
//   eta_j is 4a/K. Since min(u, v) <= u^beta v^(1-beta),
//     L = (4 pi a sqrt(d) / K)^beta (4a / K)^(1 - beta).
//
//   Margin (gamma = 1). The gap between two classes is
//   (4a/K)|sin(pi (i-j)/K)| |cos(2 pi S + phi)| with S = sum_i x_i, whose
//   density is at most 1 on [0, d]. Each such cosine has at most 2d + 1
//   zeros on [0, d], and |cos| < u on an interval of length <= u/2 around
//   each. Summing over the K(K-1)/2 pairs,
//     C_T = K(K-1)/2 * (2d + 1) / (2 A),  A = (4a/K) sin(pi / K).
//   For K = 2 this is (2d + 1) / (4a).
//
// Bump classification (K = 2): eta_2 = (1 + eta_v)/2 with
//   eta_v(x) = sum_k v_k phi((x - c_k)/h) h^beta,
//   phi(u) = prod_i max(0, 1 - 2|u_i|)^beta,
// supported on the first m cells (row-major) of the side-h partition.
// phi is d 2^beta - Holder, so eta_2 is (d 2^beta)-Holder across cells too.
//
// Smooth regression: eta(x) = a sin(2 pi sum_i x_i) with either
//   bounded noise  Y = eta(x) + U[-b, b], |Y| <= a + b <= T, or the
//   three-point law Y in {+T0, 0, -T0} with
//     P(+T0) = (M_p/T0^p + eta/T0)/2, P(0) = 1 - M_p/T0^p,
//     P(-T0) = (M_p/T0^p - eta/T0)/2,
//   so E[Y|x] = eta(x) and E[|Y|^p | x] = M_p. T0 is the largest atom with
//   valid probabilities at max|eta| = a: T0 = (M_p / a)^(1/(p-1)).
//
// The feature density is uniform (c = 1, theta = 1) for every family.

#ifndef LABELDP_SYNTHDATA_H_
#define LABELDP_SYNTHDATA_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "labeldp/core.h"
#include "labeldp/dataset.h"
#include "labeldp/integration.h"
#include "labeldp/random.h"

namespace labeldp {

enum class NoiseKind { kNone, kBounded, kHeavy };

class Distribution {
 public:
  // Writes (eta_1, .., eta_K) for x into the K-length output.
  using ClassProbabilityFn =
      std::function<void(std::span<const double>, std::span<double>)>;
  using RegressionFn = std::function<double(std::span<const double>)>;

  // `eta` must return a probability vector; this is checked on samples by the
  // test suite, not at construction.
  static absl::StatusOr<Distribution> Classification(int dim, int num_classes,
                                                     ClassProbabilityFn eta,
                                                     AssumptionParams params);
  // Y = eta(x) + U[-halfwidth, halfwidth]. Requires eta_bound + halfwidth <=
  // params.label_bound, where eta_bound bounds |eta| on the domain.
  static absl::StatusOr<Distribution> BoundedRegression(
      int dim, RegressionFn eta, double eta_bound, double halfwidth,
      AssumptionParams params);
  // Three-point law with atom T0 and moments (params.moment_order,
  // params.moment_bound). Requires M_p / T0^p <= 1 and
  // eta_bound <= M_p / T0^(p-1).
  static absl::StatusOr<Distribution> ThreePointRegression(
      int dim, RegressionFn eta, double eta_bound, double atom,
      AssumptionParams params);

  int dim() const { return dim_; }
  TaskKind task() const { return task_; }
  NoiseKind noise() const { return noise_; }
  // 0 for regression.
  int num_classes() const { return num_classes_; }
  const AssumptionParams& params() const { return params_; }
  double noise_halfwidth() const { return halfwidth_; }
  double heavy_atom() const { return atom_; }

  // Classification only.
  void ClassProbabilities(std::span<const double> x,
                          std::span<double> eta) const {
    class_eta_(x, eta);
  }
  // argmax_j eta_j(x), 1-based, smallest index on ties.
  int BayesClass(std::span<const double> x) const;

  // Regression only: eta(x) = E[Y | x].
  double RegressionFunction(std::span<const double> x) const {
    return regression_eta_(x);
  }
  // Var(Y | x), closed form per noise model.
  double ConditionalVariance(std::span<const double> x) const;
  // E[clip(Y, T) | x], exact for both noise models.
  double ClippedConditionalMean(std::span<const double> x,
                                double clip_radius) const;

  int SampleClass(std::span<const double> x, Rng& rng) const;
  double SampleValue(std::span<const double> x, Rng& rng) const;

 private:
  Distribution() = default;

  int dim_ = 1;
  TaskKind task_ = TaskKind::kClassification;
  NoiseKind noise_ = NoiseKind::kNone;
  int num_classes_ = 0;
  AssumptionParams params_;
  ClassProbabilityFn class_eta_;
  RegressionFn regression_eta_;
  double halfwidth_ = 0.0;
  double atom_ = 0.0;
};

// Amplitude drawn from `seed` when not given explicitly: 0.1 + 0.3 u.
double SeededAmplitude(uint64_t seed);

absl::StatusOr<Distribution> SmoothClassification(
    int dim, int num_classes, double beta, uint64_t seed,
    std::optional<double> amplitude = std::nullopt);

struct BumpConfig {
  double side = 0.25;      // h
  std::vector<int> signs;  // v in {-1, +1}^m; m = signs.size()
  double beta = 1.0;
};

// eta_v itself, without the (1 + .)/2 link. Exposed for tests.
absl::StatusOr<std::function<double(std::span<const double>)>> BumpFunction(
    const BumpConfig& config, int dim);

absl::StatusOr<Distribution> BumpClassification(const BumpConfig& config,
                                                int dim);

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kBounded;
  double label_bound = 1.0;  // T, bounded noise
  // Half-width b of the uniform noise; defaults to label_bound - amplitude.
  std::optional<double> halfwidth;
  double moment_order = 2.0;  // p, heavy noise
  double moment_bound = 1.0;  // M_p, heavy noise
};

absl::StatusOr<Distribution> SmoothRegression(
    int dim, double beta, const NoiseSpec& noise, uint64_t seed,
    std::optional<double> amplitude = std::nullopt);

// N i.i.d. draws, X uniform on [0,1]^d. Deterministic in `seed`.
absl::StatusOr<Dataset> SampleDataset(const Distribution& dist, size_t count,
                                      uint64_t seed);

// Classification: P(c*(X) != Y) = E[1 - eta*(X)].
// Regression: E[(Y - eta(X))^2] = E[Var(Y | X)].
absl::StatusOr<IntegralEstimate> BayesRisk(
    const Distribution& dist, const IntegrationOptions& options = {});

// E[clip(Y, T)] for the three-point law with atom `atom` and mean `eta`.
double ThreePointClippedMean(double eta, double atom, double clip_radius);

}  // namespace labeldp

#endif  // LABELDP_SYNTHDATA_H_
