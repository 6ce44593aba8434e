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

#include "labeldp/synthdata.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "absl/strings/str_cat.h"
#include "labeldp/cube_partition.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double SumCoordinates(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c;
  return s;
}

// Integral of clip(v, T) over [lo, hi].
double ClipIntegral(double lo, double hi, double t) {
  double total = 0.0;
  // v < -T
  if (lo < -t) total += -t * (std::min(hi, -t) - lo);
  // -T <= v <= T
  const double a = std::max(lo, -t);
  const double b = std::min(hi, t);
  if (b > a) total += 0.5 * (b * b - a * a);
  // v > T
  if (hi > t) total += t * (hi - std::max(lo, t));
  return total;
}

absl::Status CheckAmplitude(double amplitude) {
  if (!(amplitude > 0.0 && amplitude < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("amplitude must lie in (0, 1/2), got ", amplitude));
  }
  return absl::OkStatus();
}

absl::Status CheckBeta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1], got ", beta));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Distribution> Distribution::Classification(
    int dim, int num_classes, ClassProbabilityFn eta,
    AssumptionParams params) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  RETURN_IF_ERROR(params.Validate());
  Distribution dist;
  dist.dim_ = dim;
  dist.task_ = TaskKind::kClassification;
  dist.noise_ = NoiseKind::kNone;
  dist.num_classes_ = num_classes;
  dist.params_ = params;
  dist.class_eta_ = std::move(eta);
  return dist;
}

absl::StatusOr<Distribution> Distribution::BoundedRegression(
    int dim, RegressionFn eta, double eta_bound, double halfwidth,
    AssumptionParams params) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  RETURN_IF_ERROR(params.Validate());
  if (!(halfwidth >= 0.0) || !(eta_bound >= 0.0)) {
    return absl::InvalidArgumentError(
        "noise half-width and eta bound must be nonnegative");
  }
  if (eta_bound + halfwidth > params.label_bound) {
    return absl::InvalidArgumentError(absl::StrCat(
        "max |Y| = ", eta_bound + halfwidth, " exceeds the label bound T = ",
        params.label_bound));
  }
  Distribution dist;
  dist.dim_ = dim;
  dist.task_ = TaskKind::kRegression;
  dist.noise_ = NoiseKind::kBounded;
  dist.params_ = params;
  dist.regression_eta_ = std::move(eta);
  dist.halfwidth_ = halfwidth;
  return dist;
}

absl::StatusOr<Distribution> Distribution::ThreePointRegression(
    int dim, RegressionFn eta, double eta_bound, double atom,
    AssumptionParams params) {
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  RETURN_IF_ERROR(params.Validate());
  if (!(atom > 0.0) || !std::isfinite(atom)) {
    return absl::InvalidArgumentError("three-point atom must be positive");
  }
  const double p = params.moment_order;
  const double mass = params.moment_bound / std::pow(atom, p);
  if (mass > 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "M_p / T0^p = ", mass, " exceeds 1; atom T0 = ", atom, " too small"));
  }
  // Relative slack for the boundary case T0 = (M_p / a)^(1/(p-1)).
  if (eta_bound / atom > mass * (1.0 + 1e-12)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "|eta| <= ", eta_bound, " makes P(Y = -T0) negative for T0 = ", atom));
  }
  Distribution dist;
  dist.dim_ = dim;
  dist.task_ = TaskKind::kRegression;
  dist.noise_ = NoiseKind::kHeavy;
  dist.params_ = params;
  dist.regression_eta_ = std::move(eta);
  dist.atom_ = atom;
  return dist;
}

int Distribution::BayesClass(std::span<const double> x) const {
  std::vector<double> eta(num_classes_);
  class_eta_(x, eta);
  return static_cast<int>(std::max_element(eta.begin(), eta.end()) -
                          eta.begin()) +
         1;
}

double Distribution::ConditionalVariance(std::span<const double> x) const {
  if (noise_ == NoiseKind::kBounded) return halfwidth_ * halfwidth_ / 3.0;
  const double eta = regression_eta_(x);
  const double second_moment = atom_ * atom_ * params_.moment_bound /
                               std::pow(atom_, params_.moment_order);
  return second_moment - eta * eta;
}

double Distribution::ClippedConditionalMean(std::span<const double> x,
                                            double clip_radius) const {
  const double eta = regression_eta_(x);
  if (noise_ == NoiseKind::kHeavy) {
    return ThreePointClippedMean(eta, atom_, clip_radius);
  }
  if (halfwidth_ == 0.0) return std::clamp(eta, -clip_radius, clip_radius);
  return ClipIntegral(eta - halfwidth_, eta + halfwidth_, clip_radius) /
         (2.0 * halfwidth_);
}

int Distribution::SampleClass(std::span<const double> x, Rng& rng) const {
  std::vector<double> eta(num_classes_);
  class_eta_(x, eta);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  for (int j = 0; j < num_classes_; ++j) {
    cumulative += eta[j];
    if (u < cumulative) return j + 1;
  }
  // Rounding left the cumulative sum just below 1; take the last class with
  // positive probability.
  for (int j = num_classes_ - 1; j >= 0; --j) {
    if (eta[j] > 0) return j + 1;
  }
  return num_classes_;
}

double Distribution::SampleValue(std::span<const double> x, Rng& rng) const {
  const double eta = regression_eta_(x);
  if (noise_ == NoiseKind::kBounded) {
    return eta + halfwidth_ * (2.0 * rng.Uniform() - 1.0);
  }
  const double mass =
      params_.moment_bound / std::pow(atom_, params_.moment_order);
  const double p_plus = 0.5 * (mass + eta / atom_);
  const double u = rng.Uniform();
  if (u < p_plus) return atom_;
  if (u < p_plus + (1.0 - mass)) return 0.0;
  return -atom_;
}

double SeededAmplitude(uint64_t seed) {
  Rng rng(DeriveSeed(seed, 0xa3));
  return 0.1 + 0.3 * rng.Uniform();
}

absl::StatusOr<Distribution> SmoothClassification(
    int dim, int num_classes, double beta, uint64_t seed,
    std::optional<double> amplitude) {
  RETURN_IF_ERROR(CheckBeta(beta));
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  const double a = amplitude.value_or(SeededAmplitude(seed));
  RETURN_IF_ERROR(CheckAmplitude(a));

  const double k = num_classes;
  const double gradient_bound = 4.0 * std::numbers::pi * a * std::sqrt(dim) / k;
  const double range = 4.0 * a / k;
  const double min_gap = range * std::sin(std::numbers::pi / k);

  AssumptionParams params;
  params.beta = beta;
  params.lipschitz =
      std::pow(gradient_bound, beta) * std::pow(range, 1.0 - beta);
  params.gamma = 1.0;
  params.margin_constant =
      0.5 * k * (k - 1) * (2.0 * dim + 1) / (2.0 * min_gap);

  auto eta = [num_classes, a](std::span<const double> x,
                              std::span<double> out) {
    const double phase = kTwoPi * SumCoordinates(x);
    const double k = num_classes;
    for (int j = 0; j < num_classes; ++j) {
      // Class index j + 1; the K = 2 shift puts +a s(x) on class 2.
      out[j] = 1.0 / k + (2.0 * a / k) * std::sin(phase + kTwoPi * (j - 1) / k);
    }
  };
  return Distribution::Classification(dim, num_classes, std::move(eta),
                                      params);
}

absl::StatusOr<std::function<double(std::span<const double>)>> BumpFunction(
    const BumpConfig& config, int dim) {
  RETURN_IF_ERROR(CheckBeta(config.beta));
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(dim, config.side));
  if (config.signs.size() > partition.num_cells()) {
    return absl::InvalidArgumentError(
        absl::StrCat(config.signs.size(), " active cubes requested but the "
                                          "partition has only ",
                     partition.num_cells()));
  }
  for (int v : config.signs) {
    if (v != 1 && v != -1) {
      return absl::InvalidArgumentError("bump signs must be -1 or +1");
    }
  }
  const double h = partition.cell_width();
  const double height = std::pow(h, config.beta);
  if (height >= 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "h^beta = ", height, " must be < 1 to keep eta inside [0, 1]"));
  }
  std::vector<int> signs = config.signs;
  const double beta = config.beta;
  return std::function<double(std::span<const double>)>(
      [partition, signs = std::move(signs), h, height,
       beta](std::span<const double> x) -> double {
        const size_t cell = partition.CellIndexUnchecked(x);
        if (cell >= signs.size()) return 0.0;
        const auto axes = partition.AxisIndices(cell);
        double phi = 1.0;
        for (size_t i = 0; i < x.size(); ++i) {
          const double u = (x[i] - (axes[i] + 0.5) * h) / h;
          const double t = std::max(0.0, 1.0 - 2.0 * std::abs(u));
          phi *= std::pow(t, beta);
        }
        return signs[cell] * phi * height;
      });
}

absl::StatusOr<Distribution> BumpClassification(const BumpConfig& config,
                                                int dim) {
  ASSIGN_OR_RETURN(auto bump, BumpFunction(config, dim));
  AssumptionParams params;
  params.beta = config.beta;
  params.lipschitz = dim * std::pow(2.0, config.beta);
  auto eta = [bump = std::move(bump)](std::span<const double> x,
                                      std::span<double> out) {
    const double v = bump(x);
    out[0] = 0.5 * (1.0 - v);
    out[1] = 0.5 * (1.0 + v);
  };
  return Distribution::Classification(dim, 2, std::move(eta), params);
}

absl::StatusOr<Distribution> SmoothRegression(int dim, double beta,
                                              const NoiseSpec& noise,
                                              uint64_t seed,
                                              std::optional<double> amplitude) {
  RETURN_IF_ERROR(CheckBeta(beta));
  if (dim < 1) return absl::InvalidArgumentError("dimension must be >= 1");
  const double a = amplitude.value_or(SeededAmplitude(seed));
  if (!(a > 0.0) || !std::isfinite(a)) {
    return absl::InvalidArgumentError("amplitude must be positive");
  }
  AssumptionParams params;
  params.beta = beta;
  params.lipschitz =
      std::pow(2.0 * std::numbers::pi * a * std::sqrt(dim), beta) *
      std::pow(2.0 * a, 1.0 - beta);
  auto eta = [a](std::span<const double> x) {
    return a * std::sin(kTwoPi * SumCoordinates(x));
  };

  if (noise.kind == NoiseKind::kBounded) {
    params.label_bound = noise.label_bound;
    const double b = noise.halfwidth.value_or(noise.label_bound - a);
    if (!(b >= 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "amplitude ", a, " leaves no room for noise under T = ",
          noise.label_bound));
    }
    return Distribution::BoundedRegression(dim, std::move(eta), a, b, params);
  }
  if (noise.kind == NoiseKind::kHeavy) {
    params.moment_order = noise.moment_order;
    params.moment_bound = noise.moment_bound;
    if (!(noise.moment_order > 1.0)) {
      return absl::InvalidArgumentError("moment order must exceed 1");
    }
    const double atom =
        std::pow(noise.moment_bound / a, 1.0 / (noise.moment_order - 1.0));
    return Distribution::ThreePointRegression(dim, std::move(eta), a, atom,
                                              params);
  }
  return absl::InvalidArgumentError("regression needs bounded or heavy noise");
}

absl::StatusOr<Dataset> SampleDataset(const Distribution& dist, size_t count,
                                      uint64_t seed) {
  if (count < 1) {
    return absl::InvalidArgumentError("sample count must be >= 1");
  }
  Rng rng(seed);
  const int d = dist.dim();
  std::vector<double> features(count * d);
  for (size_t i = 0; i < count; ++i) {
    std::span<double> row(features.data() + i * d, d);
    for (double& c : row) c = rng.Uniform();
  }
  if (dist.task() == TaskKind::kClassification) {
    std::vector<int> classes(count);
    for (size_t i = 0; i < count; ++i) {
      classes[i] = dist.SampleClass(
          std::span<const double>(features.data() + i * d, d), rng);
    }
    return Dataset::Classification(d, dist.num_classes(), std::move(features),
                                   std::move(classes));
  }
  std::vector<double> values(count);
  for (size_t i = 0; i < count; ++i) {
    values[i] = dist.SampleValue(
        std::span<const double>(features.data() + i * d, d), rng);
  }
  return Dataset::Regression(d, std::move(features), std::move(values));
}

absl::StatusOr<IntegralEstimate> BayesRisk(const Distribution& dist,
                                           const IntegrationOptions& options) {
  if (dist.task() == TaskKind::kClassification) {
    std::vector<double> eta(dist.num_classes());
    return IntegrateOverUnitCube(
        dist.dim(),
        [&](std::span<const double> x) {
          dist.ClassProbabilities(x, eta);
          return 1.0 - *std::max_element(eta.begin(), eta.end());
        },
        options);
  }
  return IntegrateOverUnitCube(
      dist.dim(),
      [&](std::span<const double> x) { return dist.ConditionalVariance(x); },
      options);
}

double ThreePointClippedMean(double eta, double atom, double clip_radius) {
  if (clip_radius >= atom) return eta;
  // Only the +-T0 atoms are clipped: T (P+ - P-) = T eta / T0.
  return clip_radius * eta / atom;
}

}  // namespace labeldp
