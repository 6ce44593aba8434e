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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "labeldp/cube_models.h"
#include "labeldp/random.h"
#include "labeldp/synthdata.h"

namespace labeldp {
namespace {

Distribution ConstantBinary(double eta2) {
  return *Distribution::Classification(
      1, 2,
      [eta2](std::span<const double>, std::span<double> eta) {
        eta[0] = 1 - eta2;
        eta[1] = eta2;
      },
      AssumptionParams{});
}

Distribution IdentityRegression() {
  AssumptionParams params;
  params.label_bound = 1.5;
  return *Distribution::BoundedRegression(
      1, [](std::span<const double> x) { return x[0]; }, 1.0, 0.5, params);
}

TEST(ExcessRiskClassifierTest, BayesClassifierHasZeroRisk) {
  absl::StatusOr<Distribution> dist = SmoothClassification(2, 3, 1.0, 7);
  ASSERT_TRUE(dist.ok());
  absl::StatusOr<RiskReport> r = ExcessRiskClassifier(
      [&](std::span<const double> x) { return dist->BayesClass(x); }, 2, 3,
      *dist);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->excess_risk, 0.0);
}

TEST(ExcessRiskClassifierTest, ConstantEta) {
  const Distribution dist = ConstantBinary(0.7);
  absl::StatusOr<RiskReport> wrong = ExcessRiskClassifier(
      [](std::span<const double>) { return 1; }, 1, 2, dist);
  ASSERT_TRUE(wrong.ok());
  EXPECT_NEAR(wrong->excess_risk, 0.4, 1e-12);
  const CubeClassifier model{*CubePartition::Make(1, 0.5), 2, {1, 2}};
  absl::StatusOr<RiskReport> half = ExcessRiskClassifier(model, dist);
  ASSERT_TRUE(half.ok());
  EXPECT_NEAR(half->excess_risk, 0.2, 1e-12);
}

TEST(ExcessRiskClassifierTest, Rejections) {
  const Distribution dist = ConstantBinary(0.7);
  EXPECT_FALSE(ExcessRiskClassifier(
                   [](std::span<const double>) { return 3; }, 1, 2, dist)
                   .ok());
  EXPECT_FALSE(ExcessRiskClassifier(
                   [](std::span<const double>) { return 0; }, 1, 2, dist)
                   .ok());
  EXPECT_FALSE(ExcessRiskClassifier(
                   [](std::span<const double>) { return 1; }, 2, 2, dist)
                   .ok());
  EXPECT_FALSE(ExcessRiskClassifier(
                   [](std::span<const double>) { return 1; }, 1, 3, dist)
                   .ok());
  EXPECT_FALSE(
      ExcessRiskRegressor([](std::span<const double>) { return 0.0; }, 1, dist)
          .ok());
}

TEST(ExcessRiskRegressorTest, ZeroPredictorOnIdentity) {
  const Distribution dist = IdentityRegression();
  absl::StatusOr<RiskReport> r = ExcessRiskRegressor(
      [](std::span<const double>) { return 0.0; }, 1, dist);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->excess_risk, 1.0 / 3, 1e-6);

  IntegrationOptions mc;
  mc.method = IntegrationMethod::kMonteCarlo;
  mc.monte_carlo_points = 200000;
  absl::StatusOr<RiskReport> m = ExcessRiskRegressor(
      [](std::span<const double>) { return 0.0; }, 1, dist, mc);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->method, IntegrationMethod::kMonteCarlo);
  EXPECT_GT(m->std_error, 0.0);
  EXPECT_NEAR(m->excess_risk, 1.0 / 3, 4 * m->std_error);
}

TEST(ExcessRiskRegressorTest, ConstantOffset) {
  const Distribution dist = IdentityRegression();
  absl::StatusOr<RiskReport> r = ExcessRiskRegressor(
      [](std::span<const double> x) { return x[0] + 0.1; }, 1, dist);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->excess_risk, 0.01, 1e-12);
}

TEST(ExcessRiskRegressorTest, CubeModelClosedForm) {
  // Piecewise constant 1/4, 3/4 against eta = x: 2 * int_0^{1/2} (x - 1/4)^2
  // = 1/48.
  const Distribution dist = IdentityRegression();
  const CubeRegressor model{*CubePartition::Make(1, 0.5), {0.25, 0.75}, {}, 0};
  absl::StatusOr<RiskReport> r = ExcessRiskRegressor(model, dist);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->excess_risk, 1.0 / 48, 1e-6);
}

TEST(ExcessRiskRegressorTest, GridAndMonteCarloAgree) {
  absl::StatusOr<Distribution> dist =
      SmoothRegression(2, 1.0, NoiseSpec{}, 11);
  ASSERT_TRUE(dist.ok());
  auto model = [](std::span<const double> x) { return 0.3 * x[0] - 0.1; };
  absl::StatusOr<RiskReport> grid = ExcessRiskRegressor(model, 2, *dist);
  IntegrationOptions mc;
  mc.method = IntegrationMethod::kMonteCarlo;
  mc.monte_carlo_points = 400000;
  absl::StatusOr<RiskReport> sampled = ExcessRiskRegressor(model, 2, *dist, mc);
  ASSERT_TRUE(grid.ok());
  ASSERT_TRUE(sampled.ok());
  EXPECT_EQ(grid->method, IntegrationMethod::kGrid);
  EXPECT_NEAR(grid->excess_risk, sampled->excess_risk,
              4 * sampled->std_error + 1e-4);
}

TEST(ExcessRiskTest, NonnegativeForRandomModels) {
  Rng rng(21);
  absl::StatusOr<Distribution> cls = SmoothClassification(1, 4, 0.7, 3);
  absl::StatusOr<Distribution> reg = SmoothRegression(1, 0.7, NoiseSpec{}, 3);
  ASSERT_TRUE(cls.ok() && reg.ok());
  for (int t = 0; t < 30; ++t) {
    const CubePartition part =
        *CubePartition::Make(1, 0.05 + 0.95 * rng.Uniform());
    CubeClassifier c{part, 4, {}};
    CubeRegressor r{part, {}, {}, 0};
    for (size_t l = 0; l < part.num_cells(); ++l) {
      c.class_of.push_back(1 + rng.UniformInt(4));
      r.value_of.push_back(2 * rng.Uniform() - 1);
    }
    EXPECT_GE(ExcessRiskClassifier(c, *cls)->excess_risk, 0.0);
    EXPECT_GE(ExcessRiskRegressor(r, *reg)->excess_risk, 0.0);
  }
}

TEST(ClipBiasBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(*ClipBiasBound(10, 2, 1), 0.1);
  EXPECT_DOUBLE_EQ(*ClipBiasBound(4, 3, 1) / *ClipBiasBound(8, 3, 1), 4.0);
  EXPECT_FALSE(ClipBiasBound(10, 1, 1).ok());
  EXPECT_FALSE(ClipBiasBound(0, 2, 1).ok());
  EXPECT_FALSE(ClipBiasBound(10, 2, 0).ok());
}

TEST(ClipBiasBoundTest, ThreePointBiasWithinBound) {
  for (double p : {2.0, 3.0}) {
    NoiseSpec noise;
    noise.kind = NoiseKind::kHeavy;
    noise.moment_order = p;
    noise.moment_bound = 1.0;
    absl::StatusOr<Distribution> dist = SmoothRegression(1, 1.0, noise, 5);
    ASSERT_TRUE(dist.ok());
    const double bound_scale = 1.0;
    for (double t : {2.0, 5.0, 10.0, 20.0}) {
      const double bound = *ClipBiasBound(t, p, bound_scale);
      for (int i = 0; i <= 200; ++i) {
        const std::vector<double> x = {i / 200.0};
        const double bias = std::abs(dist->ClippedConditionalMean(x, t) -
                                     dist->RegressionFunction(x));
        EXPECT_LE(bias, bound + 1e-12) << "p=" << p << " T=" << t;
      }
    }
  }
}

}  // namespace
}  // namespace labeldp
