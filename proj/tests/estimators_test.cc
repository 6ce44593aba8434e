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
#include <numeric>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "labeldp/knn_regressor.h"
#include "labeldp/mechanisms.h"
#include "labeldp/random.h"

namespace labeldp {
namespace {

PrivacyBudget Eps(double e) { return *PrivacyBudget::Epsilon(e); }
const PrivacyBudget kInf = PrivacyBudget::Infinite();

// Oracle cell lookup: scan the per-axis boundaries j/m.
size_t OracleCell(std::span<const double> x, int m) {
  size_t cell = 0;
  for (double c : x) {
    int j = 0;
    while (j + 1 < m && c >= static_cast<double>(j + 1) / m) ++j;
    cell = cell * m + j;
  }
  return cell;
}

int CellsPerAxis(double side) {
  int m = 1;
  while (1.0 / m > side + 1e-12) ++m;
  return m;
}

struct TinyData {
  int dim;
  std::vector<double> x;
  std::vector<int> classes;
  std::vector<double> values;
};

TinyData RandomTiny(Rng& rng, int k) {
  TinyData t;
  t.dim = 1 + rng.UniformInt(2);
  const int n = 1 + rng.UniformInt(50);
  t.x.resize(n * t.dim);
  for (double& c : t.x) {
    // Some points exactly on cell boundaries.
    c = rng.Bernoulli(0.1) ? rng.UniformInt(5) / 4.0 : rng.Uniform();
  }
  for (int i = 0; i < n; ++i) {
    t.classes.push_back(1 + rng.UniformInt(k));
    t.values.push_back(10.0 * rng.Uniform() - 5.0);
  }
  return t;
}

std::vector<int> OraclePlurality(const TinyData& t, int k, int m) {
  const size_t cells = static_cast<size_t>(std::pow(m, t.dim));
  std::vector<std::vector<int>> counts(cells, std::vector<int>(k, 0));
  for (size_t i = 0; i < t.classes.size(); ++i) {
    std::span<const double> x(t.x.data() + i * t.dim, t.dim);
    ++counts[OracleCell(x, m)][t.classes[i] - 1];
  }
  std::vector<int> out(cells, 1);
  for (size_t l = 0; l < cells; ++l) {
    int best = 0;
    for (int j = 1; j < k; ++j) {
      if (counts[l][j] > counts[l][best]) best = j;
    }
    out[l] = best + 1;
  }
  return out;
}

TEST(LocalCubeClassifierTest, HandCount) {
  std::vector<double> x = {0.1, 0.5, 0.9};
  std::vector<PrivatizedBits> bits = {{{1, 0}}, {{1, 0}}, {{0, 1}}};
  absl::StatusOr<CubeClassifier> model =
      FitLocalCubeClassifier(PointsView{1, x}, bits, 2, 1.0);
  ASSERT_TRUE(model.ok());
  EXPECT_EQ(model->class_of, std::vector<int>{1});
}

TEST(LocalCubeClassifierTest, AllZeroBitsGiveClassOne) {
  std::vector<double> x = {0.1, 0.5, 0.9, 0.3};
  std::vector<PrivatizedBits> bits(4, PrivatizedBits{{0, 0, 0}});
  absl::StatusOr<CubeClassifier> model =
      FitLocalCubeClassifier(PointsView{1, x}, bits, 3, 0.2);
  ASSERT_TRUE(model.ok());
  EXPECT_EQ(model->class_of, std::vector<int>(5, 1));
}

TEST(LocalCubeClassifierTest, RejectsMisaligned) {
  std::vector<double> x = {0.1, 0.5};
  std::vector<PrivatizedBits> bits = {{{1, 0}}};
  EXPECT_FALSE(FitLocalCubeClassifier(PointsView{1, x}, bits, 2, 0.5).ok());
  std::vector<PrivatizedBits> wrong_len = {{{1, 0, 0}}, {{1, 0}}};
  EXPECT_FALSE(
      FitLocalCubeClassifier(PointsView{1, x}, wrong_len, 2, 0.5).ok());
}

TEST(OracleEquivalenceTest, LocalClassifierIsPluralityAtInfinity) {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + rng.UniformInt(4);
    const TinyData t = RandomTiny(rng, k);
    const double side = 0.15 + 0.85 * rng.Uniform();
    std::vector<PrivatizedBits> bits;
    for (int y : t.classes) bits.push_back(*PrivatizeKBit(y, k, kInf, rng));
    absl::StatusOr<CubeClassifier> model =
        FitLocalCubeClassifier(PointsView{t.dim, t.x}, bits, k, side);
    ASSERT_TRUE(model.ok());
    EXPECT_EQ(model->class_of, OraclePlurality(t, k, CellsPerAxis(side)));
  }
}

TEST(OracleEquivalenceTest, ExpClassifierIsPluralityAtInfinity) {
  Rng rng(102);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + rng.UniformInt(4);
    const TinyData t = RandomTiny(rng, k);
    const double side = 0.15 + 0.85 * rng.Uniform();
    const Dataset data = *Dataset::Classification(t.dim, k, t.x, t.classes);
    for (bool full : {false, true}) {
      absl::StatusOr<CubeClassifier> model =
          FitCentralExpClassifier(data, side, kInf, full, rng);
      ASSERT_TRUE(model.ok());
      EXPECT_EQ(model->class_of, OraclePlurality(t, k, CellsPerAxis(side)));
    }
  }
}

TEST(OracleEquivalenceTest, CubeRegressorIsCellMeanAtInfinity) {
  Rng rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const TinyData t = RandomTiny(rng, 2);
    const double side = 0.15 + 0.85 * rng.Uniform();
    const int m = CellsPerAxis(side);
    const size_t cells = static_cast<size_t>(std::pow(m, t.dim));
    const Dataset data = *Dataset::Regression(t.dim, t.x, t.values);
    for (bool clipped : {false, true}) {
      const double bound = clipped ? 2.0 : 5.0;
      std::vector<double> sum(cells, 0.0);
      std::vector<int> count(cells, 0);
      for (size_t i = 0; i < t.values.size(); ++i) {
        const size_t c =
            OracleCell(std::span<const double>(t.x.data() + i * t.dim, t.dim), m);
        sum[c] += clipped ? std::clamp(t.values[i], -bound, bound) : t.values[i];
        ++count[c];
      }
      CubeRegressorOptions options;
      options.side = side;
      options.bound = bound;
      options.clipped = clipped;
      absl::StatusOr<CubeRegressor> model =
          FitCentralCubeRegressor(data, options, kInf, rng);
      ASSERT_TRUE(model.ok());
      for (size_t c = 0; c < cells; ++c) {
        EXPECT_EQ(model->value_of[c], count[c] ? sum[c] / count[c] : 0.0);
      }
      // Full DP divides by max(n_l, n0).
      options.full_dp = true;
      absl::StatusOr<CubeRegressor> full =
          FitCentralCubeRegressor(data, options, kInf, rng);
      ASSERT_TRUE(full.ok());
      const double n0 = 0.5 * t.values.size() * std::pow(1.0 / m, t.dim);
      for (size_t c = 0; c < cells; ++c) {
        EXPECT_EQ(full->value_of[c], sum[c] / std::max<double>(count[c], n0));
      }
    }
  }
}

TEST(ExpMechanismTest, ClosedFormProbabilities) {
  const std::vector<int64_t> counts = {3, 1};
  std::vector<double> p = ExpMechanismProbabilities(counts, Eps(2), false);
  EXPECT_NEAR(p[0], std::exp(2.0) / (std::exp(2.0) + 1), 1e-15);
  EXPECT_NEAR(p[0], 0.8808, 1e-4);
  p = ExpMechanismProbabilities(counts, Eps(2), true);
  EXPECT_NEAR(p[0], std::exp(1.0) / (std::exp(1.0) + 1), 1e-15);
  p = ExpMechanismProbabilities(std::vector<int64_t>{4, 4, 4}, Eps(1), false);
  for (double v : p) EXPECT_NEAR(v, 1.0 / 3, 1e-15);
  p = ExpMechanismProbabilities(std::vector<int64_t>{2, 5, 5}, kInf, false);
  EXPECT_EQ(p, (std::vector<double>{0, 1, 0}));
  // No overflow at huge eps * n.
  p = ExpMechanismProbabilities(std::vector<int64_t>{100000, 99999}, Eps(1e4),
                                false);
  EXPECT_EQ(p[0], 1.0);
  EXPECT_FALSE(std::isnan(p[1]));
}

Dataset SingleCellDataset(const std::vector<int64_t>& counts) {
  std::vector<double> x;
  std::vector<int> y;
  for (size_t j = 0; j < counts.size(); ++j) {
    for (int64_t c = 0; c < counts[j]; ++c) {
      x.push_back(0.5);
      y.push_back(static_cast<int>(j) + 1);
    }
  }
  return *Dataset::Classification(1, static_cast<int>(counts.size()), x, y);
}

TEST(ExpMechanismTest, EmpiricalSelectionFrequencies) {
  Rng pattern_rng(104);
  Rng rng(105);
  const int draws = 100000;
  for (int pattern = 0; pattern < 20; ++pattern) {
    const int k = 2 + pattern_rng.UniformInt(3);
    std::vector<int64_t> counts(k);
    for (int64_t& c : counts) c = pattern_rng.UniformInt(6);
    if (std::accumulate(counts.begin(), counts.end(), int64_t{0}) == 0) {
      counts[0] = 1;
    }
    const double eps = 0.25 + pattern_rng.Uniform();
    const Dataset data = SingleCellDataset(counts);
    std::vector<double> freq(k, 0.0);
    for (int i = 0; i < draws; ++i) {
      ++freq[FitCentralExpClassifier(data, 1.0, Eps(eps), false, rng)
                 ->class_of[0] -
             1];
    }
    double z = 0.0;
    for (int64_t c : counts) z += std::exp(eps * c / 2);
    for (int j = 0; j < k; ++j) {
      const double p = std::exp(eps * counts[j] / 2) / z;
      EXPECT_NEAR(freq[j] / draws, p, 3 * std::sqrt(p * (1 - p) / draws))
          << "pattern " << pattern << " class " << j + 1;
    }
  }
}

TEST(ExpMechanismTest, ModelDistributionIsProductOfCells) {
  const Dataset data =
      *Dataset::Classification(1, 2, {0.1, 0.2, 0.7, 0.8, 0.9}, {1, 2, 2, 2, 1});
  absl::StatusOr<std::vector<double>> dist =
      ExpMechanismModelDistribution(data, 0.5, Eps(1), false);
  ASSERT_TRUE(dist.ok());
  ASSERT_EQ(dist->size(), 4u);
  // Cell 0 counts (1,1), cell 1 counts (1,2); index = (c0 - 1) + 2 (c1 - 1).
  const double a = std::exp(0.5), b = std::exp(1.0);
  const double p1[2] = {0.5, 0.5};
  const double p2[2] = {a / (a + b), b / (a + b)};
  for (int c0 = 0; c0 < 2; ++c0) {
    for (int c1 = 0; c1 < 2; ++c1) {
      EXPECT_NEAR((*dist)[c0 + 2 * c1], p1[c0] * p2[c1], 1e-15);
    }
  }
  EXPECT_NEAR(std::accumulate(dist->begin(), dist->end(), 0.0), 1.0, 1e-15);
}

TEST(CubeRegressorTest, Examples) {
  Rng rng(106);
  CubeRegressorOptions options;
  options.side = 1.0;
  options.bound = 3.0;
  const Dataset two = *Dataset::Regression(1, {0.2, 0.7}, {1.0, 3.0});
  EXPECT_EQ(FitCentralCubeRegressor(two, options, kInf, rng)->value_of[0], 2.0);

  const Dataset sym = *Dataset::Regression(1, {0.2, 0.7}, {5.0, -5.0});
  options.bound = 2.0;
  options.clipped = true;
  EXPECT_EQ(FitCentralCubeRegressor(sym, options, kInf, rng)->value_of[0], 0.0);
  options.clipped = false;
  EXPECT_FALSE(FitCentralCubeRegressor(sym, options, kInf, rng).ok());
  options.bound = 0.0;
  EXPECT_FALSE(FitCentralCubeRegressor(two, options, kInf, rng).ok());
  const Dataset cls = *Dataset::Classification(1, 2, {0.5}, {1});
  options.bound = 1.0;
  EXPECT_FALSE(FitCentralCubeRegressor(cls, options, kInf, rng).ok());
}

TEST(CubeRegressorTest, FullDpFloor) {
  // N = 1000, h = 0.1, c = theta = 1: n0 = 50. Put 10 samples in cell 0.
  std::vector<double> x, y;
  for (int i = 0; i < 1000; ++i) {
    x.push_back(i < 10 ? 0.05 : 0.5);
    y.push_back(i < 10 ? 1.0 : 0.0);
  }
  const Dataset data = *Dataset::Regression(1, x, y);
  CubeRegressorOptions options;
  options.side = 0.1;
  options.bound = 1.0;
  options.full_dp = true;
  Rng rng(107);
  absl::StatusOr<CubeRegressor> model =
      FitCentralCubeRegressor(data, options, kInf, rng);
  ASSERT_TRUE(model.ok());
  EXPECT_DOUBLE_EQ(model->count_floor, 50.0);
  EXPECT_DOUBLE_EQ(model->value_of[0], 10.0 / 50.0);
  EXPECT_EQ(model->count_of[0], 10);
}

TEST(CubeRegressorTest, NoiseScales) {
  // Single cell with n samples: value - mean ~ Lap(2T / (n eps)).
  const int n = 20, draws = 200000;
  const double t = 1.5, eps = 0.8;
  std::vector<double> x(n, 0.5), y(n, 0.25);
  const Dataset data = *Dataset::Regression(1, x, y);
  Rng rng(108);
  for (bool full : {false, true}) {
    CubeRegressorOptions options;
    options.side = 1.0;
    options.bound = t;
    options.full_dp = full;
    double sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double w =
          FitCentralCubeRegressor(data, options, Eps(eps), rng)->value_of[0] -
          0.25 * n / (full ? std::max(n, n / 2) : n);
      sum2 += w * w;
    }
    // full: n0 = n / 2 <= n, scale 6T / (n0 eps).
    const double scale = full ? 6 * t / (0.5 * n * eps) : 2 * t / (n * eps);
    const double var = 2 * scale * scale;
    EXPECT_NEAR(sum2 / draws, var, 3 * std::sqrt(20 * std::pow(scale, 4) / draws));
  }
}

TEST(CubeRegressorTest, EmptyCells) {
  const Dataset data = *Dataset::Regression(1, {0.1}, {0.5});
  Rng rng(109);
  CubeRegressorOptions options;
  options.side = 0.5;
  options.bound = 1.0;
  // Label CDP: empty cell stays exactly 0 even with noise.
  absl::StatusOr<CubeRegressor> model =
      FitCentralCubeRegressor(data, options, Eps(1), rng);
  ASSERT_TRUE(model.ok());
  EXPECT_EQ(model->value_of[1], 0.0);
  // Full DP: every cell is noised.
  options.full_dp = true;
  model = FitCentralCubeRegressor(data, options, Eps(1), rng);
  ASSERT_TRUE(model.ok());
  EXPECT_NE(model->value_of[1], 0.0);
}

TEST(CubeRegressorTest, ShiftEquivariance) {
  Rng rng(110);
  for (int trial = 0; trial < 50; ++trial) {
    TinyData t = RandomTiny(rng, 2);
    const double alpha = 4.0 * rng.Uniform() - 2.0;
    CubeRegressorOptions options;
    options.side = 0.3;
    options.bound = 5.0;
    const Dataset base = *Dataset::Regression(t.dim, t.x, t.values);
    std::vector<double> shifted = t.values;
    for (double& v : shifted) v += alpha;
    const Dataset moved = *Dataset::Regression(t.dim, t.x, shifted);
    const CubeRegressor a = *FitCentralCubeRegressor(base, options, kInf, rng);
    CubeRegressorOptions wide = options;
    wide.bound = 5.0 + std::abs(alpha);
    const CubeRegressor b = *FitCentralCubeRegressor(moved, wide, kInf, rng);
    for (size_t c = 0; c < a.value_of.size(); ++c) {
      if (a.count_of[c] == 0) continue;
      EXPECT_NEAR(b.value_of[c], a.value_of[c] + alpha, 1e-12);
    }
  }
}

TEST(PredictCubeTest, Examples) {
  const CubePartition one = *CubePartition::Make(1, 1.0);
  CubeClassifier cls{one, 2, {2}};
  for (double x : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(*PredictCube(cls, std::vector<double>{x}), 2);
  }
  const CubePartition two = *CubePartition::Make(1, 0.5);
  CubeRegressor reg{two, {0.1, 0.9}, {1, 1}, 0.0};
  EXPECT_EQ(*PredictCube(reg, std::vector<double>{0.25}), 0.1);
  EXPECT_EQ(*PredictCube(reg, std::vector<double>{0.75}), 0.9);
  EXPECT_FALSE(PredictCube(reg, std::vector<double>{1.5}).ok());
  EXPECT_FALSE(PredictCube(cls, std::vector<double>{-0.1}).ok());
}

TEST(PredictCubeTest, RefitIsDeterministic) {
  Rng data_rng(111);
  const TinyData t = RandomTiny(data_rng, 3);
  const Dataset data = *Dataset::Classification(t.dim, 3, t.x, t.classes);
  Rng a(5), b(5);
  EXPECT_EQ(FitCentralExpClassifier(data, 0.3, Eps(1), false, a)->class_of,
            FitCentralExpClassifier(data, 0.3, Eps(1), false, b)->class_of);
}

// Linear-scan oracle.
std::vector<size_t> ScanNeighbors(const std::vector<double>& pts, int dim,
                                  std::span<const double> q, size_t k) {
  std::vector<std::pair<double, size_t>> all;
  for (size_t i = 0; i < pts.size() / dim; ++i) {
    double d2 = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double diff = pts[i * dim + j] - q[j];
      d2 += diff * diff;
    }
    all.emplace_back(d2, i);
  }
  std::sort(all.begin(), all.end());
  std::vector<size_t> out;
  for (size_t i = 0; i < k; ++i) out.push_back(all[i].second);
  return out;
}

TEST(KnnRegressorTest, Examples) {
  std::vector<double> x = {0.1, 0.4, 0.8};
  std::vector<double> z = {1.0, 2.0, 6.0};
  absl::StatusOr<KnnRegressor> one = KnnRegressor::Fit(PointsView{1, x}, z, 1);
  ASSERT_TRUE(one.ok());
  EXPECT_EQ(one->Predict(std::vector<double>{0.4}), 2.0);
  absl::StatusOr<KnnRegressor> all = KnnRegressor::Fit(PointsView{1, x}, z, 3);
  ASSERT_TRUE(all.ok());
  EXPECT_EQ(all->Predict(std::vector<double>{0.9}), 3.0);
  EXPECT_FALSE(KnnRegressor::Fit(PointsView{1, x}, z, 0).ok());
  EXPECT_FALSE(KnnRegressor::Fit(PointsView{1, x}, z, 4).ok());
  EXPECT_FALSE(KnnRegressor::Fit(PointsView{1, {}}, {}, 1).ok());
  EXPECT_FALSE(KnnRegressor::Fit(PointsView{1, x}, {1.0}, 1).ok());
  EXPECT_FALSE(one->PredictChecked(std::vector<double>{0.1, 0.2}).ok());
}

TEST(KnnRegressorTest, DistanceTiesGoToSmallerIndex) {
  // 0.25 and 0.75 are exactly equidistant from 0.5; both are duplicated.
  std::vector<double> x = {0.75, 0.25, 0.75, 0.25};
  std::vector<double> z = {1, 2, 3, 4};
  absl::StatusOr<KnnRegressor> model = KnnRegressor::Fit(PointsView{1, x}, z, 2);
  ASSERT_TRUE(model.ok());
  EXPECT_EQ(model->Neighbors(std::vector<double>{0.5}),
            (std::vector<size_t>{0, 1}));
}

TEST(KnnRegressorTest, MatchesLinearScanExactly) {
  Rng rng(112);
  for (int dim : {1, 2, 3}) {
    for (size_t n : {50, 1000}) {
      std::vector<double> x(n * dim), z(n);
      for (double& c : x) {
        // Grid-snapped coordinates create many exact distance ties.
        c = rng.Bernoulli(0.5) ? rng.UniformInt(9) / 8.0 : rng.Uniform();
      }
      for (double& v : z) v = rng.Uniform() * 10 - 5;
      for (size_t k : {size_t{1}, size_t{5}, n / 3, n}) {
        absl::StatusOr<KnnRegressor> model =
            KnnRegressor::Fit(PointsView{dim, x}, z, k);
        ASSERT_TRUE(model.ok());
        for (int q = 0; q < 100; ++q) {
          std::vector<double> query(dim);
          for (double& c : query) {
            c = rng.Bernoulli(0.3) ? rng.UniformInt(17) / 16.0 : rng.Uniform();
          }
          const std::vector<size_t> expected = ScanNeighbors(x, dim, query, k);
          ASSERT_EQ(model->Neighbors(query), expected);
          double sum = 0.0;
          for (size_t i : expected) sum += z[i];
          ASSERT_EQ(model->Predict(query), sum / k);
        }
      }
    }
  }
}

}  // namespace
}  // namespace labeldp
