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

#include "labeldp/core.h"

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "labeldp/cube_partition.h"
#include "labeldp/dataset.h"
#include "labeldp/random.h"

namespace labeldp {
namespace {

TEST(PrivacyBudgetTest, AcceptsPositiveAndInfinite) {
  absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Epsilon(0.5);
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(b->epsilon(), 0.5);
  EXPECT_FALSE(b->is_infinite());
  EXPECT_TRUE(b->RequirePositive().ok());

  absl::StatusOr<PrivacyBudget> inf =
      PrivacyBudget::Epsilon(std::numeric_limits<double>::infinity());
  ASSERT_TRUE(inf.ok());
  EXPECT_TRUE(inf->is_infinite());
  EXPECT_EQ(*inf, PrivacyBudget::Infinite());
  EXPECT_EQ(inf->ToString(), "inf");
  EXPECT_TRUE(inf->RequirePositive().ok());
}

TEST(PrivacyBudgetTest, RejectsNegativeAndNan) {
  EXPECT_FALSE(PrivacyBudget::Epsilon(-0.1).ok());
  EXPECT_FALSE(
      PrivacyBudget::Epsilon(std::numeric_limits<double>::quiet_NaN()).ok());
}

TEST(PrivacyBudgetTest, ZeroIsRepresentableButNotPositive) {
  absl::StatusOr<PrivacyBudget> zero = PrivacyBudget::Epsilon(0.0);
  ASSERT_TRUE(zero.ok());
  EXPECT_FALSE(zero->RequirePositive().ok());
}

TEST(AssumptionParamsTest, DefaultsAreValid) {
  EXPECT_TRUE(AssumptionParams{}.Validate().ok());
}

TEST(AssumptionParamsTest, RejectsOutOfRange) {
  AssumptionParams p;
  p.beta = 1.5;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.beta = 0.0;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.gamma = -1.0;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.corner_constant = 1.5;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.moment_order = 1.5;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.label_bound = 0.0;
  EXPECT_FALSE(p.Validate().ok());
  p = {};
  p.lipschitz = -2.0;
  EXPECT_FALSE(p.Validate().ok());
}

TEST(FormatDoubleTest, RoundTripsAndSpecialValues) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0), "1");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatDouble(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatDouble(std::nan("")), "nan");
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.Uniform() - 0.5) * std::pow(10.0, rng.UniformInt(40) - 20);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(CubePartitionTest, SpecExamples) {
  absl::StatusOr<CubePartition> p = CubePartition::Make(2, 0.5);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->num_cells(), 4u);
  EXPECT_EQ(p->cells_per_axis(), 2);

  p = CubePartition::Make(1, 0.3);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->cells_per_axis(), 4);
  EXPECT_DOUBLE_EQ(p->cell_width(), 0.25);

  p = CubePartition::Make(3, 1.0);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->num_cells(), 1u);
}

TEST(CubePartitionTest, RejectsBadArguments) {
  EXPECT_FALSE(CubePartition::Make(0, 0.5).ok());
  EXPECT_FALSE(CubePartition::Make(1, 0.0).ok());
  EXPECT_FALSE(CubePartition::Make(1, -0.1).ok());
  EXPECT_FALSE(CubePartition::Make(1, 1.01).ok());
  EXPECT_FALSE(CubePartition::Make(1, std::nan("")).ok());
  EXPECT_FALSE(CubePartition::Make(8, 1e-5).ok());  // too many cells
}

TEST(CubePartitionTest, ExactDivisorSideIsKept) {
  // 1/0.1 is not exactly 10 in floating point; the side must still give 10.
  absl::StatusOr<CubePartition> p = CubePartition::Make(1, 0.1);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->cells_per_axis(), 10);
}

TEST(CubeIndexTest, SpecExamples) {
  absl::StatusOr<CubePartition> p1 = CubePartition::Make(1, 0.5);
  ASSERT_TRUE(p1.ok());
  EXPECT_EQ(*p1->CellIndex(std::vector<double>{0.49}), 0u);
  EXPECT_EQ(*p1->CellIndex(std::vector<double>{1.0}), 1u);

  absl::StatusOr<CubePartition> p2 = CubePartition::Make(2, 0.5);
  ASSERT_TRUE(p2.ok());
  EXPECT_EQ(*p2->CellIndex(std::vector<double>{0.6, 0.2}), 2u);
}

TEST(CubeIndexTest, RowMajorEnumerationOracle) {
  absl::StatusOr<CubePartition> p = CubePartition::Make(2, 0.5);
  ASSERT_TRUE(p.ok());
  // Oracle: index = 2 * i0 + i1 for the cell whose lower corner is
  // (i0/2, i1/2).
  for (int i0 = 0; i0 < 2; ++i0) {
    for (int i1 = 0; i1 < 2; ++i1) {
      const std::vector<double> x = {0.25 + 0.5 * i0, 0.25 + 0.5 * i1};
      EXPECT_EQ(*p->CellIndex(x), static_cast<size_t>(2 * i0 + i1));
      EXPECT_EQ(p->AxisIndices(2 * i0 + i1), (std::vector<int>{i0, i1}));
    }
  }
}

TEST(CubeIndexTest, RejectsOutOfDomain) {
  absl::StatusOr<CubePartition> p = CubePartition::Make(2, 0.5);
  ASSERT_TRUE(p.ok());
  EXPECT_FALSE(p->CellIndex(std::vector<double>{-0.01, 0.5}).ok());
  EXPECT_FALSE(p->CellIndex(std::vector<double>{0.5, 1.01}).ok());
  EXPECT_FALSE(p->CellIndex(std::vector<double>{0.5}).ok());
  EXPECT_FALSE(p->CellIndex(std::vector<double>{std::nan(""), 0.5}).ok());
}

TEST(CubeIndexTest, CoverageProperty) {
  Rng rng(11);
  for (int dim = 1; dim <= 3; ++dim) {
    for (double side : {0.3, 0.125, 0.07}) {
      absl::StatusOr<CubePartition> p = CubePartition::Make(dim, side);
      ASSERT_TRUE(p.ok());
      const int m = p->cells_per_axis();
      // Per axis index, track the smallest and largest coordinate seen.
      std::vector<double> lo(m, 2.0), hi(m, -1.0);
      std::set<size_t> hit;
      for (int i = 0; i < 10000; ++i) {
        std::vector<double> x(dim);
        for (double& c : x) c = rng.Uniform();
        absl::StatusOr<size_t> cell = p->CellIndex(x);
        ASSERT_TRUE(cell.ok());
        ASSERT_LT(*cell, p->num_cells());
        hit.insert(*cell);
        const int a = p->AxisIndex(x[0]);
        lo[a] = std::min(lo[a], x[0]);
        hi[a] = std::max(hi[a], x[0]);
        // Preimage of axis index a is [a/m, (a+1)/m).
        EXPECT_GE(x[0], static_cast<double>(a) / m);
        EXPECT_LT(x[0], static_cast<double>(a + 1) / m);
      }
      if (p->num_cells() <= 1000) EXPECT_EQ(hit.size(), p->num_cells());
      // Observed spread inside each axis cell approaches the width 1/m.
      for (int a = 0; a < m; ++a) {
        EXPECT_LE(hi[a] - lo[a], 1.0 / m);
        EXPECT_GT(hi[a] - lo[a], 0.8 / m);
      }
    }
  }
}

TEST(CubeIndexTest, CellCentersMapToTheirCells) {
  absl::StatusOr<CubePartition> p = CubePartition::Make(3, 0.2);
  ASSERT_TRUE(p.ok());
  for (size_t cell = 0; cell < p->num_cells(); ++cell) {
    EXPECT_EQ(*p->CellIndex(p->CellCenter(cell)), cell);
  }
}

TEST(CubeIndexTest, Deterministic) {
  absl::StatusOr<CubePartition> p = CubePartition::Make(2, 0.13);
  ASSERT_TRUE(p.ok());
  const std::vector<double> x = {0.123456, 0.987654};
  const size_t first = *p->CellIndex(x);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(*p->CellIndex(x), first);
}

TEST(DatasetTest, ClassificationValidation) {
  EXPECT_TRUE(Dataset::Classification(1, 2, {0.1, 0.9}, {1, 2}).ok());
  EXPECT_FALSE(Dataset::Classification(1, 2, {0.1, 0.9}, {1, 3}).ok());
  EXPECT_FALSE(Dataset::Classification(1, 2, {0.1, 0.9}, {0, 1}).ok());
  EXPECT_FALSE(Dataset::Classification(1, 2, {0.1, 1.2}, {1, 1}).ok());
  EXPECT_FALSE(Dataset::Classification(2, 2, {0.1, 0.2, 0.3}, {1}).ok());
  EXPECT_FALSE(Dataset::Classification(1, 2, {0.1}, {1, 2}).ok());
  EXPECT_FALSE(Dataset::Classification(1, 1, {0.1}, {1}).ok());
}

TEST(DatasetTest, RegressionAccessors) {
  absl::StatusOr<Dataset> d =
      Dataset::Regression(2, {0.1, 0.2, 0.3, 0.4}, {1.5, -2.0});
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->task(), TaskKind::kRegression);
  EXPECT_EQ(d->size(), 2u);
  EXPECT_EQ(d->dim(), 2);
  EXPECT_EQ(d->x(1)[0], 0.3);
  EXPECT_EQ(d->label_value(1), -2.0);
  const LabeledSample s = d->sample(0);
  EXPECT_EQ(s.x, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(std::get<double>(s.y), 1.5);
  EXPECT_FALSE(
      Dataset::Regression(1, {0.5}, {std::numeric_limits<double>::infinity()})
          .ok());
}

TEST(DatasetTest, WithLabelsKeepsFeatures) {
  absl::StatusOr<Dataset> d = Dataset::Classification(1, 3, {0.1, 0.5}, {1, 2});
  ASSERT_TRUE(d.ok());
  absl::StatusOr<Dataset> e = d->WithClasses({3, 3});
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e->features(), d->features());
  EXPECT_EQ(e->label_class(0), 3);
  EXPECT_FALSE(d->WithClasses({1}).ok());
  EXPECT_FALSE(d->WithValues({1.0, 2.0}).ok());
}

TEST(RandomTest, DeriveSeedSeparatesStreams) {
  std::set<uint64_t> seeds;
  for (uint64_t i = 0; i < 1000; ++i) seeds.insert(DeriveSeed(42, i));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(DeriveSeed(1, 2), DeriveSeed(2, 1));
}

TEST(RandomTest, UniformRanges) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.OpenUniform();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    const int k = rng.UniformInt(7);
    ASSERT_GE(k, 0);
    ASSERT_LT(k, 7);
  }
}

}  // namespace
}  // namespace labeldp
