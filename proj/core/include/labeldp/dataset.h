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

#ifndef LABELDP_DATASET_H_
#define LABELDP_DATASET_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace labeldp {

enum class TaskKind { kClassification, kRegression };

// Read-only view of n points in [0,1]^d stored row-major.
struct PointsView {
  int dim = 1;
  std::span<const double> coords;

  size_t size() const { return coords.size() / static_cast<size_t>(dim); }
  std::span<const double> row(size_t i) const {
    return coords.subspan(i * static_cast<size_t>(dim),
                          static_cast<size_t>(dim));
  }
};

// One (x, y) pair. Class labels are 1-based: y in {1..K}.
struct LabeledSample {
  std::vector<double> x;
  std::variant<int, double> y;
};

// An ordered set of labeled points in [0,1]^d, all of one task kind.
// Features are stored row-major in a flat array.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Classification(int dim, int num_classes,
                                                std::vector<double> features,
                                                std::vector<int> classes);
  static absl::StatusOr<Dataset> Regression(int dim,
                                            std::vector<double> features,
                                            std::vector<double> values);

  int dim() const { return dim_; }
  TaskKind task() const { return task_; }
  // 0 for regression datasets.
  int num_classes() const { return num_classes_; }
  size_t size() const { return size_; }

  std::span<const double> x(size_t i) const {
    return {features_.data() + i * static_cast<size_t>(dim_),
            static_cast<size_t>(dim_)};
  }
  int label_class(size_t i) const { return classes_[i]; }
  double label_value(size_t i) const { return values_[i]; }
  LabeledSample sample(size_t i) const;

  PointsView points() const { return {dim_, features_}; }
  const std::vector<double>& features() const { return features_; }
  const std::vector<int>& classes() const { return classes_; }
  const std::vector<double>& values() const { return values_; }

  // Same features, new labels. Used to build label-adjacent datasets.
  absl::StatusOr<Dataset> WithClasses(std::vector<int> classes) const;
  absl::StatusOr<Dataset> WithValues(std::vector<double> values) const;

 private:
  Dataset() = default;

  int dim_ = 0;
  TaskKind task_ = TaskKind::kClassification;
  int num_classes_ = 0;
  size_t size_ = 0;
  std::vector<double> features_;
  std::vector<int> classes_;
  std::vector<double> values_;
};

// Checks that every coordinate lies in [0,1] and the array is a whole number
// of d-dimensional rows.
absl::Status ValidateFeatures(int dim, std::span<const double> features);

}  // namespace labeldp

#endif  // LABELDP_DATASET_H_
