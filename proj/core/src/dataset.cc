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

#include "labeldp/dataset.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

absl::Status ValidateFeatures(int dim, std::span<const double> features) {
  if (dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be >= 1, got ", dim));
  }
  if (features.size() % static_cast<size_t>(dim) != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature array of length ", features.size(),
        " is not a whole number of rows of dimension ", dim));
  }
  for (size_t i = 0; i < features.size(); ++i) {
    if (!(features[i] >= 0.0 && features[i] <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("feature coordinate ", features[i], " of sample ",
                       i / dim, " lies outside [0, 1]"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> Dataset::Classification(int dim, int num_classes,
                                                std::vector<double> features,
                                                std::vector<int> classes) {
  RETURN_IF_ERROR(ValidateFeatures(dim, features));
  if (num_classes < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("need at least 2 classes, got ", num_classes));
  }
  const size_t n = features.size() / dim;
  if (classes.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", classes.size(), " labels for ", n, " feature rows"));
  }
  for (size_t i = 0; i < n; ++i) {
    if (classes[i] < 1 || classes[i] > num_classes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "class label ", classes[i], " of sample ", i, " outside {1..",
          num_classes, "}"));
    }
  }
  Dataset ds;
  ds.dim_ = dim;
  ds.task_ = TaskKind::kClassification;
  ds.num_classes_ = num_classes;
  ds.size_ = n;
  ds.features_ = std::move(features);
  ds.classes_ = std::move(classes);
  return ds;
}

absl::StatusOr<Dataset> Dataset::Regression(int dim,
                                            std::vector<double> features,
                                            std::vector<double> values) {
  RETURN_IF_ERROR(ValidateFeatures(dim, features));
  const size_t n = features.size() / dim;
  if (values.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", values.size(), " labels for ", n, " feature rows"));
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(values[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("label of sample ", i, " is not finite"));
    }
  }
  Dataset ds;
  ds.dim_ = dim;
  ds.task_ = TaskKind::kRegression;
  ds.size_ = n;
  ds.features_ = std::move(features);
  ds.values_ = std::move(values);
  return ds;
}

LabeledSample Dataset::sample(size_t i) const {
  const auto row = x(i);
  LabeledSample s{std::vector<double>(row.begin(), row.end()), 0};
  if (task_ == TaskKind::kClassification) {
    s.y = classes_[i];
  } else {
    s.y = values_[i];
  }
  return s;
}

absl::StatusOr<Dataset> Dataset::WithClasses(std::vector<int> classes) const {
  if (task_ != TaskKind::kClassification) {
    return absl::FailedPreconditionError("not a classification dataset");
  }
  return Classification(dim_, num_classes_, features_, std::move(classes));
}

absl::StatusOr<Dataset> Dataset::WithValues(std::vector<double> values) const {
  if (task_ != TaskKind::kRegression) {
    return absl::FailedPreconditionError("not a regression dataset");
  }
  return Regression(dim_, features_, std::move(values));
}

}  // namespace labeldp
