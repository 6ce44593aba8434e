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

// k-nearest-neighbour regression over privatized labels. Neighbour search is
// exact: a k-d tree ordered lexicographically by (squared distance, sample
// index), so the neighbour set equals what a linear scan would return.

#ifndef LABELDP_KNN_REGRESSOR_H_
#define LABELDP_KNN_REGRESSOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "labeldp/dataset.h"

namespace labeldp {

class KnnRegressor {
 public:
  // Copies the features. `z` holds one privatized label per row; k in [1, N].
  static absl::StatusOr<KnnRegressor> Fit(PointsView features,
                                          std::vector<double> z, size_t k);

  int dim() const { return dim_; }
  size_t k() const { return k_; }
  size_t size() const { return z_.size(); }

  // Mean of z over the k nearest rows, summed in (distance, index) order.
  // x must have dim() coordinates.
  double Predict(std::span<const double> x) const;
  absl::StatusOr<double> PredictChecked(std::span<const double> x) const;

  // Original row indices of the k nearest rows, nearest first; distance ties
  // go to the smaller index.
  std::vector<size_t> Neighbors(std::span<const double> x) const;

 private:
  struct Node {
    uint32_t begin = 0;
    uint32_t end = 0;
    int split_dim = -1;  // -1 marks a leaf
    double split = 0.0;
    uint32_t left = 0;
    uint32_t right = 0;
  };
  using Candidate = std::pair<double, size_t>;

  KnnRegressor() = default;
  uint32_t Build(uint32_t begin, uint32_t end);
  void Search(uint32_t node, std::span<const double> x,
              std::vector<Candidate>& heap) const;
  std::vector<Candidate> Nearest(std::span<const double> x) const;

  int dim_ = 1;
  size_t k_ = 1;
  std::vector<double> coords_;  // tree order
  std::vector<size_t> index_;   // tree position -> original row
  std::vector<double> z_;       // original order
  std::vector<Node> nodes_;
};

}  // namespace labeldp

#endif  // LABELDP_KNN_REGRESSOR_H_
