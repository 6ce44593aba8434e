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

#include "labeldp/knn_regressor.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

constexpr uint32_t kLeafSize = 16;

}  // namespace

absl::StatusOr<KnnRegressor> KnnRegressor::Fit(PointsView features,
                                               std::vector<double> z,
                                               size_t k) {
  if (features.dim < 1) return absl::InvalidArgumentError("dim must be >= 1");
  RETURN_IF_ERROR(ValidateFeatures(features.dim, features.coords));
  const size_t n = features.size();
  if (n == 0) return absl::InvalidArgumentError("empty training set");
  if (n != z.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(n, " feature rows but ", z.size(), " labels"));
  }
  if (n > std::numeric_limits<uint32_t>::max() / 2) {
    return absl::InvalidArgumentError("training set too large");
  }
  if (k < 1 || k > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("k = ", k, " outside [1, ", n, "]"));
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(z[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("label ", i, " is not finite"));
    }
  }
  KnnRegressor model;
  model.dim_ = features.dim;
  model.k_ = k;
  model.z_ = std::move(z);
  model.index_.resize(n);
  std::iota(model.index_.begin(), model.index_.end(), size_t{0});
  model.coords_.assign(features.coords.begin(), features.coords.end());
  model.Build(0, static_cast<uint32_t>(n));
  // Lay the points out in tree order.
  std::vector<double> ordered(model.coords_.size());
  const size_t d = static_cast<size_t>(model.dim_);
  for (size_t pos = 0; pos < n; ++pos) {
    std::copy_n(features.coords.begin() + model.index_[pos] * d, d,
                ordered.begin() + pos * d);
  }
  model.coords_ = std::move(ordered);
  return model;
}

// Builds over index_[begin, end) while coords_ is still in original order.
uint32_t KnnRegressor::Build(uint32_t begin, uint32_t end) {
  const uint32_t id = static_cast<uint32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= kLeafSize) return id;

  const size_t d = static_cast<size_t>(dim_);
  int best_dim = 0;
  double best_spread = -1.0;
  for (int j = 0; j < dim_; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (uint32_t i = begin; i < end; ++i) {
      const double v = coords_[index_[i] * d + j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = j;
    }
  }
  if (best_spread <= 0.0) return id;  // all points coincide

  const uint32_t mid = begin + (end - begin) / 2;
  auto key = [&](size_t row) {
    return std::make_pair(coords_[row * d + best_dim], row);
  };
  std::nth_element(index_.begin() + begin, index_.begin() + mid,
                   index_.begin() + end,
                   [&](size_t a, size_t b) { return key(a) < key(b); });
  const double split = coords_[index_[mid] * d + best_dim];
  const uint32_t left = Build(begin, mid);
  const uint32_t right = Build(mid, end);
  Node& node = nodes_[id];
  node.split_dim = best_dim;
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

void KnnRegressor::Search(uint32_t node_id, std::span<const double> x,
                          std::vector<Candidate>& heap) const {
  const Node& node = nodes_[node_id];
  if (node.split_dim < 0) {
    const size_t d = static_cast<size_t>(dim_);
    for (uint32_t pos = node.begin; pos < node.end; ++pos) {
      const double* p = coords_.data() + pos * d;
      double dist = 0.0;
      for (size_t j = 0; j < d; ++j) {
        const double diff = p[j] - x[j];
        dist += diff * diff;
      }
      const Candidate c{dist, index_[pos]};
      if (heap.size() < k_) {
        heap.push_back(c);
        std::push_heap(heap.begin(), heap.end());
      } else if (c < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = c;
        std::push_heap(heap.begin(), heap.end());
      }
    }
    return;
  }
  const double diff = x[node.split_dim] - node.split;
  const uint32_t near = diff < 0.0 ? node.left : node.right;
  const uint32_t far = diff < 0.0 ? node.right : node.left;
  Search(near, x, heap);
  // Equal distances must still be visited: a smaller index may be there.
  if (heap.size() < k_ || !(diff * diff > heap.front().first)) {
    Search(far, x, heap);
  }
}

std::vector<KnnRegressor::Candidate> KnnRegressor::Nearest(
    std::span<const double> x) const {
  std::vector<Candidate> heap;
  heap.reserve(k_);
  Search(0, x, heap);
  std::sort_heap(heap.begin(), heap.end());
  return heap;
}

double KnnRegressor::Predict(std::span<const double> x) const {
  const std::vector<Candidate> nearest = Nearest(x);
  double sum = 0.0;
  for (const Candidate& c : nearest) sum += z_[c.second];
  return sum / static_cast<double>(k_);
}

absl::StatusOr<double> KnnRegressor::PredictChecked(
    std::span<const double> x) const {
  if (x.size() != static_cast<size_t>(dim_)) {
    return absl::InvalidArgumentError(
        absl::StrCat("query has ", x.size(), " coordinates, expected ", dim_));
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError("query coordinate is not finite");
    }
  }
  return Predict(x);
}

std::vector<size_t> KnnRegressor::Neighbors(std::span<const double> x) const {
  const std::vector<Candidate> nearest = Nearest(x);
  std::vector<size_t> out;
  out.reserve(nearest.size());
  for (const Candidate& c : nearest) out.push_back(c.second);
  return out;
}

}  // namespace labeldp
