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

// Label privatizers for the local model, and exact privacy auditors that
// enumerate output atoms (local) or label-adjacent datasets (central).

#ifndef LABELDP_MECHANISMS_H_
#define LABELDP_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "labeldp/core.h"
#include "labeldp/dataset.h"
#include "labeldp/random.h"

namespace labeldp {

// K-bit report of the K-ary bit mechanism. bits[j] is the report for class
// j + 1.
struct PrivatizedBits {
  std::vector<uint8_t> bits;
};

struct NoisyLabel {
  double z = 0.0;
};

// P(bit_j = 1) for the K-ary bit mechanism: e^{eps/2} / (e^{eps/2} + 1) when
// j is the true class, 1 / (e^{eps/2} + 1) otherwise.
double KBitOneProbability(bool is_true_class, const PrivacyBudget& budget);

// Each bit drawn independently with KBitOneProbability. The INFINITE budget
// yields the one-hot encoding of y; epsilon = 0 yields fair coins.
absl::StatusOr<PrivatizedBits> PrivatizeKBit(int y, int num_classes,
                                             const PrivacyBudget& budget,
                                             Rng& rng);

// K-ary randomized response: y with probability e^eps / (e^eps + K - 1),
// otherwise one of the other K - 1 classes uniformly.
absl::StatusOr<int> PrivatizeRandomizedResponse(int y, int num_classes,
                                                const PrivacyBudget& budget,
                                                Rng& rng);

// z = y + Laplace(2T / eps). Requires |y| <= T and eps > 0 (or INFINITE).
absl::StatusOr<NoisyLabel> PrivatizeLaplace(double y, double label_bound,
                                            const PrivacyBudget& budget,
                                            Rng& rng);

// z = clip(y, T) + Laplace(2T / eps). T may be +infinity only together with
// the INFINITE budget.
absl::StatusOr<NoisyLabel> PrivatizeClipLaplace(double y, double clip_radius,
                                                const PrivacyBudget& budget,
                                                Rng& rng);

inline double Clip(double y, double radius) {
  return y > radius ? radius : (y < -radius ? -radius : y);
}

// A local mechanism over labels {1..num_labels} with a finite output space,
// described by its exact conditional output distributions.
struct DiscreteMechanism {
  int num_labels = 0;
  size_t num_outputs = 0;
  // Probability vector of length num_outputs for label y in {1..num_labels}.
  std::function<std::vector<double>(int)> output_distribution;
};

// Output atom index o encodes bit j + 1 in bit j of o.
absl::StatusOr<DiscreteMechanism> KBitMechanism(int num_classes,
                                                const PrivacyBudget& budget);
absl::StatusOr<DiscreteMechanism> RandomizedResponseMechanism(
    int num_classes, const PrivacyBudget& budget);

inline constexpr size_t kMaxAuditOutputs = size_t{1} << 20;

// max over atoms o and label pairs (y, y') of ln[P(o|y) / P(o|y')]. Atoms with
// zero probability on both sides are skipped; a one-sided zero yields +inf.
// Rejects output spaces larger than 2^20.
absl::StatusOr<double> AuditLdpDiscrete(const DiscreteMechanism& mechanism);

// Exact output distribution of a central trainer over a finite model space.
using CdpTrainer =
    std::function<absl::StatusOr<std::vector<double>>(const Dataset&)>;

inline constexpr size_t kMaxAuditSamples = 12;
inline constexpr size_t kMaxAuditModels = size_t{1} << 16;

// max over every dataset D' at label-Hamming distance <= flips from
// `dataset` (any substitution of class labels) and every model atom of
// |ln P(model | D) - ln P(model | D')|. For an eps-label-CDP trainer the
// result is at most flips * eps. Rejects datasets of more than 12 samples
// and model spaces larger than 2^16.
absl::StatusOr<double> AuditCdpExhaustive(const CdpTrainer& trainer,
                                          const Dataset& dataset, int flips);

}  // namespace labeldp

#endif  // LABELDP_MECHANISMS_H_
