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

#include "labeldp/mechanisms.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckClass(int y, int num_classes) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("need at least 2 classes, got ", num_classes));
  }
  if (y < 1 || y > num_classes) {
    return absl::InvalidArgumentError(
        absl::StrCat("class ", y, " outside {1..", num_classes, "}"));
  }
  return absl::OkStatus();
}

// Largest log-ratio ln(p/q) contributed by one atom, with the 0/0 skip and
// one-sided-zero = +inf conventions. Returns -inf for skipped atoms.
double AtomLogRatio(double p, double q) {
  if (p == 0.0) return -kInf;
  if (q == 0.0) return kInf;
  return std::log(p) - std::log(q);
}

}  // namespace

double KBitOneProbability(bool is_true_class, const PrivacyBudget& budget) {
  if (budget.is_infinite()) return is_true_class ? 1.0 : 0.0;
  // e^{eps/2} / (e^{eps/2} + 1) written to stay finite for large eps.
  const double half = 0.5 * budget.epsilon();
  return is_true_class ? 1.0 / (1.0 + std::exp(-half))
                       : 1.0 / (1.0 + std::exp(half));
}

absl::StatusOr<PrivatizedBits> PrivatizeKBit(int y, int num_classes,
                                             const PrivacyBudget& budget,
                                             Rng& rng) {
  RETURN_IF_ERROR(CheckClass(y, num_classes));
  const double p_true = KBitOneProbability(true, budget);
  const double p_other = KBitOneProbability(false, budget);
  PrivatizedBits out;
  out.bits.resize(num_classes);
  for (int j = 0; j < num_classes; ++j) {
    out.bits[j] = rng.Bernoulli(j + 1 == y ? p_true : p_other) ? 1 : 0;
  }
  return out;
}

absl::StatusOr<int> PrivatizeRandomizedResponse(int y, int num_classes,
                                                const PrivacyBudget& budget,
                                                Rng& rng) {
  RETURN_IF_ERROR(CheckClass(y, num_classes));
  if (budget.is_infinite()) return y;
  const double p_truth =
      1.0 / (1.0 + (num_classes - 1) * std::exp(-budget.epsilon()));
  if (rng.Uniform() < p_truth) return y;
  // Uniform over the K - 1 other classes.
  const int pick = rng.UniformInt(num_classes - 1) + 1;
  return pick >= y ? pick + 1 : pick;
}

absl::StatusOr<NoisyLabel> PrivatizeLaplace(double y, double label_bound,
                                            const PrivacyBudget& budget,
                                            Rng& rng) {
  if (!(label_bound > 0.0) || !std::isfinite(label_bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("label bound T must be finite and positive, got ",
                     label_bound));
  }
  if (!(std::abs(y) <= label_bound)) {
    return absl::InvalidArgumentError(
        absl::StrCat("label ", y, " violates |y| <= T = ", label_bound));
  }
  RETURN_IF_ERROR(budget.RequirePositive());
  if (budget.is_infinite()) return NoisyLabel{y};
  return NoisyLabel{y + rng.Laplace(2.0 * label_bound / budget.epsilon())};
}

absl::StatusOr<NoisyLabel> PrivatizeClipLaplace(double y, double clip_radius,
                                                const PrivacyBudget& budget,
                                                Rng& rng) {
  if (!(clip_radius > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip radius must be positive, got ", clip_radius));
  }
  RETURN_IF_ERROR(budget.RequirePositive());
  const double clipped = Clip(y, clip_radius);
  if (budget.is_infinite()) return NoisyLabel{clipped};
  if (!std::isfinite(clip_radius)) {
    return absl::InvalidArgumentError(
        "an infinite clip radius needs the infinite budget");
  }
  return NoisyLabel{clipped +
                    rng.Laplace(2.0 * clip_radius / budget.epsilon())};
}

absl::StatusOr<DiscreteMechanism> KBitMechanism(int num_classes,
                                                const PrivacyBudget& budget) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  if (num_classes > 20) {
    return absl::InvalidArgumentError(absl::StrCat(
        "2^", num_classes, " outcomes exceed the enumerable limit 2^20"));
  }
  const double p_true = KBitOneProbability(true, budget);
  const double p_other = KBitOneProbability(false, budget);
  DiscreteMechanism m;
  m.num_labels = num_classes;
  m.num_outputs = size_t{1} << num_classes;
  m.output_distribution = [num_classes, p_true, p_other](int y) {
    // Product form: P(o | y) = prod_j P(bit_j = o_j | y).
    std::vector<double> dist(size_t{1} << num_classes);
    for (size_t o = 0; o < dist.size(); ++o) {
      double p = 1.0;
      for (int j = 0; j < num_classes; ++j) {
        const double one = (j + 1 == y) ? p_true : p_other;
        p *= ((o >> j) & 1) ? one : 1.0 - one;
      }
      dist[o] = p;
    }
    return dist;
  };
  return m;
}

absl::StatusOr<DiscreteMechanism> RandomizedResponseMechanism(
    int num_classes, const PrivacyBudget& budget) {
  if (num_classes < 2) {
    return absl::InvalidArgumentError("need at least 2 classes");
  }
  double p_truth = 1.0;
  double p_other = 0.0;
  if (!budget.is_infinite()) {
    const double decay = std::exp(-budget.epsilon());
    p_truth = 1.0 / (1.0 + (num_classes - 1) * decay);
    p_other = decay / (1.0 + (num_classes - 1) * decay);
  }
  DiscreteMechanism m;
  m.num_labels = num_classes;
  m.num_outputs = static_cast<size_t>(num_classes);
  m.output_distribution = [num_classes, p_truth, p_other](int y) {
    std::vector<double> dist(num_classes, p_other);
    dist[y - 1] = p_truth;
    return dist;
  };
  return m;
}

absl::StatusOr<double> AuditLdpDiscrete(const DiscreteMechanism& mechanism) {
  if (mechanism.num_outputs > kMaxAuditOutputs) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "output space of size ", mechanism.num_outputs,
        " is not enumerable (limit 2^20)"));
  }
  if (mechanism.num_labels < 1 || !mechanism.output_distribution) {
    return absl::InvalidArgumentError("mechanism has no labels");
  }
  std::vector<std::vector<double>> dists;
  dists.reserve(mechanism.num_labels);
  for (int y = 1; y <= mechanism.num_labels; ++y) {
    dists.push_back(mechanism.output_distribution(y));
    if (dists.back().size() != mechanism.num_outputs) {
      return absl::InvalidArgumentError(absl::StrCat(
          "distribution for label ", y, " has ", dists.back().size(),
          " atoms, expected ", mechanism.num_outputs));
    }
  }
  double worst = 0.0;
  for (size_t a = 0; a < dists.size(); ++a) {
    for (size_t b = 0; b < dists.size(); ++b) {
      if (a == b) continue;
      for (size_t o = 0; o < mechanism.num_outputs; ++o) {
        worst = std::max(worst, AtomLogRatio(dists[a][o], dists[b][o]));
      }
    }
  }
  return worst;
}

namespace {

// Visits every label vector at Hamming distance 1..remaining from `labels`
// that changes only positions >= start.
template <typename Fn>
absl::Status ForEachSubstitution(std::vector<int>& labels, int num_classes,
                                 size_t start, int remaining, Fn& fn) {
  if (remaining == 0) return absl::OkStatus();
  for (size_t i = start; i < labels.size(); ++i) {
    const int original = labels[i];
    for (int c = 1; c <= num_classes; ++c) {
      if (c == original) continue;
      labels[i] = c;
      RETURN_IF_ERROR(fn(labels));
      RETURN_IF_ERROR(
          ForEachSubstitution(labels, num_classes, i + 1, remaining - 1, fn));
    }
    labels[i] = original;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> AuditCdpExhaustive(const CdpTrainer& trainer,
                                          const Dataset& dataset, int flips) {
  if (dataset.task() != TaskKind::kClassification) {
    return absl::InvalidArgumentError(
        "exhaustive CDP audit enumerates class-label substitutions");
  }
  if (dataset.size() > kMaxAuditSamples) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "dataset of ", dataset.size(), " samples exceeds the audit limit of ",
        kMaxAuditSamples));
  }
  if (flips < 0) {
    return absl::InvalidArgumentError("number of flips must be >= 0");
  }
  ASSIGN_OR_RETURN(const std::vector<double> base, trainer(dataset));
  if (base.size() > kMaxAuditModels) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "model space of size ", base.size(), " exceeds 2^16"));
  }
  double worst = 0.0;
  auto compare = [&](const std::vector<int>& labels) -> absl::Status {
    ASSIGN_OR_RETURN(const Dataset neighbor, dataset.WithClasses(labels));
    ASSIGN_OR_RETURN(const std::vector<double> other, trainer(neighbor));
    if (other.size() != base.size()) {
      return absl::InternalError("trainer changed its model space size");
    }
    for (size_t o = 0; o < base.size(); ++o) {
      worst = std::max(worst, AtomLogRatio(base[o], other[o]));
      worst = std::max(worst, AtomLogRatio(other[o], base[o]));
    }
    return absl::OkStatus();
  };
  std::vector<int> labels = dataset.classes();
  RETURN_IF_ERROR(ForEachSubstitution(labels, dataset.num_classes(), 0, flips,
                                      compare));
  return worst;
}

}  // namespace labeldp
