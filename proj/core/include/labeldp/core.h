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

// Shared domain types: privacy budgets and the assumption constants that
// parameterize every bandwidth/neighbor/clipping schedule.

#ifndef LABELDP_CORE_H_
#define LABELDP_CORE_H_

#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace labeldp {

// A privacy budget epsilon, or the INFINITE sentinel meaning "no privacy":
// every mechanism and estimator then runs its noise-free oracle path.
//
// Zero is representable because local mechanisms accept it as the
// pure-noise degenerate case; estimators call RequirePositive().
class PrivacyBudget {
 public:
  // Rejects negative and NaN values. +infinity maps to Infinite().
  static absl::StatusOr<PrivacyBudget> Epsilon(double epsilon);
  static PrivacyBudget Infinite() {
    return PrivacyBudget(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const {
    return epsilon_ == std::numeric_limits<double>::infinity();
  }
  // +infinity for the INFINITE budget.
  double epsilon() const { return epsilon_; }

  absl::Status RequirePositive() const;

  // "inf" or the shortest round-trip decimal of epsilon.
  std::string ToString() const;

  friend bool operator==(const PrivacyBudget&, const PrivacyBudget&) = default;

 private:
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {}
  double epsilon_;
};

// Constants of the smoothness / margin / density / tail assumptions.
// Unused fields for a given task keep their defaults.
struct AssumptionParams {
  double beta = 1.0;                 // Holder exponent, (0, 1].
  double lipschitz = 1.0;            // Holder constant L > 0.
  double gamma = 1.0;                // Tsybakov margin exponent >= 0.
  double margin_constant = 1.0;      // C_T > 0.
  double density_lower_bound = 1.0;  // c > 0.
  double corner_constant = 1.0;      // theta in (0, 1].
  double radius_bound = 1.0;         // D > 0. Carried, drives no computation.
  double moment_order = 2.0;         // p >= 2 (heavy-tailed labels).
  double moment_bound = 1.0;         // M_p > 0.
  double label_bound = 1.0;          // T > 0 (bounded labels).

  absl::Status Validate() const;
};

// Shortest decimal string that parses back to exactly `value`; "inf"/"-inf"
// and "nan" for non-finite values.
std::string FormatDouble(double value);

}  // namespace labeldp

#endif  // LABELDP_CORE_H_
