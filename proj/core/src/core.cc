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

#include <charconv>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace labeldp {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Epsilon(double epsilon) {
  if (std::isnan(epsilon)) {
    return absl::InvalidArgumentError("epsilon must not be NaN");
  }
  if (epsilon < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be nonnegative, got ", epsilon));
  }
  return PrivacyBudget(epsilon);
}

absl::Status PrivacyBudget::RequirePositive() const {
  if (epsilon_ > 0) return absl::OkStatus();
  return absl::InvalidArgumentError(
      "estimators require epsilon > 0 or an infinite budget");
}

std::string PrivacyBudget::ToString() const { return FormatDouble(epsilon_); }

absl::Status AssumptionParams::Validate() const {
  auto positive = [](double v, const char* name) -> absl::Status {
    if (std::isfinite(v) && v > 0) return absl::OkStatus();
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be finite and positive, got ", v));
  };
  if (!(beta > 0 && beta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1], got ", beta));
  }
  if (!(gamma >= 0) || !std::isfinite(gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be finite and >= 0, got ", gamma));
  }
  if (!(corner_constant > 0 && corner_constant <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must lie in (0, 1], got ", corner_constant));
  }
  if (!(moment_order >= 2) || !std::isfinite(moment_order)) {
    return absl::InvalidArgumentError(
        absl::StrCat("moment order p must be >= 2, got ", moment_order));
  }
  for (const auto& [v, name] :
       {std::pair{lipschitz, "L"}, std::pair{margin_constant, "C_T"},
        std::pair{density_lower_bound, "c"}, std::pair{radius_bound, "D"},
        std::pair{moment_bound, "M_p"}, std::pair{label_bound, "T"}}) {
    if (absl::Status s = positive(v, name); !s.ok()) return s;
  }
  return absl::OkStatus();
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

}  // namespace labeldp
