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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "absl/strings/str_cat.h"
#include "labeldp/harness.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

absl::StatusOr<double> AbscissaValue(const TrialRecord& rec,
                                     Abscissa abscissa) {
  const double n = static_cast<double>(rec.n);
  if (abscissa == Abscissa::kN) return n;
  if (rec.budget.is_infinite()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "abscissa ", AbscissaName(abscissa), " is undefined at eps = inf"));
  }
  const double eps = rec.budget.epsilon();
  return abscissa == Abscissa::kEpsN ? eps * n : n * eps * eps;
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

double Mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

absl::StatusOr<std::vector<RatePoint>> AggregateRisk(
    const std::vector<TrialRecord>& records, Abscissa abscissa,
    Aggregator aggregator) {
  if (records.empty()) return absl::InvalidArgumentError("no records");
  std::map<double, std::vector<double>> groups;
  for (const TrialRecord& rec : records) {
    if (rec.task != records.front().task) {
      return absl::InvalidArgumentError("records mix several tasks");
    }
    if (abscissa == Abscissa::kN && !(rec.budget == records.front().budget)) {
      return absl::InvalidArgumentError(
          "abscissa N needs records at a single eps");
    }
    ASSIGN_OR_RETURN(double x, AbscissaValue(rec, abscissa));
    groups[x].push_back(rec.excess_risk);
  }
  std::vector<RatePoint> points;
  for (const auto& [x, risks] : groups) {
    points.push_back(RatePoint{
        x, aggregator == Aggregator::kMedian ? Median(risks) : Mean(risks)});
  }
  return points;
}

absl::StatusOr<RateFit> FitRatePoints(std::vector<RatePoint> points,
                                      Abscissa abscissa) {
  RateFit fit;
  fit.abscissa = abscissa;
  fit.theoretical_exponent = std::numeric_limits<double>::quiet_NaN();
  for (const RatePoint& p : points) {
    if (!(p.abscissa > 0.0) || !std::isfinite(p.abscissa)) {
      return absl::InvalidArgumentError(
          absl::StrCat("abscissa value ", p.abscissa, " is not positive"));
    }
    if (p.risk > 0.0 && std::isfinite(p.risk)) {
      fit.points.push_back(p);
    } else {
      fit.dropped.push_back(p);
    }
  }
  std::vector<double> xs;
  for (const RatePoint& p : fit.points) xs.push_back(p.abscissa);
  std::sort(xs.begin(), xs.end());
  const size_t distinct = std::unique(xs.begin(), xs.end()) - xs.begin();
  if (distinct < 3) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need at least 3 distinct abscissa values with positive risk, have ",
        distinct));
  }
  const double n = static_cast<double>(fit.points.size());
  double mx = 0.0, my = 0.0;
  for (const RatePoint& p : fit.points) {
    mx += std::log(p.abscissa);
    my += std::log(p.risk);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const RatePoint& p : fit.points) {
    const double dx = std::log(p.abscissa) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.risk) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (const RatePoint& p : fit.points) {
    const double r = std::log(p.risk) -
                     (fit.intercept + fit.slope * std::log(p.abscissa));
    ssr += r * r;
  }
  fit.slope_std_error = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

absl::StatusOr<RateFit> FitRate(const std::vector<TrialRecord>& records,
                                Abscissa abscissa, Aggregator aggregator) {
  ASSIGN_OR_RETURN(std::vector<RatePoint> points,
                   AggregateRisk(records, abscissa, aggregator));
  return FitRatePoints(std::move(points), abscissa);
}

absl::StatusOr<double> TheoreticalExponent(Task task, double beta,
                                           double gamma, int dim,
                                           double moment_order,
                                           Abscissa abscissa) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1]");
  }
  if (dim < 1) return absl::InvalidArgumentError("d must be >= 1");
  if (IsClassification(task) && !(gamma >= 0.0)) {
    return absl::InvalidArgumentError("gamma must be >= 0");
  }
  if (IsHeavy(task) && !(moment_order >= 2.0)) {
    return absl::InvalidArgumentError("p must be >= 2");
  }
  const double b = beta;
  const double d = dim;
  const double p = moment_order;
  const bool local = task == Task::kClsLocal ||
                     task == Task::kRegLocalBounded ||
                     task == Task::kRegLocalHeavy;
  if (local && abscissa == Abscissa::kEpsN) {
    return absl::InvalidArgumentError(
        "local tasks are fitted against N or N eps^2");
  }
  if (!local && abscissa == Abscissa::kNEps2) {
    return absl::InvalidArgumentError(
        "central and full-DP tasks are fitted against N or eps N");
  }
  const bool privacy_term = abscissa == Abscissa::kEpsN;
  switch (task) {
    case Task::kClsLocal:
      return -b * (gamma + 1.0) / (2.0 * b + d);
    case Task::kClsCentral:
    case Task::kClsFull:
      return privacy_term ? -b * (gamma + 1.0) / (b + d)
                          : -b * (gamma + 1.0) / (2.0 * b + d);
    case Task::kRegLocalBounded:
      return -2.0 * b / (d + 2.0 * b);
    case Task::kRegCentralBounded:
    case Task::kRegFullBounded:
      return privacy_term ? -2.0 * b / (d + b) : -2.0 * b / (2.0 * b + d);
    case Task::kRegLocalHeavy:
      return -2.0 * b * (p - 1.0) / (2.0 * p * b + d * (p - 1.0));
    case Task::kRegCentralHeavy:
    case Task::kRegFullHeavy:
      return privacy_term ? -2.0 * b * (p - 1.0) / (p * b + d * (p - 1.0))
                          : -2.0 * b / (2.0 * b + d);
  }
  return absl::InvalidArgumentError("unknown task");
}

}  // namespace labeldp
