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

// Experiment orchestration: declarative sweeps over (N, eps), seeded trial
// fan-out, excess-risk evaluation, log-log rate fits and file output.

#ifndef LABELDP_HARNESS_H_
#define LABELDP_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "labeldp/core.h"
#include "labeldp/integration.h"
#include "labeldp/synthdata.h"

namespace labeldp {

enum class Task {
  kClsLocal,
  kClsCentral,
  kClsFull,
  kRegLocalBounded,
  kRegCentralBounded,
  kRegFullBounded,
  kRegLocalHeavy,
  kRegCentralHeavy,
  kRegFullHeavy,
};

// "cls-local", "reg-full-heavy", ...
absl::string_view TaskName(Task task);
absl::StatusOr<Task> ParseTask(absl::string_view name);
bool IsClassification(Task task);
bool IsHeavy(Task task);

enum class Abscissa { kN, kEpsN, kNEps2 };
absl::string_view AbscissaName(Abscissa abscissa);  // "N", "epsN", "Neps2"
absl::StatusOr<Abscissa> ParseAbscissa(absl::string_view name);

enum class Aggregator { kMedian, kMean };
absl::string_view AggregatorName(Aggregator aggregator);
absl::StatusOr<Aggregator> ParseAggregator(absl::string_view name);

// Which grid varies inside one fitted sweep; the other grid indexes sweeps.
enum class SweepOver { kN, kEps };

struct DistributionSpec {
  std::string family = "smooth";  // "smooth" or "bump" (classification)
  int dim = 1;
  int num_classes = 2;
  double beta = 1.0;
  uint64_t seed = 0;
  std::optional<double> amplitude;
  double label_bound = 1.0;  // T, bounded regression
  std::optional<double> noise_halfwidth;
  double moment_order = 2.0;  // p, heavy regression
  double moment_bound = 1.0;  // M_p, heavy regression
  double bump_side = 0.25;
  std::vector<int> bump_signs = {1};
};

struct ScheduleMultipliers {
  double c_h = 1.0;
  double c_k = 1.0;
  double c_T = 1.0;
};

struct ExperimentConfig {
  Task task = Task::kClsLocal;
  DistributionSpec distribution;
  std::vector<size_t> n_grid;
  std::vector<PrivacyBudget> eps_grid;
  int trials = 1;
  uint64_t master_seed = 0;
  Abscissa abscissa = Abscissa::kN;
  Aggregator aggregator = Aggregator::kMedian;
  SweepOver sweep_over = SweepOver::kN;
  ScheduleMultipliers multipliers;
  IntegrationOptions risk;

  // Grids non-empty and strictly increasing (INFINITE last), every eps > 0,
  // trials >= 1, distribution family valid for the task.
  absl::Status Validate() const;
};

// Parses the sectioned key = value config format. Unknown sections or keys
// are errors. See README for the key reference.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(absl::string_view text);
absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

absl::StatusOr<Distribution> MakeDistribution(Task task,
                                              const DistributionSpec& spec);

struct TrialRecord {
  Task task = Task::kClsLocal;
  size_t n = 0;
  PrivacyBudget budget = PrivacyBudget::Infinite();
  int trial = 0;
  uint64_t seed = 0;
  double excess_risk = 0.0;
  double std_error = 0.0;
  // Schedule values actually used. h is the effective cell width.
  std::optional<double> h;
  std::optional<size_t> k;
  std::optional<double> clip;  // T
  std::optional<double> n0;
  double wall_ms = 0.0;
};

// Seed of dataset (n, trial); shared across eps values and tasks.
uint64_t TrialSeed(uint64_t master_seed, size_t n, int trial);

// One trial: sample, schedule, privatize / fit, evaluate.
absl::StatusOr<TrialRecord> RunTrial(const ExperimentConfig& config,
                                     const Distribution& dist, size_t n,
                                     const PrivacyBudget& budget, int trial);

// All (N, eps, trial) combinations, sorted in that order regardless of
// `threads` (0 = hardware concurrency).
absl::StatusOr<std::vector<TrialRecord>> RunExperiment(
    const ExperimentConfig& config, int threads = 1);

struct RatePoint {
  double abscissa = 0.0;
  double risk = 0.0;  // aggregated
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
  double theoretical_exponent = 0.0;  // NaN when not supplied
  Abscissa abscissa = Abscissa::kN;
  std::vector<RatePoint> points;    // used in the fit
  std::vector<RatePoint> dropped;   // nonpositive aggregated risk
};

// Aggregated risk per distinct abscissa value, ascending. All records must
// belong to one task; abscissa kN additionally needs a single eps.
absl::StatusOr<std::vector<RatePoint>> AggregateRisk(
    const std::vector<TrialRecord>& records, Abscissa abscissa,
    Aggregator aggregator);

// OLS of ln(risk) on ln(abscissa). Points with nonpositive risk are dropped;
// at least 3 distinct abscissa values must remain.
absl::StatusOr<RateFit> FitRatePoints(std::vector<RatePoint> points,
                                      Abscissa abscissa);
absl::StatusOr<RateFit> FitRate(const std::vector<TrialRecord>& records,
                                Abscissa abscissa,
                                Aggregator aggregator = Aggregator::kMedian);

// Leading-term exponent of the minimax rate (negative) in the chosen
// abscissa. Local tasks accept N and Neps2, central/full tasks N and epsN.
absl::StatusOr<double> TheoreticalExponent(Task task, double beta,
                                           double gamma, int dim,
                                           double moment_order,
                                           Abscissa abscissa);

// CSV with header task,N,eps,trial,seed,excess_risk,std_error,h,k,T,n0,wall_ms.
// wall_ms is left empty unless `with_timing`, keeping files reproducible.
void WriteCsv(const std::vector<TrialRecord>& records, std::ostream& out,
              bool with_timing = false);
absl::StatusOr<std::vector<TrialRecord>> ReadCsv(std::istream& in);

// Two columns "ln_abscissa ln_risk", one line per fitted point.
void WritePlotData(const RateFit& fit, std::ostream& out);
// key = value lines: task, abscissa, aggregator, slope, intercept,
// slope_std_error, theoretical_exponent, points, dropped.
void WriteFitSummary(const RateFit& fit, Task task, Aggregator aggregator,
                     std::ostream& out);

// Runs `config` and writes trials.csv plus, per sweep, sweep_<tag>.dat and
// fit_<tag>.txt into `out_dir` (created if missing).
absl::Status RunAndWrite(const ExperimentConfig& config,
                         const std::string& out_dir, int threads,
                         bool with_timing);

}  // namespace labeldp

#endif  // LABELDP_HARNESS_H_
