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

#include "labeldp/harness.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "labeldp/cube_models.h"
#include "labeldp/knn_regressor.h"
#include "labeldp/mechanisms.h"
#include "labeldp/random.h"
#include "labeldp/risk.h"
#include "labeldp/schedules.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

constexpr std::pair<Task, absl::string_view> kTaskNames[] = {
    {Task::kClsLocal, "cls-local"},
    {Task::kClsCentral, "cls-central"},
    {Task::kClsFull, "cls-full"},
    {Task::kRegLocalBounded, "reg-local-bounded"},
    {Task::kRegCentralBounded, "reg-central-bounded"},
    {Task::kRegFullBounded, "reg-full-bounded"},
    {Task::kRegLocalHeavy, "reg-local-heavy"},
    {Task::kRegCentralHeavy, "reg-central-heavy"},
    {Task::kRegFullHeavy, "reg-full-heavy"},
};

bool IsLocal(Task task) {
  return task == Task::kClsLocal || task == Task::kRegLocalBounded ||
         task == Task::kRegLocalHeavy;
}

bool IsFull(Task task) {
  return task == Task::kClsFull || task == Task::kRegFullBounded ||
         task == Task::kRegFullHeavy;
}

absl::Status CheckMultiplier(absl::string_view name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive and finite, got ", value));
  }
  return absl::OkStatus();
}

absl::StatusOr<RiskReport> RunClassification(const ExperimentConfig& config,
                                             const Distribution& dist,
                                             const Dataset& data,
                                             const PrivacyBudget& budget,
                                             Rng& rng, TrialRecord& rec) {
  const double beta = dist.params().beta;
  const int k = dist.num_classes();
  const double c_h = config.multipliers.c_h;
  if (config.task == Task::kClsLocal) {
    ASSIGN_OR_RETURN(double side, LocalClassificationSide(
                                      data.size(), budget, k, beta,
                                      data.dim(), c_h));
    std::vector<PrivatizedBits> bits;
    bits.reserve(data.size());
    for (size_t i = 0; i < data.size(); ++i) {
      ASSIGN_OR_RETURN(PrivatizedBits b,
                       PrivatizeKBit(data.label_class(i), k, budget, rng));
      bits.push_back(std::move(b));
    }
    ASSIGN_OR_RETURN(CubeClassifier model,
                     FitLocalCubeClassifier(data.points(), bits, k, side));
    rec.h = model.partition.cell_width();
    return ExcessRiskClassifier(model, dist, config.risk);
  }
  ASSIGN_OR_RETURN(double side,
                   CentralClassificationSide(data.size(), budget, k, beta,
                                             data.dim(), c_h));
  ASSIGN_OR_RETURN(CubeClassifier model,
                   FitCentralExpClassifier(data, side, budget,
                                           IsFull(config.task), rng));
  rec.h = model.partition.cell_width();
  return ExcessRiskClassifier(model, dist, config.risk);
}

absl::StatusOr<RiskReport> RunLocalRegression(const ExperimentConfig& config,
                                              const Distribution& dist,
                                              const Dataset& data,
                                              const PrivacyBudget& budget,
                                              Rng& rng, TrialRecord& rec) {
  const AssumptionParams& params = dist.params();
  const bool heavy = IsHeavy(config.task);
  std::optional<double> p;
  if (heavy) p = params.moment_order;
  ASSIGN_OR_RETURN(size_t k, LocalRegressionNeighbors(
                                 data.size(), budget, params.beta, data.dim(),
                                 p, config.multipliers.c_k));
  rec.k = k;
  double clip = params.label_bound;
  if (heavy) {
    ASSIGN_OR_RETURN(clip, LocalClipRadius(k, budget, params.moment_order,
                                           config.multipliers.c_T));
  }
  rec.clip = clip;
  std::vector<double> z(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    absl::StatusOr<NoisyLabel> noisy =
        heavy ? PrivatizeClipLaplace(data.label_value(i), clip, budget, rng)
              : PrivatizeLaplace(data.label_value(i), clip, budget, rng);
    if (!noisy.ok()) return noisy.status();
    z[i] = noisy->z;
  }
  ASSIGN_OR_RETURN(KnnRegressor model,
                   KnnRegressor::Fit(data.points(), std::move(z), k));
  return ExcessRiskRegressor(model, dist, config.risk);
}

absl::StatusOr<RiskReport> RunCentralRegression(
    const ExperimentConfig& config, const Distribution& dist,
    const Dataset& data, const PrivacyBudget& budget, Rng& rng,
    TrialRecord& rec) {
  const AssumptionParams& params = dist.params();
  const bool heavy = IsHeavy(config.task);
  std::optional<double> p;
  if (heavy) p = params.moment_order;
  ASSIGN_OR_RETURN(double side, CentralRegressionSide(
                                    data.size(), budget, params.beta,
                                    data.dim(), p, config.multipliers.c_h));
  ASSIGN_OR_RETURN(CubePartition partition,
                   CubePartition::Make(data.dim(), side));
  CubeRegressorOptions options;
  options.side = side;
  options.bound = params.label_bound;
  options.clipped = heavy;
  options.full_dp = IsFull(config.task);
  options.density_lower_bound = params.density_lower_bound;
  options.corner_constant = params.corner_constant;
  if (heavy) {
    ASSIGN_OR_RETURN(options.bound,
                     CentralClipRadius(budget, data.size(),
                                       partition.cell_width(), data.dim(),
                                       params.moment_order,
                                       config.multipliers.c_T));
  }
  ASSIGN_OR_RETURN(CubeRegressor model,
                   FitCentralCubeRegressor(data, options, budget, rng));
  rec.h = model.partition.cell_width();
  rec.clip = options.bound;
  if (options.full_dp) rec.n0 = model.count_floor;
  return ExcessRiskRegressor(model, dist, config.risk);
}

}  // namespace

absl::string_view TaskName(Task task) {
  for (const auto& [t, name] : kTaskNames) {
    if (t == task) return name;
  }
  return "unknown";
}

absl::StatusOr<Task> ParseTask(absl::string_view name) {
  for (const auto& [t, n] : kTaskNames) {
    if (n == name) return t;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown task '", name, "'"));
}

bool IsClassification(Task task) {
  return task == Task::kClsLocal || task == Task::kClsCentral ||
         task == Task::kClsFull;
}

bool IsHeavy(Task task) {
  return task == Task::kRegLocalHeavy || task == Task::kRegCentralHeavy ||
         task == Task::kRegFullHeavy;
}

absl::string_view AbscissaName(Abscissa abscissa) {
  switch (abscissa) {
    case Abscissa::kN:
      return "N";
    case Abscissa::kEpsN:
      return "epsN";
    case Abscissa::kNEps2:
      return "Neps2";
  }
  return "unknown";
}

absl::StatusOr<Abscissa> ParseAbscissa(absl::string_view name) {
  if (name == "N") return Abscissa::kN;
  if (name == "epsN") return Abscissa::kEpsN;
  if (name == "Neps2") return Abscissa::kNEps2;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown abscissa '", name, "' (N, epsN, Neps2)"));
}

absl::string_view AggregatorName(Aggregator aggregator) {
  return aggregator == Aggregator::kMedian ? "median" : "mean";
}

absl::StatusOr<Aggregator> ParseAggregator(absl::string_view name) {
  if (name == "median") return Aggregator::kMedian;
  if (name == "mean") return Aggregator::kMean;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown aggregator '", name, "' (median, mean)"));
}

absl::Status ExperimentConfig::Validate() const {
  if (n_grid.empty()) return absl::InvalidArgumentError("N_grid is empty");
  if (eps_grid.empty()) return absl::InvalidArgumentError("eps_grid is empty");
  for (size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) return absl::InvalidArgumentError("N must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      return absl::InvalidArgumentError("N_grid must be strictly increasing");
    }
  }
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    RETURN_IF_ERROR(eps_grid[i].RequirePositive());
    if (i > 0 && !(eps_grid[i].epsilon() > eps_grid[i - 1].epsilon())) {
      return absl::InvalidArgumentError(
          "eps_grid must be strictly increasing");
    }
  }
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  RETURN_IF_ERROR(CheckMultiplier("c_h", multipliers.c_h));
  RETURN_IF_ERROR(CheckMultiplier("c_k", multipliers.c_k));
  RETURN_IF_ERROR(CheckMultiplier("c_T", multipliers.c_T));
  return MakeDistribution(task, distribution).status();
}

absl::StatusOr<Distribution> MakeDistribution(Task task,
                                              const DistributionSpec& spec) {
  if (IsClassification(task)) {
    if (spec.family == "smooth") {
      return SmoothClassification(spec.dim, spec.num_classes, spec.beta,
                                  spec.seed, spec.amplitude);
    }
    if (spec.family == "bump") {
      if (spec.num_classes != 2) {
        return absl::InvalidArgumentError("bump family needs K = 2");
      }
      return BumpClassification(
          BumpConfig{spec.bump_side, spec.bump_signs, spec.beta}, spec.dim);
    }
    return absl::InvalidArgumentError(
        absl::StrCat("unknown classification family '", spec.family, "'"));
  }
  if (spec.family != "smooth") {
    return absl::InvalidArgumentError(
        absl::StrCat("regression supports only the smooth family, got '",
                     spec.family, "'"));
  }
  NoiseSpec noise;
  noise.kind = IsHeavy(task) ? NoiseKind::kHeavy : NoiseKind::kBounded;
  noise.label_bound = spec.label_bound;
  noise.halfwidth = spec.noise_halfwidth;
  noise.moment_order = spec.moment_order;
  noise.moment_bound = spec.moment_bound;
  return SmoothRegression(spec.dim, spec.beta, noise, spec.seed,
                          spec.amplitude);
}

uint64_t TrialSeed(uint64_t master_seed, size_t n, int trial) {
  return DeriveSeed(DeriveSeed(master_seed, n), static_cast<uint64_t>(trial));
}

absl::StatusOr<TrialRecord> RunTrial(const ExperimentConfig& config,
                                     const Distribution& dist, size_t n,
                                     const PrivacyBudget& budget, int trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.task = config.task;
  rec.n = n;
  rec.budget = budget;
  rec.trial = trial;
  rec.seed = TrialSeed(config.master_seed, n, trial);
  ASSIGN_OR_RETURN(Dataset data, SampleDataset(dist, n, rec.seed));
  // Mechanism randomness: one stream per (dataset, eps).
  Rng rng(DeriveSeed(rec.seed, std::bit_cast<uint64_t>(budget.epsilon())));

  absl::StatusOr<RiskReport> report;
  if (IsClassification(config.task)) {
    report = RunClassification(config, dist, data, budget, rng, rec);
  } else if (IsLocal(config.task)) {
    report = RunLocalRegression(config, dist, data, budget, rng, rec);
  } else {
    report = RunCentralRegression(config, dist, data, budget, rng, rec);
  }
  if (!report.ok()) return report.status();
  rec.excess_risk = report->excess_risk;
  rec.std_error = report->std_error;
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

absl::StatusOr<std::vector<TrialRecord>> RunExperiment(
    const ExperimentConfig& config, int threads) {
  RETURN_IF_ERROR(config.Validate());
  ASSIGN_OR_RETURN(Distribution dist,
                   MakeDistribution(config.task, config.distribution));

  struct Job {
    size_t n;
    PrivacyBudget budget;
    int trial;
  };
  std::vector<Job> jobs;
  for (size_t n : config.n_grid) {
    for (const PrivacyBudget& budget : config.eps_grid) {
      for (int t = 0; t < config.trials; ++t) jobs.push_back({n, budget, t});
    }
  }
  std::vector<absl::StatusOr<TrialRecord>> results(
      jobs.size(), absl::UnknownError("not run"));
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = static_cast<int>(
      std::min<size_t>(static_cast<size_t>(threads), jobs.size()));

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      results[i] = RunTrial(config, dist, jobs[i].n, jobs[i].budget,
                            jobs[i].trial);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  std::vector<TrialRecord> records;
  records.reserve(jobs.size());
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!results[i].ok()) {
      const absl::Status& s = results[i].status();
      return absl::Status(
          s.code(), absl::StrCat("N=", jobs[i].n, " eps=",
                                 jobs[i].budget.ToString(), " trial=",
                                 jobs[i].trial, ": ", s.message()));
    }
    records.push_back(*std::move(results[i]));
  }
  return records;
}

}  // namespace labeldp
