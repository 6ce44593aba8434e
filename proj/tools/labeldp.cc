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

// labeldp: run rate sweeps, fit slopes and audit mechanisms.
//
//   labeldp run --config sweep.toml --out results/ [--threads n] [--seed s]
//   labeldp fit --in results/trials.csv --abscissa N --aggregator median
//   labeldp audit --mechanism kbit --K 4 --eps 1
//   labeldp audit-cdp --samples 6 --cubes 2 --eps 1 --flips 2
//
// Exit codes: 0 success, 1 configuration or input error, 2 failed audit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "labeldp/core.h"
#include "labeldp/cube_models.h"
#include "labeldp/dataset.h"
#include "labeldp/harness.h"
#include "labeldp/mechanisms.h"
#include "labeldp/random.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitAuditFailed = 2;
constexpr double kAuditSlack = 1e-9;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return kExitConfig;
}

int Run(const std::string& config_path, const std::string& out_dir,
        int threads, const std::optional<uint64_t>& seed, bool timing) {
  absl::StatusOr<labeldp::ExperimentConfig> config =
      labeldp::LoadExperimentConfig(config_path);
  if (!config.ok()) return Fail(config.status());
  if (seed) config->master_seed = *seed;
  const absl::Status status =
      labeldp::RunAndWrite(*config, out_dir, threads, timing);
  if (!status.ok()) return Fail(status);
  std::cout << "wrote " << out_dir << "\n";
  return kExitOk;
}

int Fit(const std::string& path, const std::string& abscissa_name,
        const std::string& aggregator_name, double beta, double gamma,
        int dim, double p, const std::string& eps_filter) {
  absl::StatusOr<labeldp::Abscissa> abscissa =
      labeldp::ParseAbscissa(abscissa_name);
  if (!abscissa.ok()) return Fail(abscissa.status());
  absl::StatusOr<labeldp::Aggregator> aggregator =
      labeldp::ParseAggregator(aggregator_name);
  if (!aggregator.ok()) return Fail(aggregator.status());
  std::ifstream in(path);
  if (!in) return Fail(absl::NotFoundError("cannot open " + path));
  absl::StatusOr<std::vector<labeldp::TrialRecord>> records =
      labeldp::ReadCsv(in);
  if (!records.ok()) return Fail(records.status());
  if (!eps_filter.empty()) {
    std::vector<labeldp::TrialRecord> kept;
    for (const labeldp::TrialRecord& r : *records) {
      if (r.budget.ToString() == eps_filter) kept.push_back(r);
    }
    if (kept.empty()) {
      return Fail(absl::NotFoundError("no records with eps = " + eps_filter));
    }
    *records = std::move(kept);
  }
  absl::StatusOr<labeldp::RateFit> fit =
      labeldp::FitRate(*records, *abscissa, *aggregator);
  if (!fit.ok()) return Fail(fit.status());
  const labeldp::Task task = records->front().task;
  absl::StatusOr<double> theory =
      labeldp::TheoreticalExponent(task, beta, gamma, dim, p, *abscissa);
  if (theory.ok()) fit->theoretical_exponent = *theory;
  labeldp::WriteFitSummary(*fit, task, *aggregator, std::cout);
  return kExitOk;
}

int Audit(const std::string& mechanism, int k, double eps) {
  absl::StatusOr<labeldp::PrivacyBudget> budget =
      labeldp::PrivacyBudget::Epsilon(eps);
  if (!budget.ok()) return Fail(budget.status());
  absl::StatusOr<labeldp::DiscreteMechanism> mech =
      mechanism == "kbit" ? labeldp::KBitMechanism(k, *budget)
                          : labeldp::RandomizedResponseMechanism(k, *budget);
  if (!mech.ok()) return Fail(mech.status());
  absl::StatusOr<double> audited = labeldp::AuditLdpDiscrete(*mech);
  if (!audited.ok()) return Fail(audited.status());
  const bool pass = *audited <= eps + kAuditSlack;
  std::cout << "mechanism = " << mechanism << "\nK = " << k
            << "\ndeclared_eps = " << labeldp::FormatDouble(eps)
            << "\naudited_eps = " << labeldp::FormatDouble(*audited)
            << "\nresult = " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitAuditFailed;
}

int AuditCdp(int samples, int cubes, double eps, int flips, int k,
             uint64_t seed) {
  absl::StatusOr<labeldp::PrivacyBudget> budget =
      labeldp::PrivacyBudget::Epsilon(eps);
  if (!budget.ok()) return Fail(budget.status());
  if (samples < 1 || cubes < 1 || flips < 0 || k < 2) {
    return Fail(absl::InvalidArgumentError(
        "need samples >= 1, cubes >= 1, flips >= 0, K >= 2"));
  }
  // Random 1-d dataset; the partition has `cubes` cells of width 1/cubes.
  labeldp::Rng rng(seed);
  std::vector<double> x(samples);
  std::vector<int> y(samples);
  for (int i = 0; i < samples; ++i) {
    x[i] = rng.Uniform();
    y[i] = 1 + static_cast<int>(rng.UniformInt(k));
  }
  absl::StatusOr<labeldp::Dataset> data =
      labeldp::Dataset::Classification(1, k, x, y);
  if (!data.ok()) return Fail(data.status());
  const double side = 1.0 / cubes;
  const labeldp::PrivacyBudget b = *budget;
  labeldp::CdpTrainer trainer = [side, b](const labeldp::Dataset& d) {
    return labeldp::ExpMechanismModelDistribution(d, side, b, false);
  };
  absl::StatusOr<double> ratio =
      labeldp::AuditCdpExhaustive(trainer, *data, flips);
  if (!ratio.ok()) return Fail(ratio.status());
  const double bound = flips * eps;
  const bool pass = *ratio <= bound + kAuditSlack;
  std::cout << "samples = " << samples << "\ncubes = " << cubes
            << "\nflips = " << flips
            << "\nmax_log_ratio = " << labeldp::FormatDouble(*ratio)
            << "\nbound = " << labeldp::FormatDouble(bound)
            << "\nresult = " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Label differential privacy experiments and audits"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run a sweep from a config file");
  std::string config_path, out_dir;
  int threads = 1;
  std::optional<uint64_t> seed;
  bool timing = false;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--threads", threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--seed", seed, "Override the master seed");
  run->add_flag("--timing", timing, "Record wall_ms in the CSV");

  CLI::App* fit = app.add_subcommand("fit", "Fit a log-log slope to a CSV");
  std::string in_path, abscissa = "N", aggregator = "median";
  double beta = 1.0, gamma = 1.0, p = 2.0;
  int dim = 1;
  fit->add_option("--in", in_path, "trials.csv")->required();
  fit->add_option("--abscissa", abscissa, "N, epsN or Neps2")
      ->check(CLI::IsMember({"N", "epsN", "Neps2"}));
  fit->add_option("--aggregator", aggregator, "median or mean")
      ->check(CLI::IsMember({"median", "mean"}));
  fit->add_option("--beta", beta, "Smoothness for the reference exponent");
  fit->add_option("--gamma", gamma, "Margin exponent for the reference");
  fit->add_option("--d", dim, "Dimension for the reference exponent");
  fit->add_option("--p", p, "Moment order for the reference exponent");
  std::string eps_filter;
  fit->add_option("--eps", eps_filter,
                  "Keep only rows whose eps column equals this text");

  CLI::App* audit = app.add_subcommand("audit", "Exact local-DP audit");
  std::string mechanism;
  int k = 2;
  double eps = 1.0;
  audit->add_option("--mechanism", mechanism, "kbit or rr")
      ->required()
      ->check(CLI::IsMember({"kbit", "rr"}));
  audit->add_option("--K", k, "Number of classes")->required();
  audit->add_option("--eps", eps, "Privacy budget")->required();

  CLI::App* audit_cdp =
      app.add_subcommand("audit-cdp", "Exhaustive central label-DP audit");
  int samples = 6, cubes = 2, flips = 1, cdp_k = 2;
  double cdp_eps = 1.0;
  uint64_t cdp_seed = 1;
  audit_cdp->add_option("--samples", samples, "Dataset size (<= 12)")
      ->required();
  audit_cdp->add_option("--cubes", cubes, "Number of cells")->required();
  audit_cdp->add_option("--eps", cdp_eps, "Privacy budget")->required();
  audit_cdp->add_option("--flips", flips, "Label substitutions")->required();
  audit_cdp->add_option("--K", cdp_k, "Number of classes");
  audit_cdp->add_option("--seed", cdp_seed, "Dataset seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*run) return Run(config_path, out_dir, threads, seed, timing);
  if (*fit) {
    return Fit(in_path, abscissa, aggregator, beta, gamma, dim, p, eps_filter);
  }
  if (*audit) return Audit(mechanism, k, eps);
  return AuditCdp(samples, cubes, cdp_eps, flips, cdp_k, cdp_seed);
}
