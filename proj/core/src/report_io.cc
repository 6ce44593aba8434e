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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "labeldp/harness.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

constexpr absl::string_view kCsvHeader =
    "task,N,eps,trial,seed,excess_risk,std_error,h,k,T,n0,wall_ms";

std::string Opt(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

template <typename T>
absl::StatusOr<T> ParseField(absl::string_view field, absl::string_view name,
                             size_t line) {
  T value{};
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", line, ": bad ", name, " '", field, "'"));
  }
  return value;
}

absl::StatusOr<double> ParseDoubleField(absl::string_view field,
                                        absl::string_view name, size_t line) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  return ParseField<double>(field, name, line);
}

absl::StatusOr<std::optional<double>> ParseOptional(absl::string_view field,
                                                    absl::string_view name,
                                                    size_t line) {
  if (field.empty()) return std::optional<double>();
  ASSIGN_OR_RETURN(double v, ParseDoubleField(field, name, line));
  return std::optional<double>(v);
}

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::InternalError(absl::StrCat("cannot write ", path.string()));
  out << contents;
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path.string()));
  return absl::OkStatus();
}

}  // namespace

void WriteCsv(const std::vector<TrialRecord>& records, std::ostream& out,
              bool with_timing) {
  out << kCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    out << TaskName(r.task) << ',' << r.n << ',' << r.budget.ToString() << ','
        << r.trial << ',' << r.seed << ',' << FormatDouble(r.excess_risk)
        << ',' << FormatDouble(r.std_error) << ',' << Opt(r.h) << ','
        << (r.k ? std::to_string(*r.k) : std::string()) << ',' << Opt(r.clip)
        << ',' << Opt(r.n0) << ','
        << (with_timing ? FormatDouble(r.wall_ms) : std::string()) << '\n';
  }
}

absl::StatusOr<std::vector<TrialRecord>> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected CSV header '", kCsvHeader, "'"));
  }
  std::vector<TrialRecord> records;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 12) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": expected 12 fields, got ", f.size()));
    }
    TrialRecord r;
    ASSIGN_OR_RETURN(r.task, ParseTask(f[0]));
    ASSIGN_OR_RETURN(r.n, ParseField<size_t>(f[1], "N", line_no));
    ASSIGN_OR_RETURN(double eps, ParseDoubleField(f[2], "eps", line_no));
    ASSIGN_OR_RETURN(r.budget, PrivacyBudget::Epsilon(eps));
    ASSIGN_OR_RETURN(r.trial, ParseField<int>(f[3], "trial", line_no));
    ASSIGN_OR_RETURN(r.seed, ParseField<uint64_t>(f[4], "seed", line_no));
    ASSIGN_OR_RETURN(r.excess_risk,
                     ParseDoubleField(f[5], "excess_risk", line_no));
    ASSIGN_OR_RETURN(r.std_error, ParseDoubleField(f[6], "std_error", line_no));
    ASSIGN_OR_RETURN(r.h, ParseOptional(f[7], "h", line_no));
    if (!f[8].empty()) {
      ASSIGN_OR_RETURN(r.k, ParseField<size_t>(f[8], "k", line_no));
    }
    ASSIGN_OR_RETURN(r.clip, ParseOptional(f[9], "T", line_no));
    ASSIGN_OR_RETURN(r.n0, ParseOptional(f[10], "n0", line_no));
    ASSIGN_OR_RETURN(std::optional<double> wall,
                     ParseOptional(f[11], "wall_ms", line_no));
    r.wall_ms = wall.value_or(0.0);
    records.push_back(r);
  }
  return records;
}

void WritePlotData(const RateFit& fit, std::ostream& out) {
  out << "# ln_abscissa ln_risk\n";
  for (const RatePoint& p : fit.points) {
    out << FormatDouble(std::log(p.abscissa)) << ' '
        << FormatDouble(std::log(p.risk)) << '\n';
  }
}

void WriteFitSummary(const RateFit& fit, Task task, Aggregator aggregator,
                     std::ostream& out) {
  out << "task = " << TaskName(task) << '\n'
      << "abscissa = " << AbscissaName(fit.abscissa) << '\n'
      << "aggregator = " << AggregatorName(aggregator) << '\n'
      << "slope = " << FormatDouble(fit.slope) << '\n'
      << "intercept = " << FormatDouble(fit.intercept) << '\n'
      << "slope_std_error = " << FormatDouble(fit.slope_std_error) << '\n'
      << "theoretical_exponent = " << FormatDouble(fit.theoretical_exponent)
      << '\n'
      << "points = " << fit.points.size() << '\n'
      << "dropped = " << fit.dropped.size() << '\n';
}

absl::Status RunAndWrite(const ExperimentConfig& config,
                         const std::string& out_dir, int threads,
                         bool with_timing) {
  ASSIGN_OR_RETURN(std::vector<TrialRecord> records,
                   RunExperiment(config, threads));
  ASSIGN_OR_RETURN(Distribution dist,
                   MakeDistribution(config.task, config.distribution));
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", out_dir, ": ", ec.message()));
  }
  std::ostringstream csv;
  WriteCsv(records, csv, with_timing);
  RETURN_IF_ERROR(WriteFile(dir / "trials.csv", csv.str()));

  const AssumptionParams& params = dist.params();
  absl::StatusOr<double> theory =
      TheoreticalExponent(config.task, params.beta, params.gamma, dist.dim(),
                          params.moment_order, config.abscissa);

  // One sweep per value of the grid that is held fixed.
  const bool over_n = config.sweep_over == SweepOver::kN;
  const size_t sweeps = over_n ? config.eps_grid.size() : config.n_grid.size();
  for (size_t s = 0; s < sweeps; ++s) {
    std::vector<TrialRecord> subset;
    for (const TrialRecord& r : records) {
      if (over_n ? r.budget == config.eps_grid[s] : r.n == config.n_grid[s]) {
        subset.push_back(r);
      }
    }
    const std::string tag =
        over_n ? absl::StrCat("eps_", config.eps_grid[s].ToString())
               : absl::StrCat("N_", config.n_grid[s]);
    absl::StatusOr<RateFit> fit =
        FitRate(subset, config.abscissa, config.aggregator);
    std::ostringstream summary;
    if (!fit.ok()) {
      summary << "task = " << TaskName(config.task) << '\n'
              << "error = " << fit.status().message() << '\n';
      RETURN_IF_ERROR(WriteFile(dir / ("fit_" + tag + ".txt"), summary.str()));
      continue;
    }
    if (theory.ok()) fit->theoretical_exponent = *theory;
    std::ostringstream plot;
    WritePlotData(*fit, plot);
    RETURN_IF_ERROR(WriteFile(dir / ("sweep_" + tag + ".dat"), plot.str()));
    WriteFitSummary(*fit, config.task, config.aggregator, summary);
    RETURN_IF_ERROR(WriteFile(dir / ("fit_" + tag + ".txt"), summary.str()));
  }
  return absl::OkStatus();
}

}  // namespace labeldp
