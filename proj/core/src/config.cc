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
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "labeldp/harness.h"
#include "labeldp/status_macros.h"

namespace labeldp {

namespace {

using Inputs = std::vector<std::string>;

absl::Status KeyError(const std::string& key, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(key, ": ", what));
}

absl::StatusOr<std::string> Scalar(const std::string& key,
                                   const Inputs& inputs) {
  if (inputs.size() != 1) return KeyError(key, "expected a single value");
  return inputs[0];
}

template <typename T>
absl::StatusOr<T> ParseNumber(const std::string& key, const std::string& s) {
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    return KeyError(key, absl::StrCat("cannot parse '", s, "' as a number"));
  }
  return value;
}

absl::StatusOr<double> ParseReal(const std::string& key,
                                 const std::string& s) {
  if (s == "inf" || s == "+inf") {
    return std::numeric_limits<double>::infinity();
  }
  return ParseNumber<double>(key, s);
}

template <typename T>
absl::StatusOr<T> ScalarNumber(const std::string& key, const Inputs& inputs) {
  ASSIGN_OR_RETURN(std::string s, Scalar(key, inputs));
  if constexpr (std::is_floating_point_v<T>) {
    return ParseReal(key, s);
  } else {
    return ParseNumber<T>(key, s);
  }
}

// Each handler consumes one key's raw inputs.
using Handler =
    std::function<absl::Status(const std::string&, const Inputs&)>;

template <typename T>
Handler Number(T* out) {
  return [out](const std::string& key, const Inputs& in) -> absl::Status {
    ASSIGN_OR_RETURN(*out, ScalarNumber<T>(key, in));
    return absl::OkStatus();
  };
}

Handler OptionalReal(std::optional<double>* out) {
  return [out](const std::string& key, const Inputs& in) -> absl::Status {
    ASSIGN_OR_RETURN(double v, ScalarNumber<double>(key, in));
    *out = v;
    return absl::OkStatus();
  };
}

Handler Text(std::string* out) {
  return [out](const std::string& key, const Inputs& in) -> absl::Status {
    ASSIGN_OR_RETURN(*out, Scalar(key, in));
    return absl::OkStatus();
  };
}

template <typename Enum>
Handler Choice(Enum* out,
               absl::StatusOr<Enum> (*parse)(absl::string_view)) {
  return [out, parse](const std::string& key,
                      const Inputs& in) -> absl::Status {
    ASSIGN_OR_RETURN(std::string s, Scalar(key, in));
    absl::StatusOr<Enum> v = parse(s);
    if (!v.ok()) return KeyError(key, v.status().message());
    *out = *v;
    return absl::OkStatus();
  };
}

absl::StatusOr<SweepOver> ParseSweepOver(absl::string_view s) {
  if (s == "N") return SweepOver::kN;
  if (s == "eps") return SweepOver::kEps;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown sweep_over '", s, "' (N or eps)"));
}

absl::StatusOr<IntegrationMethod> ParseMethod(absl::string_view s) {
  if (s == "auto") return IntegrationMethod::kAuto;
  if (s == "grid") return IntegrationMethod::kGrid;
  if (s == "monte-carlo") return IntegrationMethod::kMonteCarlo;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown method '", s, "' (auto, grid, monte-carlo)"));
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(absl::string_view text) {
  std::vector<CLI::ConfigItem> items;
  try {
    std::istringstream in{std::string(text)};
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config syntax error: ", e.what()));
  }

  ExperimentConfig config;
  DistributionSpec& dist = config.distribution;
  std::string task_name;
  int grid_per_axis = 0;
  int64_t mc_points = -1;

  std::map<std::string, Handler> handlers = {
      {"experiment.task", Text(&task_name)},
      {"experiment.N_grid",
       [&](const std::string& key, const Inputs& in) -> absl::Status {
         config.n_grid.clear();
         for (const std::string& s : in) {
           ASSIGN_OR_RETURN(uint64_t n, ParseNumber<uint64_t>(key, s));
           config.n_grid.push_back(n);
         }
         return absl::OkStatus();
       }},
      {"experiment.eps_grid",
       [&](const std::string& key, const Inputs& in) -> absl::Status {
         config.eps_grid.clear();
         for (const std::string& s : in) {
           ASSIGN_OR_RETURN(double e, ParseReal(key, s));
           absl::StatusOr<PrivacyBudget> b = PrivacyBudget::Epsilon(e);
           if (!b.ok()) return KeyError(key, b.status().message());
           config.eps_grid.push_back(*b);
         }
         return absl::OkStatus();
       }},
      {"experiment.trials", Number(&config.trials)},
      {"experiment.master_seed", Number(&config.master_seed)},
      {"experiment.abscissa", Choice(&config.abscissa, &ParseAbscissa)},
      {"experiment.aggregator", Choice(&config.aggregator, &ParseAggregator)},
      {"experiment.sweep_over", Choice(&config.sweep_over, &ParseSweepOver)},
      {"distribution.family", Text(&dist.family)},
      {"distribution.d", Number(&dist.dim)},
      {"distribution.K", Number(&dist.num_classes)},
      {"distribution.beta", Number(&dist.beta)},
      {"distribution.seed", Number(&dist.seed)},
      {"distribution.amplitude", OptionalReal(&dist.amplitude)},
      {"distribution.T_bound", Number(&dist.label_bound)},
      {"distribution.noise_halfwidth", OptionalReal(&dist.noise_halfwidth)},
      {"distribution.p_moment", Number(&dist.moment_order)},
      {"distribution.M_p", Number(&dist.moment_bound)},
      {"distribution.bump_side", Number(&dist.bump_side)},
      {"distribution.bump_signs",
       [&](const std::string& key, const Inputs& in) -> absl::Status {
         dist.bump_signs.clear();
         for (const std::string& s : in) {
           ASSIGN_OR_RETURN(int v, ParseNumber<int>(key, s));
           dist.bump_signs.push_back(v);
         }
         return absl::OkStatus();
       }},
      {"schedule.c_h", Number(&config.multipliers.c_h)},
      {"schedule.c_k", Number(&config.multipliers.c_k)},
      {"schedule.c_T", Number(&config.multipliers.c_T)},
      {"risk.grid_per_axis", Number(&grid_per_axis)},
      {"risk.monte_carlo_points", Number(&mc_points)},
      {"risk.method", Choice(&config.risk.method, &ParseMethod)},
  };

  std::set<std::string> seen;
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (item.parents.size() != 1) {
      return absl::InvalidArgumentError(absl::StrCat(
          "key '", item.fullname(), "' must sit in exactly one section"));
    }
    const std::string key = absl::StrCat(item.parents[0], ".", item.name);
    auto it = handlers.find(key);
    if (it == handlers.end()) {
      return absl::InvalidArgumentError(absl::StrCat("unknown key '", key, "'"));
    }
    if (!seen.insert(key).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate key '", key, "'"));
    }
    RETURN_IF_ERROR(it->second(key, item.inputs));
  }
  for (const char* required :
       {"experiment.task", "experiment.N_grid", "experiment.eps_grid"}) {
    if (!seen.contains(required)) {
      return absl::InvalidArgumentError(
          absl::StrCat("missing required key '", required, "'"));
    }
  }
  ASSIGN_OR_RETURN(config.task, ParseTask(task_name));
  if (grid_per_axis < 0) {
    return absl::InvalidArgumentError("risk.grid_per_axis must be >= 0");
  }
  config.risk.grid_per_axis = grid_per_axis;
  if (mc_points == 0 || mc_points < -1) {
    return absl::InvalidArgumentError("risk.monte_carlo_points must be >= 1");
  }
  if (mc_points > 0) config.risk.monte_carlo_points = mc_points;
  RETURN_IF_ERROR(config.Validate());
  return config;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str());
}

}  // namespace labeldp
