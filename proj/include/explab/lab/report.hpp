// Copyright 2026 The Expander Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "explab/graph.hpp"
#include "explab/sampler.hpp"

namespace explab::lab {

inline constexpr const char* kReportFormat = "explab-report/1";

struct Metric {
  std::string name;
  std::string claim;  // the statement this metric checks
  double value = 0.0;
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
  std::optional<double> threshold;
  std::string comparison = "info";  // ">=", "<=", "==", "info"
  std::optional<bool> pass;
  std::size_t n = 0, ell = 0, d = 0;  // scale columns, 0 when not applicable

  Metric& at(const DistributionParams& p);
  Metric& interval(double lo, double hi);
};

Metric info(std::string name, std::string claim, double value);
Metric at_least(std::string name, std::string claim, double value, double threshold);
Metric at_most(std::string name, std::string claim, double value, double threshold);
/// A pass/fail fact with no natural threshold (value is 1 or 0).
Metric holds(std::string name, std::string claim, bool ok);

struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json config;
  std::vector<Metric> metrics;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  QueryContext queries;
  double wall_clock_s = 0.0;

  Metric& add(Metric m);
  bool all_pass() const;
  /// `with_timing = false` drops wall_clock_s, giving a byte-stable document.
  nlohmann::ordered_json to_json(bool with_timing = true) const;
};

inline constexpr const char* kCsvHeader =
    "experiment,metric,claim,N,ell,d,value,ci_lo,ci_hi,threshold,pass";

/// Long format, one row per metric; an empty report yields the header only.
void write_csv(std::ostream& out, const ExperimentReport& report);

struct WrittenReport {
  std::string json_path;
  std::string csv_path;
};

/// Writes <dir>/<experiment>.json and <dir>/<experiment>.csv.
WrittenReport write_report_files(const ExperimentReport& report, const std::string& dir);

}  // namespace explab::lab
