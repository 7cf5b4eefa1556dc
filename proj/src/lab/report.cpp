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

#include "explab/lab/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "explab/errors.hpp"

namespace explab::lab {

Metric& Metric::at(const DistributionParams& p) {
  n = p.n;
  ell = p.ell;
  d = p.d;
  return *this;
}

Metric& Metric::interval(double lo, double hi) {
  ci_lo = lo;
  ci_hi = hi;
  return *this;
}

Metric info(std::string name, std::string claim, double value) {
  Metric m;
  m.name = std::move(name);
  m.claim = std::move(claim);
  m.value = value;
  return m;
}

Metric at_least(std::string name, std::string claim, double value, double threshold) {
  Metric m = info(std::move(name), std::move(claim), value);
  m.threshold = threshold;
  m.comparison = ">=";
  m.pass = value >= threshold;
  return m;
}

Metric at_most(std::string name, std::string claim, double value, double threshold) {
  Metric m = info(std::move(name), std::move(claim), value);
  m.threshold = threshold;
  m.comparison = "<=";
  m.pass = value <= threshold;
  return m;
}

Metric holds(std::string name, std::string claim, bool ok) {
  Metric m = info(std::move(name), std::move(claim), ok ? 1.0 : 0.0);
  m.threshold = 1.0;
  m.comparison = "==";
  m.pass = ok;
  return m;
}

Metric& ExperimentReport::add(Metric m) {
  metrics.push_back(std::move(m));
  return metrics.back();
}

bool ExperimentReport::all_pass() const {
  for (const auto& m : metrics) {
    if (m.pass && !*m.pass) return false;
  }
  return true;
}

namespace {

nlohmann::ordered_json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

nlohmann::ordered_json ExperimentReport::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["format"] = kReportFormat;
  j["experiment"] = experiment;
  j["config"] = config;
  auto& ms = j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : metrics) {
    nlohmann::ordered_json e;
    e["name"] = m.name;
    e["claim"] = m.claim;
    e["value"] = number_or_null(m.value);
    if (m.ci_lo) e["ci"] = {number_or_null(*m.ci_lo), number_or_null(*m.ci_hi)};
    if (m.threshold) e["threshold"] = number_or_null(*m.threshold);
    e["comparison"] = m.comparison;
    if (m.pass) e["pass"] = *m.pass;
    if (m.n) e["N"] = m.n;
    if (m.ell) e["ell"] = m.ell;
    if (m.d) e["d"] = m.d;
    ms.push_back(std::move(e));
  }
  j["details"] = details;
  std::uint64_t summed = 0;
  nlohmann::ordered_json by_op = nlohmann::ordered_json::object();
  for (const auto& [op, count] : queries.by_operation()) {
    by_op[op] = count;
    summed += count;
  }
  j["queries"] = {{"total", queries.total()}, {"by_operation", by_op},
                  {"conserved", summed == queries.total()}};
  j["all_pass"] = all_pass();
  if (with_timing) j["wall_clock_s"] = wall_clock_s;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return "";
  std::ostringstream s;
  s << std::setprecision(17) << *x;
  return s.str();
}

std::string csv_count(std::size_t x) { return x ? std::to_string(x) : ""; }

}  // namespace

void write_csv(std::ostream& out, const ExperimentReport& report) {
  out << kCsvHeader << '\n';
  for (const auto& m : report.metrics) {
    out << csv_field(report.experiment) << ',' << csv_field(m.name) << ','
        << csv_field(m.claim) << ',' << csv_count(m.n) << ',' << csv_count(m.ell) << ','
        << csv_count(m.d) << ',' << csv_number(m.value) << ',' << csv_number(m.ci_lo)
        << ',' << csv_number(m.ci_hi) << ',' << csv_number(m.threshold) << ','
        << (m.pass ? (*m.pass ? "true" : "false") : "") << '\n';
  }
}

WrittenReport write_report_files(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  WrittenReport w;
  w.json_path = (std::filesystem::path(dir) / (report.experiment + ".json")).string();
  w.csv_path = (std::filesystem::path(dir) / (report.experiment + ".csv")).string();
  std::ofstream js(w.json_path);
  std::ofstream cs(w.csv_path);
  if (!js || !cs) throw ConfigError("cannot write reports into '" + dir + "'");
  js << report.to_json().dump(2) << '\n';
  write_csv(cs, report);
  return w;
}

}  // namespace explab::lab
