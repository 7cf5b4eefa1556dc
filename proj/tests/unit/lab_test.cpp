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

#include <limits>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "explab/errors.hpp"
#include "explab/lab/config.hpp"
#include "explab/lab/experiments.hpp"
#include "explab/lab/json_io.hpp"
#include "explab/lab/report.hpp"

namespace explab::lab {
namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::parse(in, "inline.ini");
}

const char* kWrapup = R"(
[experiment]
id = wrapup
version = 1
seed = 5
n_samples = 1

[inputs]
qma_completeness = 1.0
qma_soundness_per_run = 0.9
qcma_completeness = 0.99
qcma_soundness = 0.01
delta = 0.5
tail = 0.01
eps_poly = 0.05

[thresholds]
target_completeness = 0.99
target_soundness = 0.01
pml_f_floor = 0.08
pm1_floor = 0.02
)";

TEST(Config, ParsesExperimentSection) {
  const auto cfg = parse(kWrapup);
  EXPECT_EQ(cfg.id(), "wrapup");
  EXPECT_EQ(cfg.seed(), 5u);
  EXPECT_DOUBLE_EQ(cfg.threshold("pm1_floor"), 0.02);
  EXPECT_DOUBLE_EQ(cfg.input_number("tail"), 0.01);
  EXPECT_EQ(cfg.option("missing", std::size_t{3}), 3u);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse("[experiment]\nid = wrapup\nversion = 1\n"), ConfigError);
  EXPECT_THROW(parse("[experiment]\nid = wrapup\nversion = 9\nseed = 1\nn_samples = 1\n"), ConfigError);
  EXPECT_THROW(parse("[experiment]\nid = x\nversion = 1\nseed = 1\nn_samples = 1\n[bogus]\na = 1\n"),
               ConfigError);
  EXPECT_THROW(parse("[experiment]\nid = x\nversion = 1\nseed = -4\nn_samples = 1\n"), ConfigError);
  const auto cfg = parse("[experiment]\nid = x\nversion = 1\nseed = 1\nn_samples = 1\n[options]\nm = abc\n");
  EXPECT_THROW(cfg.threshold("absent"), ConfigError);
  EXPECT_THROW(cfg.option("m", std::size_t{1}), ConfigError);
  EXPECT_THROW(ExperimentConfig::load("/nonexistent/x.ini"), ConfigError);
}

TEST(Config, ParamsFromPreset) {
  const auto cfg = parse(
      "[experiment]\nid = x\nversion = 1\nseed = 1\nn_samples = 1\n[params]\npreset = desk\nn = 256\nell = 2\n");
  const auto p = cfg.params();
  EXPECT_EQ(p.n, 256u);
  EXPECT_EQ(p.ell, 2u);
  EXPECT_EQ(p.d, 8u);
}

TEST(Experiments, UnknownIdIsConfigError) {
  EXPECT_THROW(run_experiment(parse("[experiment]\nid = nope\nversion = 1\nseed = 1\nn_samples = 1\n")),
               ConfigError);
  EXPECT_EQ(experiment_ids().size(), 9u);
}

TEST(Experiments, WrapupIsDeterministic) {
  const auto a = run_experiment(parse(kWrapup));
  const auto b = run_experiment(parse(kWrapup));
  EXPECT_TRUE(a.all_pass());
  EXPECT_EQ(a.to_json(false).dump(), b.to_json(false).dump());
  EXPECT_EQ(a.to_json(false)["format"], kReportFormat);
}

TEST(Report, EmptyCsvIsHeaderOnly) {
  ExperimentReport r;
  r.experiment = "empty";
  std::ostringstream out;
  write_csv(out, r);
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
  EXPECT_TRUE(r.all_pass());
}

TEST(Report, CsvQuotesClaims) {
  ExperimentReport r;
  r.experiment = "e";
  r.add(at_most("m", "a, b \"c\"", 1.0, 2.0));
  std::ostringstream out;
  write_csv(out, r);
  EXPECT_NE(out.str().find("\"a, b \"\"c\"\"\""), std::string::npos);
  EXPECT_NE(out.str().find(",true\n"), std::string::npos);
}

TEST(Report, MetricComparisons) {
  EXPECT_TRUE(*at_least("x", "", 1.0, 1.0).pass);
  EXPECT_FALSE(*at_least("x", "", 0.5, 1.0).pass);
  EXPECT_TRUE(*at_most("x", "", 1.0, 1.0).pass);
  EXPECT_FALSE(*holds("x", "", false).pass);
  EXPECT_FALSE(info("x", "", 3.0).pass.has_value());
  ExperimentReport r;
  r.add(holds("x", "", false));
  EXPECT_FALSE(r.all_pass());
}

TEST(JsonIo, ReadsWitnessMap) {
  std::istringstream in(
      "{\"set\":[0,1],\"witness\":\"01\"}\n\n{\"set\":[2,3],\"witness\":\"11\"}\n");
  const auto wm = read_witness_map(in);
  ASSERT_EQ(wm.sets.size(), 2u);
  EXPECT_EQ(wm.sets[1], (Subset{2, 3}));
  EXPECT_EQ(wm.witnesses[0], "01");
  std::istringstream bad("{\"set\":[0,1],\"witness\":\"0x\"}\n");
  EXPECT_ANY_THROW(read_witness_map(bad));
}

TEST(JsonIo, NonFiniteIsNull) {
  EXPECT_TRUE(number(std::numeric_limits<double>::quiet_NaN()).is_null());
  EXPECT_EQ(number(0.5).get<double>(), 0.5);
}

}  // namespace
}  // namespace explab::lab
