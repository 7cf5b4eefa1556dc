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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "explab/graph.hpp"
#include "explab/lab/config.hpp"
#include "explab/lab/experiments.hpp"
#include "explab/lab/report.hpp"
#include "explab/rng.hpp"
#include "explab/sampler.hpp"
#include "explab/spectral.hpp"
#include "explab/verifier.hpp"

namespace {

using namespace explab;
using lab::ExperimentReport;
using lab::Metric;

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s  %2d  %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ExperimentReport run(const std::string& name) {
  return lab::run_experiment(
      lab::ExperimentConfig::load(std::string(EXPLAB_CONFIG_DIR) + "/" + name + ".ini"));
}

const Metric* find(const ExperimentReport& rep, const std::string& name, std::size_t n = 0) {
  for (const auto& m : rep.metrics) {
    if (m.name == name && (n == 0 || m.n == n) && m.pass.has_value()) return &m;
  }
  for (const auto& m : rep.metrics) {
    if (m.name == name && (n == 0 || m.n == n)) return &m;
  }
  return nullptr;
}

double value(const ExperimentReport& rep, const std::string& name, std::size_t n = 0) {
  const auto* m = find(rep, name, n);
  return m ? m->value : std::nan("");
}

bool passed(const ExperimentReport& rep, const std::string& name) {
  const auto* m = find(rep, name);
  return m && m->pass.value_or(false);
}

std::vector<ColoredGraph> sampled_corpus(std::size_t count, std::size_t max_log_n,
                                         std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t ells[] = {1, 2, 4};
  const std::size_t ds[] = {3, 4, 8};
  std::vector<ColoredGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = std::size_t{1} << (4 + i % (max_log_n - 3));
    const auto p = DistributionParams::with_gamma(n, ds[(i / 3) % 3], ells[i % 3], 0.25);
    out.push_back(sample_pml(p, rng).graph);
  }
  return out;
}

std::vector<ColoredGraph> fixture_corpus() {
  std::vector<ColoredGraph> out = {fixtures::k4(), fixtures::two_colored_cycle(4),
                                   fixtures::two_colored_cycle(10),
                                   fixtures::disjoint_union(fixtures::k4(), fixtures::k4())};
  out.push_back(ColoredGraph::self_loops(8, 3));
  return out;
}

WitnessState random_witness(std::size_t n, Rng& rng, std::size_t kind) {
  if (kind % 4 == 1) {
    std::vector<Vertex> s;
    for (Vertex j = 0; j < n; ++j) {
      if (rng.coin()) s.push_back(j);
    }
    if (s.empty() || s.size() == n) s = {0};
    return kind % 8 == 1 ? subset_witness(s, n) : ideal_witness(s, n);
  }
  std::vector<double> amps(n);
  for (auto& a : amps) a = 2.0 * rng.uniform() - 1.0;
  return WitnessState::normalized(std::move(amps));
}

void criteria_from_qma(const ExperimentReport& c, const ExperimentReport& s) {
  const double samples = value(c, "yes_samples");
  const double defect = std::max(value(c, "ideal_witness_max_defect"),
                                 value(c, "ideal_witness_max_defect_closed_form"));
  verdict(1, samples >= 200 && defect <= 1e-10 && c.wall_clock_s <= 120.0,
          "completeness exactness",
          "max |1 - p_accept(ideal)| " + fmt(defect) + " over " + fmt(samples) +
              " YES samples, " + fmt(value(c, "components_checked")) + " components, " +
              fmt(c.wall_clock_s) + " s");

  const double excess = value(s, "optimal_acceptance_excess");
  const auto cfg = lab::ExperimentConfig::load(std::string(EXPLAB_CONFIG_DIR) +
                                               "/qma-soundness.ini");
  verdict(2,
          cfg.n_samples() >= 200 && cfg.params().ell == 1 && excess <= 1e-9 &&
              s.wall_clock_s <= 300.0,
          "soundness inequality",
          "max opt - (1 - gap/4) = " + fmt(excess) + " over " +
              std::to_string(cfg.n_samples()) + " connected samples, " +
              fmt(s.wall_clock_s) + " s");

  const double margin = value(c, "subset_witness_min_margin");
  const auto* bs = find(c, "bs_subset_witness_min");
  const double gamma = lab::ExperimentConfig::load(std::string(EXPLAB_CONFIG_DIR) +
                                                   "/qma-completeness.ini")
                           .params()
                           .gamma;
  const double bs_floor = 1.0 - 3.0 * std::sqrt(gamma);
  const bool bs_ok = bs && bs->value >= bs_floor;
  verdict(3, margin >= -1e-9 && bs_ok, "nice-witness bound",
          "min p(|S>) - (1 - sqrt(|S|/N)) = " + fmt(margin) + ", min B_S acceptance " +
              (bs ? fmt(bs->value) : std::string("n/a")) + " vs " + fmt(bs_floor));
}

void criterion_closed_form() {
  Rng rng(404);
  double worst = 0.0;
  std::size_t cases = 0;
  const auto graphs = sampled_corpus(50, 8, 4040);
  for (const auto& g : graphs) {
    for (std::size_t w = 0; w < 20; ++w) {
      const auto wit = random_witness(g.num_vertices(), rng, w);
      QueryContext ctx;
      const auto closed = acceptance_probability(g, wit);
      const auto sv = acceptance_statevector(g, wit, ctx);
      worst = std::max({worst, std::abs(closed.p_step2 - test_score_exact(g, wit)),
                        std::abs(closed.p_step2 - sv.p_step2),
                        std::abs(closed.p_accept - sv.p_accept)});
      ++cases;
    }
  }
  verdict(4, cases == 1000 && worst <= 1e-10, "closed form vs state vector",
          "max deviation " + fmt(worst) + " over " + std::to_string(cases) + " cases");
}

void criterion_spectral(std::vector<ColoredGraph>& connected) {
  auto graphs = sampled_corpus(100, 10, 5050);
  double worst = 0.0;
  std::size_t iff_fail = 0;
  SpectralOptions iterative;
  iterative.method = EigenMethod::Iterative;
  bool converged = true;
  for (const auto& g : graphs) {
    const double dense = lambda2_dense(g);
    const auto it = second_eigenvalue(g, iterative);
    converged = converged && it.converged;
    worst = std::max(worst, std::abs(dense - it.lambda2));
  }
  for (const auto& g : fixture_corpus()) graphs.push_back(g);
  for (const auto& g : graphs) {
    const double dense = lambda2_dense(g);
    const bool disconnected = components(g).count() > 1;
    if ((std::abs(dense - 1.0) <= 1e-9) != disconnected) ++iff_fail;
    if (!disconnected) connected.push_back(g);
  }
  double circulant = 0.0;
  for (std::size_t n = 4; n <= 64; n += 2) {
    const auto g = fixtures::two_colored_cycle(n);
    const double exact = std::cos(2.0 * std::numbers::pi / static_cast<double>(n));
    circulant = std::max({circulant, std::abs(lambda2_dense(g) - exact),
                          std::abs(second_eigenvalue(g, iterative).lambda2 - exact)});
  }
  verdict(5, converged && worst <= 1e-8 && iff_fail == 0 && circulant <= 1e-9,
          "spectral oracle equivalence",
          "dense vs iterative " + fmt(worst) + " on 100 graphs, " +
              std::to_string(iff_fail) + " connectivity mismatches on " +
              std::to_string(graphs.size()) + ", circulant error " + fmt(circulant));
}

void criterion_mixing(const std::vector<ColoredGraph>& connected) {
  double worst_slack = -1.0;
  std::size_t checks = 0;
  for (const auto& g : connected) {
    const std::size_t n = g.num_vertices();
    const double alpha = 1.0 - lambda2_dense(g);
    const std::size_t starts = std::min<std::size_t>(n, 8);
    for (std::size_t s = 0; s < starts; ++s) {
      std::vector<double> start(n, 0.0);
      start[(s * n) / starts] = 1.0;
      for (std::size_t steps : {1, 10, 100}) {
        const double dev = lazy_walk(g, start, steps).max_deviation_from_uniform();
        worst_slack = std::max(worst_slack, dev - mixing_bound(alpha, steps));
        ++checks;
      }
    }
  }
  verdict(6, checks > 0 && worst_slack <= 1e-12, "mixing",
          "max (deviation - (1 - alpha/2)^ell) = " + fmt(worst_slack) + " over " +
              std::to_string(checks) + " walks on " + std::to_string(connected.size()) +
              " connected graphs");
}

void criterion_concentration() {
  const auto rep = run("concentration");
  const double f256 = value(rep, "fraction_good", 256);
  const auto* f = find(rep, "fraction_good", 256);
  const bool ok = f && f->ell == 4 && f->d == 8 && f256 >= 0.9 &&
                  passed(rep, "fraction_good_monotone_in_N");
  verdict(7, ok, "concentration",
          "fraction " + fmt(value(rep, "fraction_good", 64)) + " / " + fmt(f256) + " / " +
              fmt(value(rep, "fraction_good", 1024)) + " at N = 64 / 256 / 1024");
}

void criterion_sunflower() {
  const auto rep = run("sunflower-pipeline");
  const double bad = value(rep, "verify_failures") + value(rep, "counting_bound_failures") +
                     value(rep, "core_bound_failures");
  verdict(8, bad == 0.0 && rep.all_pass() && rep.wall_clock_s <= 60.0, "sunflower pipeline",
          fmt(bad) + " violations over 1000 witness maps, " + fmt(rep.wall_clock_s) + " s");
}

void criterion_adversary() {
  const auto rep = run("adversary-tiny");
  const bool degrees = passed(rep, "x_degree_identity") && passed(rep, "y_degree_identity");
  const bool pre = passed(rep, "analytic_preconditions");
  const bool lmax = !pre || passed(rep, "l_max_vs_analytic_bound");
  const bool eps = passed(rep, "bound_at_eps_half") && passed(rep, "bound_at_eps_zero_error");
  const auto* bound = find(rep, "l_max_vs_analytic_bound");
  verdict(9, degrees && lmax && eps, "adversary relation",
          std::string("degrees ") + (degrees ? "exact" : "wrong") + ", l_max " +
              fmt(value(rep, "l_max")) + " vs analytic bound " +
              (bound && bound->threshold ? fmt(*bound->threshold) : std::string("n/a")) +
              (pre ? " (preconditions hold)" : " (preconditions fail)") + ", eps identities " +
              (eps ? "exact" : "wrong"));
}

void criterion_walk() {
  const auto rep = run("walk-abort");
  const bool ok = passed(rep, "abort_rate") && passed(rep, "self_loop_control_always_aborts");
  const auto* a = find(rep, "abort_rate");
  verdict(10, ok, "walk witness",
          "abort rate " + fmt(a ? a->value : std::nan("")) + " vs envelope " +
              (a && a->threshold ? fmt(*a->threshold) : std::string("n/a")) +
              ", self-loop control " +
              (passed(rep, "self_loop_control_always_aborts") ? "always aborts" : "failed"));
}

void criterion_triangles() {
  const auto rep = run("triangles");
  const auto* lo = find(rep, "ratio_lower");
  const double ell = lo && lo->ell ? static_cast<double>(lo->ell) : 4.0;
  const double ratio = lo ? lo->value : std::nan("");
  const bool ok = lo && lo->n == 1024 && ratio >= 0.9 * ell && ratio <= 1.1 * ell;
  verdict(11, ok, "triangle distinguisher",
          "ratio " + fmt(ratio) + " within [" + fmt(0.9 * ell) + ", " + fmt(1.1 * ell) + "]");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string strip_timing(std::string json) {
  std::istringstream in(json);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_clock_s\"") == std::string::npos) out += line + '\n';
  }
  return out;
}

void criterion_reproducibility() {
  const std::filesystem::path work(EXPLAB_WORK_DIR);
  bool same = true;
  std::size_t compared = 0;
  for (const std::string name : {"concentration", "sunflower-pipeline", "adversary-tiny"}) {
    std::string json[2], csv[2];
    for (int r = 0; r < 2; ++r) {
      const auto dir = work / ("run" + std::to_string(r));
      std::filesystem::remove(dir / (name + ".json"));
      const std::string cmd = std::string("\"") + EXPLAB_CLI + "\" experiment run \"" +
                              EXPLAB_CONFIG_DIR + "/" + name + ".ini\" --out \"" +
                              dir.string() + "\" > /dev/null";
      [[maybe_unused]] const int rc = std::system(cmd.c_str());
      json[r] = strip_timing(read_file(dir / (name + ".json")));
      csv[r] = read_file(dir / (name + ".csv"));
    }
    same = same && !json[0].empty() && json[0] == json[1] && csv[0] == csv[1];
    ++compared;
  }
  verdict(12, same, "reproducibility",
          std::to_string(compared) +
              " configs run twice through `explab experiment run`, reports " +
              (same ? "byte-identical" : "differ") +
              " apart from wall_clock_s (second platform not available here)");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criteria_from_qma(run("qma-completeness"), run("qma-soundness"));
  criterion_closed_form();
  std::vector<ColoredGraph> connected;
  criterion_spectral(connected);
  criterion_mixing(connected);
  criterion_concentration();
  criterion_sunflower();
  criterion_adversary();
  criterion_walk();
  criterion_triangles();
  criterion_reproducibility();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 12 criteria failed (%.1f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
