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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "explab/adversary.hpp"
#include "explab/errors.hpp"
#include "explab/graph_io.hpp"
#include "explab/lab/config.hpp"
#include "explab/lab/experiments.hpp"
#include "explab/lab/json_io.hpp"
#include "explab/lab/report.hpp"
#include "explab/sampler.hpp"
#include "explab/spectral.hpp"
#include "explab/sunflower.hpp"
#include "explab/verifier.hpp"
#include "explab/walk_witness.hpp"

namespace {

using namespace explab;
using lab::Json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<Vertex> parse_vertices(const std::string& text) {
  std::vector<Vertex> out;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  long long v;
  while (in >> v) {
    if (v < 0) throw UsageError("negative vertex in '" + text + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  if (!in.eof()) throw UsageError("cannot parse vertex list '" + text + "'");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

WitnessState parse_witness(const std::string& spec, std::size_t n) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto check_set = [n](const std::vector<Vertex>& s) {
    for (auto v : s) {
      if (v >= n) throw UsageError("witness vertex " + std::to_string(v) + " outside [N]");
    }
    return s;
  };
  if (kind == "uniform") return uniform_witness(n);
  if (kind == "subset") return subset_witness(check_set(parse_vertices(arg)), n);
  if (kind == "ideal") return ideal_witness(check_set(parse_vertices(arg)), n);
  if (kind == "file") {
    std::ifstream in(arg);
    if (!in) throw ConfigError("cannot open witness file '" + arg + "'");
    std::vector<double> amps;
    double a;
    while (in >> a) amps.push_back(a);
    if (amps.size() != n) {
      throw UsageError("witness file has " + std::to_string(amps.size()) +
                       " amplitudes, graph has " + std::to_string(n) + " vertices");
    }
    return WitnessState(std::move(amps));
  }
  throw UsageError("unknown witness form '" + spec + "'");
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string default_out_dir() {
  const char* env = std::getenv("EXPLAB_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : ".";
}

struct ParamFlags {
  std::string preset = "desk";
  std::size_t n = 256;
  std::optional<std::size_t> d, ell, m;
  std::optional<double> gamma;
  std::string f;

  void attach(CLI::App* app) {
    app->add_option("--preset", preset, "desk or asymptotic")->capture_default_str();
    app->add_option("--n", n, "number of vertices")->capture_default_str();
    app->add_option("--d", d, "number of colors");
    app->add_option("--ell", ell, "number of blocks");
    app->add_option("--gamma", gamma, "concentration slack");
    app->add_option("--m", m, "number of super-vertices");
    app->add_option("--f", f, "vertices injected into block 0, e.g. \"0,1\"");
  }

  DistributionParams resolve() const {
    auto p = DistributionParams::preset(preset, n);
    if (d || ell || gamma) {
      p = DistributionParams::with_gamma(n, d.value_or(p.d), ell.value_or(p.ell),
                                         gamma.value_or(p.gamma));
    }
    if (m) p.m = *m;
    p.f = parse_vertices(f);
    p.check();
    return p;
  }
};

std::vector<Subset> petal_sunflower(std::size_t n, std::size_t zeta) {
  std::vector<Subset> out;
  for (Vertex next = 1; next + (zeta - 1) <= n; next += static_cast<Vertex>(zeta - 1)) {
    Subset s{0};
    for (std::size_t i = 0; i + 1 < zeta; ++i) s.push_back(next + static_cast<Vertex>(i));
    out.push_back(std::move(s));
    if (zeta == 1) break;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"explab: expander distinguishing laboratory"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed")->required();
  };

  auto* sample = app.add_subcommand("sample-graph", "draw one graph from P_{M,ell}(F)");
  ParamFlags sample_params;
  sample_params.attach(sample);
  std::string sample_out;
  sample->add_option("--out", sample_out, "write the graph here (.csv for text, else binary)");
  add_seed(sample);

  auto* spectral = app.add_subcommand("spectral-report", "second eigenvalue and components");
  std::string graph_path;
  std::string method = "auto";
  SpectralOptions sopts;
  spectral->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  spectral->add_option("--method", method, "auto, dense or iterative")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}))
      ->capture_default_str();
  spectral->add_option("--tol", sopts.tol)->capture_default_str();
  spectral->add_option("--max-iter", sopts.max_iter)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "exact acceptance of one witness");
  std::string witness_spec;
  verify->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--witness", witness_spec, "ideal:S | subset:S | uniform | file:path")
      ->required();

  std::string config_path;
  auto* verify_dist = app.add_subcommand("verify-dist", "mean acceptance over a distribution");
  verify_dist->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  auto* walk = app.add_subcommand("walk-sample", "sample F' by a lazy walk");
  WalkSampleParams wp;
  walk->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);
  walk->add_option("--m", wp.m)->required();
  walk->add_option("--t", wp.t)->required();
  walk->add_option("--r", wp.r)->required();
  add_seed(walk);

  auto* compare = app.add_subcommand("dist-compare", "F-then-G versus G-then-F closeness");
  compare->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  auto* sunflower = app.add_subcommand("sunflower-extract", "greedy sunflower extraction");
  std::string input_path, mu_text;
  std::size_t zeta = 0, n = 0;
  sunflower->add_option("--input", input_path, "JSON-lines witness map")
      ->required()
      ->check(CLI::ExistingFile);
  sunflower->add_option("--mu", mu_text, "p/q or decimal")->required();
  sunflower->add_option("--zeta", zeta)->required();
  sunflower->add_option("--n", n)->required();

  auto* adversary = app.add_subcommand("adversary-bound", "relation statistics and bounds");
  std::size_t k = 0;
  double delta = 0.1;
  std::string families_path;
  adversary->add_option("--n", n)->required();
  adversary->add_option("--zeta", zeta)->required();
  adversary->add_option("--k", k)->required();
  adversary->add_option("--mu", mu_text)->required();
  adversary->add_option("--delta", delta)->required();
  adversary->add_option("--families", families_path,
                        "JSON {\"core\": [...], \"sunflower\": [[...], ...]}")
      ->check(CLI::ExistingFile);

  auto* triangles = app.add_subcommand("triangles", "triangle count of a graph");
  triangles->add_option("--graph", graph_path)->required()->check(CLI::ExistingFile);

  auto* experiment = app.add_subcommand("experiment", "scripted experiments");
  experiment->require_subcommand(1);
  auto* exp_run = experiment->add_subcommand("run", "run one experiment config");
  std::string out_dir;
  exp_run->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  exp_run->add_option("--out", out_dir, "output directory (default $EXPLAB_OUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (*sample) {
    const auto p = sample_params.resolve();
    Rng rng(*seed);
    const auto out = sample_pml(p, rng);
    Json j = lab::to_json(out);
    j["params"] = lab::to_json(p);
    if (!sample_out.empty()) {
      save_graph(sample_out, out.graph);
      j["written"] = sample_out;
    }
    emit(j);
    return kExitPass;
  }
  if (*spectral) {
    sopts.method = method == "dense"       ? EigenMethod::Dense
                   : method == "iterative" ? EigenMethod::Iterative
                                           : EigenMethod::Automatic;
    emit(lab::to_json(spectral_report(load_graph(graph_path), sopts)));
    return kExitPass;
  }
  if (*verify) {
    const auto g = load_graph(graph_path);
    const auto w = parse_witness(witness_spec, g.num_vertices());
    Json j = lab::to_json(acceptance_probability(g, w));
    j["queries"] = kVerifierQueries;
    emit(j);
    return kExitPass;
  }
  if (*verify_dist) {
    const auto cfg = lab::ExperimentConfig::load(config_path);
    auto p = cfg.params();
    const auto w = parse_witness(cfg.option("witness", std::string("uniform")), p.n);
    Rng rng(cfg.seed());
    const GraphSampler sampler = [&p](Rng& r) { return sample_pml(p, r).graph; };
    const auto est = expectation_over_distribution(sampler, w, cfg.n_samples(), rng);
    emit({{"params", lab::to_json(p)}, {"acceptance", lab::to_json(est)}});
    return kExitPass;
  }
  if (*walk) {
    const auto g = load_graph(graph_path);
    Rng rng(*seed);
    QueryContext ctx;
    Json j = lab::to_json(expander_walk_sample_f(g, wp, rng, ctx));
    j["queries"] = ctx.total();
    emit(j);
    return kExitPass;
  }
  if (*compare) {
    const auto cfg = lab::ExperimentConfig::load(config_path);
    auto p = cfg.params();
    p.f.clear();
    Rng rng(cfg.seed());
    emit(lab::to_json(compare_f_then_g_vs_g_then_f(p, cfg.option("m", std::size_t{2}),
                                                   cfg.n_samples(), rng,
                                                   cfg.option("resamples", std::size_t{200}))));
    return kExitPass;
  }
  if (*sunflower) {
    std::ifstream in(input_path);
    const auto wm = lab::read_witness_map(in);
    emit(lab::to_json(extract_sunflower(wm, Rational::parse(mu_text), zeta, n)));
    return kExitPass;
  }
  if (*adversary) {
    const auto mu = Rational::parse(mu_text);
    Subset core{0};
    std::vector<Subset> sf;
    if (!families_path.empty()) {
      std::ifstream in(families_path);
      const auto j = Json::parse(in);
      core = j.at("core").get<Subset>();
      sf = j.at("sunflower").get<std::vector<Subset>>();
      std::sort(core.begin(), core.end());
      for (auto& s : sf) std::sort(s.begin(), s.end());
    } else {
      sf = petal_sunflower(n, zeta);
    }
    std::vector<Subset> ideal;
    for (auto& s : all_subsets(n, zeta)) {
      if (std::includes(s.begin(), s.end(), core.begin(), core.end())) ideal.push_back(s);
    }
    const auto st = relation_stats(build_perm_relation(sf, ideal, k, n));
    const auto brute = distinguishing_lower_bound(st, delta);
    emit({{"stats", lab::to_json(st)},
          {"closed_form_bound", lab::number(permutation_closed_form(delta, n, zeta, mu.value()))},
          {"brute_force_bound", lab::number(brute.value)},
          {"vacuous_flag", brute.vacuous}});
    return kExitPass;
  }
  if (*triangles) {
    emit(lab::to_json(triangle_count(load_graph(graph_path))));
    return kExitPass;
  }
  if (*exp_run) {
    const auto cfg = lab::ExperimentConfig::load(config_path);
    const auto report = lab::run_experiment(cfg);
    const auto written =
        lab::write_report_files(report, out_dir.empty() ? default_out_dir() : out_dir);
    std::cout << report.experiment << ": " << (report.all_pass() ? "PASS" : "FAIL") << " ("
              << written.json_path << ", " << written.csv_path << ")\n";
    return report.all_pass() ? kExitPass : kExitFail;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const explab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
  } catch (const explab::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
  } catch (const explab::ScaleError& e) {
    std::cerr << "scale error: " << e.what() << '\n';
  } catch (const explab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
