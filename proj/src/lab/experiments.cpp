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

#include "explab/lab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "explab/adversary.hpp"
#include "explab/errors.hpp"
#include "explab/lab/json_io.hpp"
#include "explab/sampler.hpp"
#include "explab/spectral.hpp"
#include "explab/stats.hpp"
#include "explab/sunflower.hpp"
#include "explab/verifier.hpp"
#include "explab/walk_witness.hpp"

namespace explab::lab {
namespace {

constexpr double kThreeSigma = 3.0;

std::vector<Vertex> prefix(std::size_t k) {
  std::vector<Vertex> v(k);
  std::iota(v.begin(), v.end(), Vertex{0});
  return v;
}

/// Draws from P_{M,l}(F) until a non-aborted sample appears.
SampleOutcome non_aborted(const DistributionParams& p, Rng& rng, std::size_t budget,
                          std::size_t& attempts) {
  for (std::size_t i = 0; i < budget; ++i) {
    ++attempts;
    auto s = sample_pml(p, rng);
    if (!s.aborted) return s;
  }
  throw ConfigError("no non-aborted sample within " + std::to_string(budget) +
                    " attempts; the parameters overflow blocks too often");
}

SampleOutcome conditioned(const DistributionParams& p, Rng& rng,
                          const ProfilePredicate& pred, std::size_t budget) {
  auto res = condition_on_profile(p, rng, pred, budget);
  if (res.exhausted()) {
    throw ConfigError("rejection sampling exhausted " + std::to_string(budget) +
                      " attempts");
  }
  return std::move(*res.sample);
}

double percentile(std::vector<double> xs, double q) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  const auto idx = static_cast<std::size_t>(
      std::floor(q * static_cast<double>(xs.size() - 1)));
  return xs[idx];
}

// ---------------------------------------------------------------------------

void run_concentration(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto base = cfg.params();
  const auto ns = cfg.option_list("n_values", {base.n});
  const auto f_size = cfg.option("f_size", std::size_t{2});
  const double alpha_min = cfg.option("alpha_min", 0.0);
  const double min_fraction = cfg.threshold("min_fraction");
  Rng root(cfg.seed());

  std::vector<double> fractions;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto p = cfg.params_for(ns[i]);
    if (p.f.empty()) p.f = prefix(f_size);
    p.check();
    auto pred = predicates::concentrated(p);
    if (alpha_min > 0.0) pred = predicates::all_of({pred, predicates::expanding(alpha_min)});
    Rng rng = root.split(i);
    std::size_t good = 0, aborts = 0;
    for (std::size_t s = 0; s < cfg.n_samples(); ++s) {
      const auto out = sample_pml(p, rng);
      aborts += out.aborted ? 1 : 0;
      if (pred(out.graph, components(out.graph))) ++good;
    }
    const double frac = static_cast<double>(good) / static_cast<double>(cfg.n_samples());
    const auto ci = wilson_interval(good, cfg.n_samples(), kThreeSigma);
    fractions.push_back(frac);
    const std::string claim =
        "fraction of samples with exactly ell components, all sizes in the "
        "(1 +- gamma) z window" +
        std::string(alpha_min > 0.0 ? " and every component alpha-expanding" : "");
    if (ns[i] == base.n) {
      rep.add(at_least("fraction_good", claim, frac, min_fraction)).at(p).interval(ci.lo, ci.hi);
    } else {
      rep.add(info("fraction_good", claim, frac)).at(p).interval(ci.lo, ci.hi);
    }
    const auto aci = wilson_interval(aborts, cfg.n_samples(), kThreeSigma);
    rep.add(info("abort_rate", "fraction of samples whose block map overflows a block",
                 static_cast<double>(aborts) / static_cast<double>(cfg.n_samples())))
        .at(p)
        .interval(aci.lo, aci.hi);
  }
  if (ns.size() > 1) {
    bool monotone = true;
    for (std::size_t i = 1; i < ns.size(); ++i) {
      if (ns[i] > ns[i - 1] && fractions[i] < fractions[i - 1]) monotone = false;
    }
    rep.add(holds("fraction_good_monotone_in_N",
                  "the good-profile fraction does not decrease as N grows", monotone));
  }
}

// ---------------------------------------------------------------------------

void run_qma_completeness(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto p = cfg.params();
  const double tol = cfg.threshold("completeness_tol");
  const double nice_tol = cfg.threshold("nice_witness_tol");
  const double bs_factor = cfg.threshold("bs_sqrt_gamma_factor");
  const auto budget = cfg.option("max_retries", std::size_t{100000});
  const auto bs_samples = cfg.option("bs_samples", cfg.n_samples());
  const auto bs_rejection_budget = cfg.option("bs_rejection_budget", std::size_t{2000});
  Rng root(cfg.seed());
  Rng rng = root.split(1);

  DistributionParams plain = p;
  plain.f.clear();
  std::size_t attempts = 0, runs = 0, components_checked = 0;
  double worst_ideal = 0.0, worst_ideal_closed = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < cfg.n_samples(); ++s) {
    const auto out = non_aborted(plain, rng, budget, attempts);
    const auto part = components(out.graph);
    for (std::uint32_t c = 0; c < part.count(); ++c) {
      if (part.sizes[c] == p.n) continue;
      const auto members = part.members(c);
      const auto ideal = ideal_witness(members, p.n);
      const auto sv = acceptance_statevector(out.graph, ideal, rep.queries);
      ++runs;
      const auto cf = acceptance_probability(out.graph, ideal);
      worst_ideal = std::max(worst_ideal, std::abs(1.0 - sv.p_accept));
      worst_ideal_closed = std::max(worst_ideal_closed, std::abs(1.0 - cf.p_accept));
      const auto subset = acceptance_probability(out.graph, subset_witness(members, p.n));
      const double bound =
          1.0 - std::sqrt(static_cast<double>(members.size()) / static_cast<double>(p.n));
      min_margin = std::min(min_margin, subset.p_accept - bound);
      ++components_checked;
    }
  }
  rep.add(info("yes_samples", "non-aborted samples evaluated",
               static_cast<double>(cfg.n_samples())))
      .at(p);
  rep.add(info("yes_abort_fraction", "fraction of draws rejected as aborted",
               1.0 - static_cast<double>(cfg.n_samples()) / static_cast<double>(attempts)))
      .at(p);
  rep.add(info("components_checked", "components S evaluated across all samples",
               static_cast<double>(components_checked)));
  rep.add(at_most("ideal_witness_max_defect",
                  "ideal witness of any component is accepted with certainty "
                  "(state-vector simulation)",
                  worst_ideal, tol))
      .at(p);
  rep.add(at_most("ideal_witness_max_defect_closed_form",
                  "ideal witness of any component is accepted with certainty (closed form)",
                  worst_ideal_closed, tol))
      .at(p);
  rep.add(at_least("subset_witness_min_margin",
                   "uniform witness on a component S is accepted with probability at "
                   "least 1 - sqrt(|S|/N)",
                   min_margin, -nice_tol))
      .at(p);
  rep.add(holds("verifier_queries_per_run",
                "the simulated verifier charges exactly two oracle queries per run",
                rep.queries.charged("verifier") == kVerifierQueries * runs));

  // Conditioned B_S via planting, S = {0, ..., zeta - 1}.
  const auto s_set = prefix(p.zeta());
  const auto pred = predicates::concentrated(plain);
  Rng brng = root.split(2);
  std::vector<double> accept;
  std::size_t bs_attempts = 0;
  for (std::size_t i = 0; i < bs_samples; ++i) {
    const auto planted = sample_bs_planted(plain, s_set, brng, pred, budget);
    if (!planted) throw ConfigError("planted B_S sampler exhausted its retries");
    bs_attempts += planted->attempts;
    accept.push_back(
        acceptance_probability(planted->outcome.graph, subset_witness(s_set, p.n)).p_accept);
  }
  const auto est = estimate_mean(accept);
  const double bs_bound = 1.0 - bs_factor * std::sqrt(p.gamma);
  rep.add(at_least("bs_subset_witness_min",
                   "witness |S> is accepted with probability at least 1 - 3 sqrt(gamma) "
                   "on every conditioned B_S sample",
                   *std::min_element(accept.begin(), accept.end()), bs_bound))
      .at(p);
  rep.add(at_least("bs_subset_witness_mean",
                   "mean acceptance of |S> over conditioned B_S is at least 1 - 3 sqrt(gamma)",
                   est.mean, bs_bound))
      .at(p)
      .interval(est.mean - kThreeSigma * est.std_error, est.mean + kThreeSigma * est.std_error);
  rep.add(info("bs_planted_acceptance", "fraction of base draws accepted by the planted sampler",
               static_cast<double>(bs_samples) / static_cast<double>(bs_attempts)))
      .at(p);

  // Plain rejection for B_S, reported to document its acceptance rate.
  Rng rrng = root.split(3);
  const auto rej = sample_bs(plain, s_set, rrng, bs_rejection_budget);
  rep.add(info("bs_rejection_accepted", "plain rejection sampling of B_S found a sample within budget",
               rej.exhausted() ? 0.0 : 1.0))
      .at(p);
  rep.add(info("bs_rejection_attempts", "draws consumed by plain rejection sampling of B_S",
               static_cast<double>(rej.attempts)))
      .at(p);
}

// ---------------------------------------------------------------------------

void run_qma_soundness(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto p = cfg.params();
  const double tol = cfg.threshold("soundness_tol");
  const double oracle_tol = cfg.threshold("oracle_tol");
  const double target = cfg.threshold("target_soundness");
  const auto budget = cfg.option("max_retries", std::size_t{1000});
  Rng rng = Rng(cfg.seed()).split(1);

  std::vector<double> gaps, opts;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double worst_oracle = 0.0;
  std::size_t runs = 0;
  for (std::size_t s = 0; s < cfg.n_samples(); ++s) {
    const auto out = conditioned(p, rng, predicates::connected(), budget);
    const double l2 = lambda2_dense(out.graph);
    const double opt = optimal_acceptance(out.graph);
    gaps.push_back(1.0 - l2);
    opts.push_back(opt);
    worst_violation = std::max(worst_violation, opt - (1.0 - (1.0 - l2) / 4.0));
    worst_oracle = std::max(worst_oracle, std::abs(opt - std::pow((1.0 + l2) / 2.0, 2)));
    if (s == 0) {
      // One explicit run with a random witness exercises query accounting.
      std::vector<double> amps(p.n);
      for (double& a : amps) a = rng.uniform() - 0.5;
      const auto w = WitnessState::normalized(amps);
      acceptance_statevector(out.graph, w, rep.queries);
      ++runs;
    }
  }
  const double alpha = percentile(gaps, 0.05);
  const auto mean_opt = estimate_mean(opts);
  const double p_no = *std::max_element(opts.begin(), opts.end());
  rep.add(at_most("optimal_acceptance_excess",
                  "best-witness acceptance never exceeds 1 - gap/4 on connected graphs",
                  worst_violation, tol))
      .at(p);
  rep.add(at_most("optimal_acceptance_oracle_error",
                  "best-witness acceptance equals ((1 + lambda2)/2)^2",
                  worst_oracle, oracle_tol))
      .at(p);
  rep.add(info("alpha_prime", "5th percentile spectral gap of the connected corpus", alpha))
      .at(p);
  rep.add(at_most("mean_best_acceptance",
                  "mean best-witness acceptance is at most 1 - alpha'/4",
                  mean_opt.mean, 1.0 - alpha / 4.0))
      .at(p)
      .interval(mean_opt.mean - kThreeSigma * mean_opt.std_error,
                mean_opt.mean + kThreeSigma * mean_opt.std_error);
  rep.add(info("per_run_soundness", "largest best-witness acceptance in the corpus", p_no)).at(p);
  const auto reps = solve_reps(p_no, target);
  rep.add(info("repetitions_needed", "all-accept repetitions bringing soundness to the target",
               static_cast<double>(reps)));
  rep.add(at_most("repeated_soundness", "soundness after the computed repetitions",
                  repeated_acceptance(p_no, reps, CombineRule::AllAccept), target));
  rep.add(holds("verifier_queries_per_run",
                "the simulated verifier charges exactly two oracle queries per run",
                rep.queries.charged("verifier") == kVerifierQueries * runs));
}

// ---------------------------------------------------------------------------

void run_walk_abort(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto p = cfg.params();
  const auto m = cfg.option("m", std::size_t{4});
  const auto r = cfg.option("r", 100 * m);
  const auto dev_trials = cfg.option("deviation_trials", std::size_t{2000});
  const auto control_trials = cfg.option("control_trials", std::size_t{1000});
  const auto cycle_n = cfg.option("cycle_n", std::size_t{64});
  const auto budget = cfg.option("max_retries", std::size_t{1000});
  const double target = cfg.threshold("abort_envelope_target");
  const double sigmas = cfg.threshold("abort_sigmas");
  Rng root(cfg.seed());
  Rng grng = root.split(1);

  const auto g = conditioned(p, grng, predicates::connected(), budget).graph;
  const double alpha = 1.0 - lambda2_dense(g);
  const std::size_t k = p.n;
  rep.add(info("alpha_prime", "measured spectral gap of the walk graph", alpha)).at(p);

  const auto t_mix = walk_steps_for_mixing(p.n, alpha, 1.0);
  const double env_mix = walk_abort_envelope(r, k, walk_delta(alpha, t_mix));
  rep.add(info("t_mixing_schedule", "t = ceil(2 ln N / alpha')", static_cast<double>(t_mix)));
  rep.add(info("abort_envelope_mixing_schedule",
               "abort envelope exp(-r/16) + 10 rK delta at the mixing schedule", env_mix));

  const auto t = walk_steps_for_envelope(r, k, alpha, target / 10.0);
  const double delta = walk_delta(alpha, t);
  const double env = walk_abort_envelope(r, k, delta);
  rep.add(info("t_envelope_schedule", "smallest t with 10 rK delta below the target",
               static_cast<double>(t)));

  Rng wrng = root.split(2);
  std::size_t aborts = 0;
  const WalkSampleParams wp{m, t, r};
  for (std::size_t i = 0; i < cfg.n_samples(); ++i) {
    aborts += expander_walk_sample_f(g, wp, wrng, rep.queries).aborted ? 1 : 0;
  }
  const double nn = static_cast<double>(cfg.n_samples());
  const double rate = static_cast<double>(aborts) / nn;
  const double allowance = sigmas * std::sqrt(std::min(env, 1.0) * (1.0 - std::min(env, 1.0)) / nn);
  const auto ci = wilson_interval(aborts, cfg.n_samples(), kThreeSigma);
  rep.add(at_most("abort_rate",
                  "walk sampling aborts with probability at most exp(-r/16) + 10 rK delta",
                  rate, env + allowance))
      .at(p)
      .interval(ci.lo, ci.hi);

  Rng crng = root.split(3);
  const auto loops = ColoredGraph::self_loops(p.n, p.d);
  std::size_t control_aborts = 0;
  QueryContext scratch;
  for (std::size_t i = 0; i < control_trials; ++i) {
    control_aborts += expander_walk_sample_f(loops, WalkSampleParams{2, 1, r}, crng, scratch)
                          .aborted ? 1 : 0;
  }
  rep.add(holds("self_loop_control_always_aborts",
                "on the all-self-loop graph the walk never finds two distinct vertices",
                control_aborts == control_trials));

  Rng drng = root.split(4);
  const auto dev = walk_vs_uniform_deviation(g, prefix(p.n), wp, alpha, dev_trials, drng);
  rep.details["deviation_expander"] = to_json(dev);
  rep.add(holds("expander_walk_within_envelope",
                "per-vertex and pairwise inclusion of F' stay within the walk-vs-uniform envelope",
                dev.within_envelope()));
  rep.add(holds("expander_walk_consistent_with_uniform",
                "with delta near zero the inclusion frequencies match uniform sampling at 3 sigma",
                dev.consistent_with_uniform()));

  const auto cycle = fixtures::two_colored_cycle(cycle_n);
  const double cycle_alpha = 1.0 - lambda2_dense(cycle);
  Rng nrng = root.split(5);
  const auto neg = walk_vs_uniform_deviation(cycle, prefix(cycle_n), WalkSampleParams{m, 1, r},
                                             cycle_alpha, dev_trials, nrng);
  rep.details["deviation_cycle_t1"] = to_json(neg);
  rep.add(holds("cycle_negative_control_detected",
                "a t = 1 walk on a cycle is distinguishable from uniform sampling",
                !neg.consistent_with_uniform()));
}

// ---------------------------------------------------------------------------

void run_d1_vs_d2(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto base = cfg.params();
  const auto ns = cfg.option_list("n_values", {base.n});
  const auto m = cfg.option("m", std::size_t{2});
  const auto resamples = cfg.option("resamples", std::size_t{200});
  const double sigmas = cfg.threshold("mean_sigmas");
  Rng root(cfg.seed());
  std::vector<double> max_tvds;
  Json per_n = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    auto p = cfg.params_for(ns[i]);
    p.f.clear();
    Rng rng = root.split(i);
    const auto res = compare_f_then_g_vs_g_then_f(p, m, cfg.n_samples(), rng, resamples);
    per_n.push_back(to_json(res));
    for (const auto& f : res.features) {
      rep.add(info("tvd_" + f.feature,
                   "empirical total variation between F-then-G and G-then-F on this feature",
                   f.tvd))
          .at(p)
          .interval(f.tvd_ci.lo, f.tvd_ci.hi);
    }
    max_tvds.push_back(res.max_tvd());
    rep.add(info("max_feature_tvd", "largest feature total variation", res.max_tvd())).at(p);
    const auto mean_ok = [&](const MeanEstimate& e, double expected) {
      return std::abs(e.mean - expected) <= sigmas * e.std_error;
    };
    rep.add(holds("d1_block0_weight_mean",
                  "|k^{-1}(block 0)| has mean N/ell when G is drawn first",
                  mean_ok(res.d1_block0_weight, res.d1_block0_expected)))
        .at(p);
    rep.add(holds("d2_block0_weight_mean",
                  "|k^{-1}(block 0)| has mean m + (N - m)/ell when F is drawn first",
                  mean_ok(res.d2_block0_weight, res.d2_block0_expected)))
        .at(p);
  }
  rep.details["comparisons"] = per_n;
  if (ns.size() > 1) {
    bool decreasing = true;
    for (std::size_t i = 1; i < ns.size(); ++i) {
      if (ns[i] > ns[i - 1] && max_tvds[i] >= max_tvds[i - 1]) decreasing = false;
    }
    rep.add(holds("max_tvd_decreasing_in_N",
                  "the largest feature distance shrinks as N grows", decreasing));
  }
}

// ---------------------------------------------------------------------------

void run_sunflower_pipeline(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto n_min = cfg.option("n_min", std::size_t{6});
  const auto n_max = cfg.option("n_max", std::size_t{12});
  const auto zeta = cfg.option("zeta", std::size_t{3});
  const auto q_max = cfg.option("q_max", std::size_t{4});
  const auto mu = Rational::parse(cfg.option("mu", std::string("1/2")));
  const double max_violations = cfg.threshold("max_violations");
  if (n_max > 24 || n_min <= zeta || n_min > n_max) {
    throw ConfigError("sunflower-pipeline: need zeta < n_min <= n_max <= 24");
  }
  Rng rng = Rng(cfg.seed()).split(1);

  std::size_t verify_fail = 0, counting_fail = 0, bound_fail = 0, step_fail = 0,
              idempotence_fail = 0, nonempty_cores = 0;
  double worst_ratio = 0.0;
  for (std::size_t trial = 0; trial < cfg.n_samples(); ++trial) {
    const auto n = n_min + static_cast<std::size_t>(rng.below(n_max - n_min + 1));
    const auto q = 1 + static_cast<std::size_t>(rng.below(q_max));
    WitnessMap wm;
    wm.sets = all_subsets(n, zeta);
    // Half the trials plant a popular witness on the sets through one vertex.
    const bool plant = rng.coin();
    const auto hub = static_cast<Vertex>(rng.below(n));
    const std::string planted(q, '0');
    for (const auto& s : wm.sets) {
      if (plant && std::binary_search(s.begin(), s.end(), hub) && rng.coin()) {
        wm.witnesses.push_back(planted);
        continue;
      }
      std::string w(q, '0');
      for (char& c : w) c = rng.coin() ? '1' : '0';
      wm.witnesses.push_back(std::move(w));
    }
    const auto res = extract_sunflower(wm, mu, zeta, n);
    if (verify_sunflower(res.sunflower, n)) ++verify_fail;
    // |Sigma| * 2^q >= C(N, zeta), in integers.
    if ((static_cast<std::uint64_t>(res.popular_count) << q) < wm.sets.size()) ++counting_fail;
    const auto bound = core_size_bound(q, mu, n, zeta);
    const auto core = static_cast<double>(res.sunflower.core.size());
    if (core > bound.strict + 1e-12) ++bound_fail;
    worst_ratio = std::max(worst_ratio, core / bound.strict);
    nonempty_cores += res.sunflower.core.empty() ? 0 : 1;
    for (std::size_t i = 1; i < res.trace.size(); ++i) {
      if (!frequency_at_least(res.trace[i], res.trace[i - 1], zeta, n, mu)) ++step_fail;
    }
    WitnessMap again;
    again.sets = res.sunflower.sets;
    again.witnesses.assign(again.sets.size(), res.witness);
    const auto second = extract_sunflower(again, mu, zeta, n);
    if (second.sunflower.core != res.sunflower.core ||
        second.sunflower.sets != res.sunflower.sets) {
      ++idempotence_fail;
    }
  }
  const auto count_metric = [&](const char* name, const char* claim, std::size_t v) {
    rep.add(at_most(name, claim, static_cast<double>(v), max_violations));
  };
  count_metric("verify_failures", "every extracted family satisfies the sunflower definition",
               verify_fail);
  count_metric("counting_bound_failures",
               "the most popular witness class has at least 2^-q C(N, zeta) sets",
               counting_fail);
  count_metric("core_bound_failures", "|F| <= q / (mu log2(N/zeta))", bound_fail);
  count_metric("restriction_step_failures",
               "each greedy restriction keeps at least a (zeta/N)^(1-mu) fraction", step_fail);
  count_metric("idempotence_failures", "re-extracting an extracted family changes nothing",
               idempotence_fail);
  rep.add(info("max_core_to_bound_ratio", "largest |F| divided by its bound", worst_ratio));
  rep.add(info("nonempty_core_fraction", "fraction of trials whose core is non-empty",
               static_cast<double>(nonempty_cores) / static_cast<double>(cfg.n_samples())));
}

// ---------------------------------------------------------------------------

std::vector<Subset> parse_family(const std::string& text) {
  std::vector<Subset> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::istringstream in(part);
    Subset s;
    std::size_t v;
    while (in >> v) s.push_back(static_cast<Vertex>(v));
    if (s.empty()) continue;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subset> supersets_of(const Subset& core, std::size_t n, std::size_t zeta) {
  std::vector<Subset> out;
  for (auto& s : all_subsets(n, zeta)) {
    if (std::includes(s.begin(), s.end(), core.begin(), core.end())) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subset> k_shadow(const std::vector<Subset>& family, std::size_t k) {
  std::set<Subset> out;
  for (const auto& s : family) {
    for (const auto& pick : all_subsets(s.size(), k)) {
      Subset c;
      for (auto i : pick) c.push_back(s[i]);
      out.insert(std::move(c));
    }
  }
  return {out.begin(), out.end()};
}

void run_adversary_tiny(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const auto n = cfg.option("n", std::size_t{6});
  const auto zeta = cfg.option("zeta", std::size_t{2});
  const auto k = cfg.option("k", zeta);
  const auto mu_r = Rational::parse(cfg.option("mu", std::string("1/2")));
  const double mu = mu_r.value();
  const double delta = cfg.option("delta", 0.1);
  const auto union_ks = cfg.option_list("union_k", {});
  const double exact_tol = cfg.threshold("exact_tol");
  const auto core_family = parse_family(cfg.option("core", std::string("0")));
  if (core_family.size() != 1) throw ConfigError("adversary-tiny: core must be one vertex list");
  const Subset core = core_family.front();
  const auto sf = parse_family(cfg.option("sunflower", std::string("0 1; 0 2")));
  const auto ideal = supersets_of(core, n, zeta);

  Sunflower flower{sf, core, mu_r, zeta};
  rep.add(holds("sunflower_valid", "the supplied family is a sunflower with the given core",
                !verify_sunflower(flower, n).has_value()));

  const auto rel = build_perm_relation(sf, ideal, k, n);
  const auto st = relation_stats(rel);
  rep.details["stats"] = to_json(st);
  rep.details["x_size"] = rel.x.size();
  rep.details["y_size"] = rel.y.size();

  bool conditions = true;
  for (const auto& cx : k_shadow(sf, k)) {
    for (const auto& cy : k_shadow(ideal, k)) {
      const auto chi = canonical_chi(cx, cy, n);
      conditions = conditions && chi_psi_conditions_hold(cx, cy, chi, canonical_psi(cx, cy, chi), k);
    }
  }
  rep.add(holds("chi_psi_conditions", "every canonical (chi, psi) pair maps both sets onto [k], "
                "agrees off the symmetric difference and swaps on it",
                conditions));
  rep.add(holds("x_degree_identity", "every sunflower-side permutation has degree |ideal|",
                st.m_lo == rel.y_family_size && st.m_hi == rel.y_family_size));
  rep.add(holds("y_degree_identity", "every ideal-side permutation has degree |sunflower|",
                st.mp_lo == rel.x_family_size && st.mp_hi == rel.x_family_size));

  const auto analytic = analytic_l_max(sf.size(), ideal.size(), core.size(), n, zeta, mu);
  rep.add(info("l_max", "brute-force max of l_{x,i} l_{y,i}", static_cast<double>(st.l_max)));
  rep.add(info("l_max_forward_table",
               "the same maximum restricted to positions of the forward permutation table",
               static_cast<double>(relation_stats(rel, OraclePositions::ForwardOnly).l_max)));
  rep.add(at_most("l_max_vs_refined_bound",
                  "l_max <= max((zeta/N)^(1-mu), (zeta-|F|)/(N-|F|)) |sunflower| |ideal|",
                  static_cast<double>(st.l_max), analytic.refined));
  rep.add(holds("analytic_preconditions", "(zeta-|F|)/(N-|F|) <= (zeta/N)^(1-mu)",
                analytic.preconditions_hold));
  if (analytic.preconditions_hold) {
    rep.add(at_most("l_max_vs_analytic_bound", "l_max <= (zeta/N)^(1-mu) |sunflower| |ideal|",
                    static_cast<double>(st.l_max), analytic.paper));
  }

  const auto half = query_lower_bound(st, 0.5);
  rep.add(at_most("bound_at_eps_half", "the lower bound vanishes at eps = 1/2",
                  std::abs(half.value), exact_tol));
  const auto zero = query_lower_bound(st, 0.0);
  const double expect = std::sqrt(static_cast<double>(st.m_lo) * static_cast<double>(st.mp_lo) /
                                  static_cast<double>(st.l_max));
  rep.add(at_most("bound_at_eps_zero_error", "at eps = 0 the bound is sqrt(m m' / l_max)",
                  std::abs(zero.value - expect), exact_tol));

  const auto brute = distinguishing_lower_bound(st, delta);
  const double closed = permutation_closed_form(delta, n, zeta, mu);
  rep.add(info("brute_force_bound", "query bound from the enumerated relation", brute.value));
  rep.add(info("closed_form_bound", "query bound from the analytic l_max", closed));
  rep.add(info("graph_closed_form_bound", "graph-distinguishing bound, half the permutation bound",
               graph_closed_form(delta, n, zeta, mu)));
  if (analytic.preconditions_hold) {
    rep.add(at_most("closed_form_minus_brute_force",
                    "the closed form never exceeds the bound computed from exact statistics",
                    closed - brute.value, exact_tol));
  }

  std::vector<Vertex> rho_map(n);
  std::iota(rho_map.begin(), rho_map.end(), Vertex{0});
  if (k >= 2) std::swap(rho_map[0], rho_map[1]);
  if (n - k >= 2) std::reverse(rho_map.begin() + static_cast<std::ptrdiff_t>(k), rho_map.end());
  const auto relabeled = relation_stats(relabel_relation(rel, Permutation(rho_map)));
  rep.add(holds("stats_relabel_invariant",
                "statistics are unchanged when both sides are relabeled by a permutation fixing [k]",
                relabeled == st));

  if (!union_ks.empty()) {
    std::vector<PermRelation> parts;
    std::vector<RelationStats> part_stats;
    for (auto kk : union_ks) {
      parts.push_back(build_perm_relation(sf, ideal, kk, n));
      part_stats.push_back(relation_stats(parts.back()));
    }
    const auto joined = relation_stats(relation_union(parts));
    rep.add(holds("union_preserves_extrema",
                  "the union over k has the combined degree and l_max extrema",
                  joined == combine_stats(part_stats)));
  }
}

// ---------------------------------------------------------------------------

void run_triangles(const ExperimentConfig& cfg, ExperimentReport& rep) {
  auto p = cfg.params();
  p.f.clear();
  const double lo = cfg.threshold("ratio_lo_factor");
  const double hi = cfg.threshold("ratio_hi_factor");
  const auto budget = cfg.option("max_retries", std::size_t{100000});
  Rng root(cfg.seed());
  Rng rng = root.split(1);
  std::vector<double> many, single;
  std::size_t attempts = 0;
  for (std::size_t i = 0; i < cfg.n_samples(); ++i) {
    many.push_back(static_cast<double>(
        triangle_count(non_aborted(p, rng, budget, attempts).graph).count));
  }
  // One block at the same scale: N' = z vertices, M' = zeta super-vertices.
  DistributionParams one;
  one.n = static_cast<std::size_t>(std::llround(p.z()));
  one.m = p.zeta();
  one.ell = 1;
  one.d = p.d;
  one.gamma = p.gamma;
  one.check();
  Rng rng1 = root.split(2);
  std::size_t attempts1 = 0;
  for (std::size_t i = 0; i < cfg.n_samples(); ++i) {
    single.push_back(static_cast<double>(
        triangle_count(non_aborted(one, rng1, budget, attempts1).graph).count));
  }
  const auto a = estimate_mean(many);
  const auto b = estimate_mean(single);
  const double ratio = a.mean / b.mean;
  // Delta-method standard error of the ratio.
  const double se = ratio * std::sqrt(std::pow(a.std_error / a.mean, 2) +
                                      std::pow(b.std_error / b.mean, 2));
  const double ell = static_cast<double>(p.ell);
  rep.add(info("mean_triangles_many_blocks", "mean triangle count over P_{M,ell}", a.mean))
      .at(p)
      .interval(a.mean - kThreeSigma * a.std_error, a.mean + kThreeSigma * a.std_error);
  rep.add(info("mean_triangles_one_block", "mean triangle count of one block at the same scale",
               b.mean))
      .at(one)
      .interval(b.mean - kThreeSigma * b.std_error, b.mean + kThreeSigma * b.std_error);
  rep.add(at_least("ratio_lower", "triangle ratio is at least the lower factor times ell", ratio,
                   lo * ell))
      .at(p)
      .interval(ratio - kThreeSigma * se, ratio + kThreeSigma * se);
  rep.add(at_most("ratio_upper", "triangle ratio is at most the upper factor times ell", ratio,
                  hi * ell))
      .at(p)
      .interval(ratio - kThreeSigma * se, ratio + kThreeSigma * se);
}

// ---------------------------------------------------------------------------

void run_wrapup(const ExperimentConfig& cfg, ExperimentReport& rep) {
  const double c_qma = cfg.input_number("qma_completeness");
  const double s_qma = cfg.input_number("qma_soundness_per_run");
  const double c_qcma = cfg.input_number("qcma_completeness");
  const double s_qcma = cfg.input_number("qcma_soundness");
  const double delta = cfg.input_number("delta");
  const double tail = cfg.input_number("tail");
  const double eps_poly = cfg.input_number("eps_poly");
  const double target_c = cfg.threshold("target_completeness");
  const double target_s = cfg.threshold("target_soundness");
  const double pml_floor = cfg.threshold("pml_f_floor");
  const double pm1_floor = cfg.threshold("pm1_floor");

  const auto reps = solve_reps(s_qma, target_s);
  rep.add(info("qma_repetitions", "all-accept repetitions for the target soundness",
               static_cast<double>(reps)));
  rep.add(at_least("qma_completeness_after_repetition",
                   "completeness after repetition stays above the target",
                   repeated_acceptance(c_qma, reps, CombineRule::AllAccept), target_c));
  rep.add(at_most("qma_soundness_after_repetition",
                  "soundness after repetition is below the target",
                  repeated_acceptance(s_qma, reps, CombineRule::AllAccept), target_s));

  const double h = c_qcma - (1.0 - delta) - tail;
  rep.add(info("accept_sunflower_mixture",
               "acceptance of the sunflower-core mixture: c - (1 - delta) - tail", h));
  const double pml_f = h - tail;
  rep.add(at_least("accept_pml_f", "acceptance of P_{M,ell}(F) after the concentration tail",
                   pml_f, pml_floor));
  const double pm1 = pml_f - eps_poly;
  rep.add(at_least("accept_pm1", "acceptance of P_{M,1} after the walk-sampling reduction",
                   pm1, pm1_floor));
  rep.add(at_least("contradiction_margin",
                   "P_{M,1} acceptance exceeds the assumed soundness plus tail",
                   pm1 - (s_qcma + tail), 0.0));
}

using Runner = std::function<void(const ExperimentConfig&, ExperimentReport&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"concentration", run_concentration},
      {"qma-completeness", run_qma_completeness},
      {"qma-soundness", run_qma_soundness},
      {"walk-abort", run_walk_abort},
      {"d1-vs-d2", run_d1_vs_d2},
      {"sunflower-pipeline", run_sunflower_pipeline},
      {"adversary-tiny", run_adversary_tiny},
      {"triangles", run_triangles},
      {"wrapup", run_wrapup},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, run] : registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(),
                               [&](const auto& e) { return e.first == cfg.id(); });
  if (it == reg.end()) throw ConfigError("unknown experiment id '" + cfg.id() + "'");

  ExperimentReport rep;
  rep.experiment = cfg.id();
  Json sections = Json::object();
  for (const auto& [name, body] : cfg.sections()) {
    Json entries = Json::object();
    for (const auto& [key, value] : body) entries[key] = value;
    sections[name] = entries;
  }
  rep.config = {{"file", std::filesystem::path(cfg.source()).filename().string()},
                {"seed", cfg.seed()},
                {"n_samples", cfg.n_samples()},
                {"sections", sections}};
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(cfg, rep);
  } catch (const ParameterError& e) {
    throw ConfigError(cfg.source() + ": " + e.what());
  }
  rep.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace explab::lab
