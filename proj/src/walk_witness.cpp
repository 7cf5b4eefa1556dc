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

#include "explab/walk_witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "explab/errors.hpp"

namespace explab {

void WalkSampleParams::check() const {
  if (m < 1 || t < 1 || r < m) {
    throw ParameterError("WalkSampleParams: need m >= 1, t >= 1, r >= m");
  }
}

WalkSampleParams WalkSampleParams::scheduled(std::size_t m, std::size_t t) {
  WalkSampleParams p{m, t, 100 * m};
  p.check();
  return p;
}

FSampleOutcome expander_walk_sample_f(const ColoredGraph& g, const WalkSampleParams& p,
                                      Rng& rng, QueryContext& ctx,
                                      std::span<const Vertex> start_set) {
  p.check();
  FSampleOutcome out;
  out.start = start_set.empty() ? static_cast<Vertex>(rng.below(g.num_vertices()))
                                : start_set[rng.below(start_set.size())];
  out.retained.reserve(p.r);
  Vertex v = out.start;
  out.retained.push_back(v);
  for (std::size_t i = 1; i < p.r; ++i) {
    for (std::size_t s = 0; s < p.t; ++s) {
      if (rng.coin()) continue;
      v = neighbor(g, v, static_cast<Color>(rng.below(g.degree())), ctx, "walk");
    }
    out.retained.push_back(v);
  }
  std::vector<Vertex> seen;
  for (Vertex x : out.retained) {
    if (std::find(seen.begin(), seen.end(), x) == seen.end()) {
      seen.push_back(x);
      if (seen.size() == p.m) break;
    }
  }
  out.aborted = seen.size() < p.m;
  if (!out.aborted) out.f_prime = std::move(seen);
  return out;
}

double walk_delta(double alpha, std::size_t t) {
  return std::pow(1.0 - alpha / 2.0, static_cast<double>(t));
}

double walk_set_envelope(std::size_t r, std::size_t k, double delta) {
  const double x = static_cast<double>(r) * static_cast<double>(k) * delta;
  if (x >= 1.0) return std::numeric_limits<double>::infinity();
  return x + x * x / (1.0 - x);
}

double walk_abort_envelope(std::size_t r, std::size_t k, double delta) {
  return std::exp(-static_cast<double>(r) / 16.0) +
         10.0 * static_cast<double>(r) * static_cast<double>(k) * delta;
}

std::size_t walk_steps_for_mixing(std::size_t n, double alpha, double c) {
  if (!(alpha > 0.0)) throw ParameterError("walk_steps_for_mixing: alpha must be positive");
  return static_cast<std::size_t>(std::ceil(2.0 * c * std::log(static_cast<double>(n)) / alpha));
}

std::size_t walk_steps_for_envelope(std::size_t r, std::size_t k, double alpha,
                                    double target) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw ParameterError("walk_steps_for_envelope: alpha must lie in (0, 2]");
  }
  const double rk = static_cast<double>(r) * static_cast<double>(k);
  if (rk <= target) return 1;
  const double t = std::log(target / rk) / std::log(1.0 - alpha / 2.0);
  auto steps = static_cast<std::size_t>(std::ceil(t));
  while (rk * walk_delta(alpha, steps) > target) ++steps;
  return std::max<std::size_t>(steps, 1);
}

double uniform_abort_probability(std::size_t r, std::size_t k, std::size_t m) {
  if (m == 0) return 0.0;
  if (m > k) return 1.0;
  // dist[j]: probability of j distinct values so far; index m absorbs >= m.
  std::vector<double> dist(m + 1, 0.0), next(m + 1);
  dist[0] = 1.0;
  const double kk = static_cast<double>(k);
  for (std::size_t i = 0; i < r; ++i) {
    std::fill(next.begin(), next.end(), 0.0);
    next[m] = dist[m];
    for (std::size_t j = 0; j < m; ++j) {
      const double stay = static_cast<double>(j) / kk;
      next[j] += dist[j] * stay;
      next[j + 1] += dist[j] * (1.0 - stay);
    }
    dist.swap(next);
  }
  return 1.0 - dist[m];
}

DeviationReport walk_vs_uniform_deviation(const ColoredGraph& g,
                                          std::span<const Vertex> component,
                                          const WalkSampleParams& p, double alpha,
                                          std::size_t n_trials, Rng& rng) {
  p.check();
  if (component.empty()) throw ParameterError("walk_vs_uniform_deviation: empty component");
  if (n_trials == 0) throw ParameterError("walk_vs_uniform_deviation: no trials");
  const std::size_t k = component.size();
  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> local(g.num_vertices(), kNone);
  for (std::size_t i = 0; i < k; ++i) local[component[i]] = static_cast<std::uint32_t>(i);

  DeviationReport rep;
  rep.trials = n_trials;
  rep.component_size = k;
  rep.alpha = alpha;
  rep.delta = walk_delta(alpha, p.t);
  rep.rk_delta = static_cast<double>(p.r) * static_cast<double>(k) * rep.delta;
  rep.regime_ok = rep.rk_delta < 1.0;
  rep.envelope = walk_set_envelope(p.r, k, rep.delta);

  std::vector<double> single(k, 0.0);
  std::vector<double> pair(k * k, 0.0);
  QueryContext scratch;
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const auto out = expander_walk_sample_f(g, p, rng, scratch, component);
    if (out.aborted) {
      ++rep.aborts;
      continue;
    }
    for (std::size_t a = 0; a < out.f_prime.size(); ++a) {
      const auto ia = local[out.f_prime[a]];
      if (ia == kNone) throw ParameterError("walk left the supplied component");
      single[ia] += 1.0;
      for (std::size_t b = a + 1; b < out.f_prime.size(); ++b) {
        const auto ib = local[out.f_prime[b]];
        pair[std::min(ia, ib) * k + std::max(ia, ib)] += 1.0;
      }
    }
  }

  const double nt = static_cast<double>(n_trials);
  const double kk = static_cast<double>(k);
  const double mm = static_cast<double>(p.m);
  const double keep = 1.0 - uniform_abort_probability(p.r, k, p.m);
  const double ref_single = keep * mm / kk;
  const double ref_pair = k > 1 ? keep * mm * (mm - 1.0) / (kk * (kk - 1.0)) : 0.0;
  const double features = kk + kk * (kk - 1.0) / 2.0;
  const double level = 0.0027 / features;
  rep.vertex_allowance = binomial_deviation_allowance(n_trials, ref_single, level);
  rep.pair_allowance = binomial_deviation_allowance(n_trials, ref_pair, level);

  for (std::size_t i = 0; i < k; ++i) {
    rep.max_vertex_deviation =
        std::max(rep.max_vertex_deviation, std::abs(single[i] / nt - ref_single));
    for (std::size_t j = i + 1; j < k; ++j) {
      rep.max_pair_deviation =
          std::max(rep.max_pair_deviation, std::abs(pair[i * k + j] / nt - ref_pair));
    }
  }
  return rep;
}

double ClosenessReport::max_tvd() const {
  double worst = 0.0;
  for (const auto& f : features) worst = std::max(worst, f.tvd);
  return worst;
}

namespace {

std::vector<Vertex> random_subset(std::vector<Vertex> pool, std::size_t m, Rng& rng) {
  shuffle(std::span<Vertex>(pool), rng);
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::int64_t feature_bin(const DistributionParams& params, std::size_t value) {
  const double width = params.z() / 8.0;
  return static_cast<std::int64_t>(static_cast<double>(value) / width);
}

PairFeatures features_of(const DistributionParams& params, const SampleOutcome& s,
                         const ComponentPartition& part, Vertex anchor) {
  PairFeatures f;
  const auto size = part.sizes[part.labels[anchor]];
  f.component_bin = std::min<std::int64_t>(16, feature_bin(params, size));
  const auto block = s.k_map[anchor];
  f.f_block_weight = std::count(s.k_map.begin(), s.k_map.end(), block);
  f.block0_weight = std::count(s.k_map.begin(), s.k_map.end(), 0U);
  return f;
}

}  // namespace

ClosenessReport compare_f_then_g_vs_g_then_f(const DistributionParams& params,
                                             std::size_t m, std::size_t n_samples,
                                             Rng& rng, std::size_t resamples) {
  DistributionParams base = params;
  base.f.clear();
  base.check();
  if (m > base.zeta() || m > base.n) {
    throw ParameterError("compare_f_then_g_vs_g_then_f: m exceeds M/ell");
  }
  if (n_samples < 2) throw ParameterError("compare_f_then_g_vs_g_then_f: need >= 2 samples");

  ClosenessReport rep;
  rep.n_samples = n_samples;
  rep.m = m;
  std::vector<std::int64_t> comp1, comp2, fblock1, fblock2, block1, block2;
  std::vector<double> w1, w2;
  std::vector<Vertex> everyone(base.n);
  std::iota(everyone.begin(), everyone.end(), Vertex{0});

  Rng rng1 = rng.split(1), rng2 = rng.split(2), rng_stats = rng.split(3);
  for (std::size_t i = 0; i < n_samples; ++i) {
    // D1: graph first.
    const SampleOutcome g1 = sample_pml(base, rng1);
    rep.d1_aborts += g1.aborted ? 1 : 0;
    const auto part1 = components(g1.graph);
    const auto v = static_cast<Vertex>(rng1.below(base.n));
    auto members = part1.members(part1.labels[v]);
    if (members.size() < m) {
      ++rep.d1_undefined;
    } else {
      const auto f = random_subset(std::move(members), m, rng1);
      const auto feat = features_of(base, g1, part1, m == 0 ? v : f.front());
      comp1.push_back(feat.component_bin);
      fblock1.push_back(feature_bin(base, static_cast<std::size_t>(feat.f_block_weight)));
    }
    const auto weight1 = static_cast<std::size_t>(std::count(g1.k_map.begin(), g1.k_map.end(), 0U));
    block1.push_back(feature_bin(base, weight1));
    w1.push_back(static_cast<double>(weight1));

    // D2: core first.
    DistributionParams with_f = base;
    with_f.f = random_subset(everyone, m, rng2);
    const SampleOutcome g2 = sample_pml(with_f, rng2);
    rep.d2_aborts += g2.aborted ? 1 : 0;
    const auto part2 = components(g2.graph);
    const Vertex anchor = m == 0 ? static_cast<Vertex>(rng2.below(base.n)) : with_f.f.front();
    const auto feat = features_of(base, g2, part2, anchor);
    comp2.push_back(feat.component_bin);
    fblock2.push_back(feature_bin(base, static_cast<std::size_t>(feat.f_block_weight)));
    block2.push_back(feature_bin(base, static_cast<std::size_t>(feat.block0_weight)));
    w2.push_back(static_cast<double>(feat.block0_weight));
  }

  const auto compare = [&](const std::string& name, const std::vector<std::int64_t>& a,
                           const std::vector<std::int64_t>& b) {
    FeatureComparison fc;
    fc.feature = name;
    if (a.empty() || b.empty()) {
      fc.tvd = 1.0;
      fc.tvd_ci = {1.0, 1.0};
      fc.p_value = 0.0;
    } else {
      fc.tvd = total_variation(a, b);
      fc.tvd_ci = bootstrap_tvd_interval(a, b, resamples, 0.95, rng_stats);
      fc.p_value = permutation_pvalue(a, b, resamples, rng_stats);
    }
    rep.features.push_back(fc);
  };
  compare("component_size", comp1, comp2);
  compare("f_block_weight", fblock1, fblock2);
  compare("block0_weight", block1, block2);

  rep.d1_block0_weight = estimate_mean(w1);
  rep.d2_block0_weight = estimate_mean(w2);
  const double nn = static_cast<double>(base.n), ll = static_cast<double>(base.ell);
  rep.d1_block0_expected = nn / ll;
  rep.d2_block0_expected = static_cast<double>(m) + (nn - static_cast<double>(m)) / ll;
  return rep;
}

}  // namespace explab
