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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "explab/graph.hpp"
#include "explab/rng.hpp"
#include "explab/sampler.hpp"
#include "explab/stats.hpp"

namespace explab {

struct WalkSampleParams {
  std::size_t m = 1;  // target |F'|
  std::size_t t = 1;  // lazy steps between retained vertices
  std::size_t r = 1;  // retained vertices
  void check() const;
  /// r = 100 m.
  static WalkSampleParams scheduled(std::size_t m, std::size_t t);
};

struct FSampleOutcome {
  std::vector<Vertex> f_prime;   // first m distinct retained vertices, in order
  bool aborted = false;
  Vertex start = 0;
  std::vector<Vertex> retained;  // v_1 = start, then one every t steps
};

/// Lazy walk from a uniform start (over `start_set`, or all of [N] when it is
/// empty). Each step stays with probability 1/2, otherwise follows a uniform
/// color through `neighbor`, charging one "walk" query; lazy steps are free.
FSampleOutcome expander_walk_sample_f(const ColoredGraph& g, const WalkSampleParams& p,
                                      Rng& rng, QueryContext& ctx,
                                      std::span<const Vertex> start_set = {});

/// delta = (1 - alpha/2)^t.
double walk_delta(double alpha, std::size_t t);
/// rK delta + (rK delta)^2 / (1 - rK delta); infinite when rK delta >= 1.
double walk_set_envelope(std::size_t r, std::size_t k, double delta);
/// exp(-r/16) + 10 r K delta.
double walk_abort_envelope(std::size_t r, std::size_t k, double delta);
/// ceil(2 c ln N / alpha).
std::size_t walk_steps_for_mixing(std::size_t n, double alpha, double c = 2.0);
/// Smallest t with r K (1 - alpha/2)^t <= target.
std::size_t walk_steps_for_envelope(std::size_t r, std::size_t k, double alpha,
                                    double target);

/// Probability that r iid uniform draws from K points show fewer than m
/// distinct values.
double uniform_abort_probability(std::size_t r, std::size_t k, std::size_t m);

struct DeviationReport {
  std::size_t trials = 0;
  std::size_t aborts = 0;
  std::size_t component_size = 0;  // K
  double alpha = 0.0;
  double delta = 0.0;
  double rk_delta = 0.0;
  bool regime_ok = false;           // rK delta < 1
  double envelope = 0.0;            // walk_set_envelope, infinite outside regime
  double max_vertex_deviation = 0.0;
  double max_pair_deviation = 0.0;
  /// Family-wise 3 sigma sampling allowance: exact binomial quantiles at
  /// level 0.0027 / #features (Bonferroni).
  double vertex_allowance = 0.0;
  double pair_allowance = 0.0;
  bool consistent_with_uniform() const {
    return max_vertex_deviation <= vertex_allowance && max_pair_deviation <= pair_allowance;
  }
  bool within_envelope() const {
    return regime_ok && max_vertex_deviation <= envelope + vertex_allowance &&
           max_pair_deviation <= envelope + pair_allowance;
  }
};

/// Compares per-vertex inclusion and pairwise co-inclusion frequencies of F'
/// (walks started uniformly in `component`) with their exact values under iid
/// uniform sampling. `alpha` is the measured gap of the component.
DeviationReport walk_vs_uniform_deviation(const ColoredGraph& g,
                                          std::span<const Vertex> component,
                                          const WalkSampleParams& p, double alpha,
                                          std::size_t n_trials, Rng& rng);

/// Projected features of a (G, F) pair.
struct PairFeatures {
  std::int64_t component_bin = 0;     // size of F's component, bins of width z/8
  std::int64_t f_block_weight = 0;    // |k^{-1}(k(F))|
  std::int64_t block0_weight = 0;     // |k^{-1}(0)|
};

struct FeatureComparison {
  std::string feature;
  double tvd = 0.0;
  Interval tvd_ci;
  double p_value = 1.0;
};

struct ClosenessReport {
  std::size_t n_samples = 0;
  std::size_t m = 0;
  std::size_t d1_undefined = 0;  // D1 draws whose chosen component is smaller than m
  std::size_t d1_aborts = 0;
  std::size_t d2_aborts = 0;
  std::vector<FeatureComparison> features;
  MeanEstimate d1_block0_weight;
  MeanEstimate d2_block0_weight;
  double d1_block0_expected = 0.0;  // N / ell
  double d2_block0_expected = 0.0;  // m + (N - m) / ell
  double max_tvd() const;
};

/// D1: G ~ P_{M,l}, then F uniform among m-subsets of a uniformly chosen
/// vertex's component. D2: F uniform among m-subsets of [N], then
/// G ~ P_{M,l}(F). Feature TVDs come with percentile bootstrap intervals and
/// permutation p-values. Every feature is compared in bins of width z/8; the
/// block-0 weight means use raw counts.
ClosenessReport compare_f_then_g_vs_g_then_f(const DistributionParams& params,
                                             std::size_t m, std::size_t n_samples,
                                             Rng& rng, std::size_t resamples = 200);

}  // namespace explab
