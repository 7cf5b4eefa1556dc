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
#include <functional>
#include <span>
#include <vector>

#include "explab/graph.hpp"
#include "explab/rng.hpp"
#include "explab/stats.hpp"

namespace explab {

/// Real unit vector over the vertex register.
class WitnessState {
 public:
  /// Throws ParameterError unless ||amps|| = 1 within 1e-12.
  explicit WitnessState(std::vector<double> amps);
  /// Rescales to unit norm; throws on the zero vector.
  static WitnessState normalized(std::vector<double> amps);

  std::size_t size() const { return amps_.size(); }
  std::span<const double> amps() const { return amps_; }
  double operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<double> amps_;
};

/// |0_V>: the uniform superposition.
WitnessState uniform_witness(std::size_t n);
/// |S>: uniform over S.
WitnessState subset_witness(std::span<const Vertex> s, std::size_t n);
/// sqrt(|T|/N)|S> - sqrt(|S|/N)|T> with T the complement of S. Requires S to be
/// a proper non-empty subset.
WitnessState ideal_witness(std::span<const Vertex> s, std::size_t n);

struct VerifierOutcome {
  double p_step2 = 0.0;          // control reads + and color reads 0_d
  double p_accept = 0.0;         // and the witness is then orthogonal to 0_V
  double overlap_uniform = 0.0;  // |<0_V|psi'>|^2
};

/// Closed form: psi' = (w + Aw)/2, p_step2 = ||psi'||^2,
/// p_accept = ||psi' - <0_V|psi'> 0_V||^2.
VerifierOutcome acceptance_probability(const ColoredGraph& g, const WitnessState& w);

/// 1/4 + <w|A^2|w>/4 + <w|A|w>/2.
double test_score_exact(const ColoredGraph& g, const WitnessState& w);

inline constexpr std::uint64_t kVerifierQueries = 2;

/// Explicit simulation on the 2*N*d dimensional control (x) vertex (x) color
/// space: |+>|w>|0_d>, controlled walk |j, c> -> |adj(j, c), c>, then
/// projections. Charges kVerifierQueries to `ctx` under "verifier".
VerifierOutcome acceptance_statevector(const ColoredGraph& g, const WitnessState& w,
                                       QueryContext& ctx);

/// max over unit w of p_accept: the top eigenvalue of W (I - P) W with
/// W = (I + A)/2 and P the projector onto 0_V. Dense only; throws ScaleError
/// above `dense_threshold`.
double optimal_acceptance(const ColoredGraph& g, std::size_t dense_threshold = 4096);

enum class CombineRule { AllAccept, Majority };

/// Acceptance after `reps` independent runs: all must accept, or a strict
/// majority must.
double repeated_acceptance(double p, std::uint64_t reps, CombineRule rule);

/// Smallest reps with p^reps <= target under all-accept: ceil(ln target / ln p).
std::uint64_t solve_reps(double p_no, double target);

using GraphSampler = std::function<ColoredGraph(Rng&)>;
using GraphScore = std::function<double(const ColoredGraph&)>;

/// Mean and standard error of exact per-graph acceptance over sampled graphs.
MeanEstimate expectation_over_distribution(const GraphSampler& sampler,
                                           const WitnessState& w,
                                           std::size_t n_samples, Rng& rng);
MeanEstimate expectation_over_distribution(const GraphSampler& sampler,
                                           const GraphScore& score,
                                           std::size_t n_samples, Rng& rng);

/// PerGraph repeats on one drawn graph; PerDistribution redraws the graph for
/// every repetition.
enum class RepetitionMode { PerGraph, PerDistribution };

MeanEstimate amplified_acceptance(const GraphSampler& sampler, const GraphScore& score,
                                  std::uint64_t reps, CombineRule rule,
                                  RepetitionMode mode, std::size_t n_samples, Rng& rng);

}  // namespace explab
