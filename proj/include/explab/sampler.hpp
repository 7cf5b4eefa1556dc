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
#include <optional>
#include <string>
#include <vector>

#include "explab/graph.hpp"
#include "explab/rng.hpp"

namespace explab {

/// Parameters of P_{M,l}(F). Blocks are 0-based: block b owns super-vertices
/// [b*zeta, (b+1)*zeta), and the core F is injected into block 0.
struct DistributionParams {
  std::size_t n = 0;      // N, vertices of the output graph
  std::size_t m = 0;      // M, super-vertices
  std::size_t ell = 1;    // number of blocks
  std::size_t d = 1;      // degree
  double gamma = 0.0;     // slack used for size windows; M ~ (1 + gamma) N
  std::vector<Vertex> f;  // core, injected into block 0

  std::size_t zeta() const { return m / ell; }
  double z() const { return static_cast<double>(n) / static_cast<double>(ell); }
  /// [(1 - gamma) z, (1 + gamma) z].
  double window_lo() const { return (1.0 - gamma) * z(); }
  double window_hi() const { return (1.0 + gamma) * z(); }

  /// Throws ParameterError on any violated invariant.
  void check() const;

  /// M is the smallest multiple of 2*ell that is >= (1 + gamma) N.
  static DistributionParams with_gamma(std::size_t n, std::size_t d, std::size_t ell,
                                       double gamma);
  /// d = 8, ell = 4, gamma = 1/4.
  static DistributionParams desk(std::size_t n = 256);
  /// d = 100, ell = round(N^{1/10}), gamma = N^{-1/10}.
  static DistributionParams asymptotic(std::size_t n);
  /// Looks up "desk" or "asymptotic"; throws ParameterError otherwise.
  static DistributionParams preset(const std::string& name, std::size_t n);
};

/// The generator state a sample consumed: stream key and counter range.
struct Coins {
  std::uint64_t key = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  friend bool operator==(const Coins&, const Coins&) = default;
};

struct SampleOutcome {
  ColoredGraph graph;
  std::vector<std::uint32_t> k_map;  // vertex -> block
  std::vector<Vertex> injection;     // vertex -> super-vertex; empty on abort
  bool aborted = false;
  Coins coins;
  friend bool operator==(const SampleOutcome&, const SampleOutcome&) = default;
};

/// Union of d independent uniform perfect matchings on `block_size` vertices,
/// one per color. Matchings come from a uniform shuffle paired consecutively.
ColoredGraph sample_block_graph(std::size_t block_size, std::size_t d, Rng& rng);

/// One draw from P_{M,l}(F). On block overflow returns the all-self-loop graph
/// with `aborted` set; the abort atom is part of the distribution.
SampleOutcome sample_pml(const DistributionParams& params, Rng& rng);

using ProfilePredicate =
    std::function<bool(const ColoredGraph&, const ComponentPartition&)>;

namespace predicates {
ProfilePredicate always();
ProfilePredicate exactly_components(std::size_t count);
ProfilePredicate sizes_within(double lo, double hi);
ProfilePredicate connected();
/// Exactly ell components with sizes in the params' window.
ProfilePredicate concentrated(const DistributionParams& params);
ProfilePredicate all_of(std::vector<ProfilePredicate> parts);
}  // namespace predicates

struct RejectionResult {
  std::optional<SampleOutcome> sample;  // nullopt when retries ran out
  std::size_t attempts = 0;
  bool exhausted() const { return !sample.has_value(); }
};

/// Rejection sampling from P_{M,l}(F) until the predicate holds.
RejectionResult condition_on_profile(const DistributionParams& params, Rng& rng,
                                     const ProfilePredicate& predicate,
                                     std::size_t max_retries);

/// True when some connected component lies inside `subset_mask`.
bool has_component_within(const ComponentPartition& part,
                          const std::vector<bool>& subset_mask);

/// B_S by rejection: P_{M,l} (F ignored) until a component lies inside S.
/// Aborted draws are rejected.
RejectionResult sample_bs(const DistributionParams& params,
                          const std::vector<Vertex>& s, Rng& rng,
                          std::size_t max_retries);

struct PlantedSample {
  SampleOutcome outcome;
  std::vector<Vertex> component;  // the planted component, inside S
  std::size_t attempts = 0;
};

/// Graphs supported on B~_S at scales where plain rejection is hopeless: draw
/// a non-aborted sample passing `predicate`, choose one of its components
/// uniformly, pad it randomly to a zeta-set S', and relabel by a uniformly
/// random permutation taking S onto S'. The result has a component inside S.
/// Each graph in the support of the conditioned B_S is reachable, but the
/// weighting by the number of components fitting S is not reproduced.
std::optional<PlantedSample> sample_bs_planted(const DistributionParams& params,
                                               const std::vector<Vertex>& s,
                                               Rng& rng,
                                               const ProfilePredicate& predicate,
                                               std::size_t max_retries);

struct TriangleReport {
  std::uint64_t count = 0;
  std::vector<std::uint64_t> per_component;  // indexed by component id
};

/// Triangles of the simple underlying graph: parallel colored edges count
/// once, self-loops are ignored.
TriangleReport triangle_count(const ColoredGraph& g);

}  // namespace explab
