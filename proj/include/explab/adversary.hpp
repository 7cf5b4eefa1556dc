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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "explab/graph.hpp"
#include "explab/sunflower.hpp"

namespace explab {

inline constexpr std::size_t kMaxRelationVertices = 8;

/// Explicit relation between X (permutations sending a k-subset of a
/// sunflower set onto [k]) and Y (the same for the ideal family). Pairs are
/// (index into x, index into y). Every pair comes from a set pair (C_x, C_y)
/// and a tau fixing [k] as (tau chi, tau psi).
struct PermRelation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Permutation> x;
  std::vector<Permutation> y;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::size_t x_family_size = 0;  // distinct k-sets on the X side
  std::size_t y_family_size = 0;
};

/// The canonical chi: C_x & C_y to the first targets of [k], C_x \ C_y (sorted)
/// to the rest of [k], everything else (sorted) to [N] \ [k].
Permutation canonical_chi(const Subset& cx, const Subset& cy, std::size_t n);
/// psi agrees with chi off the symmetric difference and swaps the images of
/// the i-th smallest elements of C_x \ C_y and C_y \ C_x.
Permutation canonical_psi(const Subset& cx, const Subset& cy, const Permutation& chi);

/// Checks chi(C_x) = psi(C_y) = [k], agreement on (C_x & C_y) and outside
/// C_x | C_y, and the swap property on the symmetric difference.
bool chi_psi_conditions_hold(const Subset& cx, const Subset& cy, const Permutation& chi,
                             const Permutation& psi, std::size_t k);

/// Builds the relation for the k-subsets of the given families. With k equal
/// to the set size this is the plain relation on the families themselves.
/// Throws ScaleError for N > kMaxRelationVertices.
PermRelation build_perm_relation(const std::vector<Subset>& sunflower_sets,
                                 const std::vector<Subset>& ideal_sets, std::size_t k,
                                 std::size_t n);

/// Oracle string of a permutation: forward table then inverse table.
std::vector<Vertex> oracle_string(const Permutation& p);

struct RelationStats {
  std::uint64_t m_lo = 0, m_hi = 0;    // degrees on the X side
  std::uint64_t mp_lo = 0, mp_hi = 0;  // degrees on the Y side
  std::uint64_t l_max = 0;
  std::size_t pairs = 0;
  bool degenerate = false;             // empty relation or no differing pair
  friend bool operator==(const RelationStats&, const RelationStats&) = default;
};

/// Brute-force degrees and max over related pairs differing at oracle index i
/// of l_{x,i} l_{y,i}. Degrees are taken over elements appearing in the
/// relation. ForwardOnly restricts the positions to the forward table.
enum class OraclePositions { Both, ForwardOnly };
RelationStats relation_stats(const PermRelation& r,
                             OraclePositions positions = OraclePositions::Both);

/// Disjoint union of relations (e.g. over several k); elements stay tagged by
/// their source so no cross-relation pairs arise.
PermRelation relation_union(const std::vector<PermRelation>& parts);
/// Statistics of a disjoint union: min of minima, max of maxima.
RelationStats combine_stats(const std::vector<RelationStats>& parts);

/// Left-compose every permutation on both sides by rho.
PermRelation relabel_relation(const PermRelation& r, const Permutation& rho);

struct LowerBound {
  double value = 0.0;
  bool vacuous = false;  // some degree term was clamped at zero
};

/// (1 - 2 sqrt(eps (1 - eps))) sqrt((m_lo - 2 eps m_hi)(mp_lo - 2 eps mp_hi) / l_max)
/// with each factor clamped at 0. Requires eps in [0, 1/2] and l_max > 0.
LowerBound query_lower_bound(const RelationStats& s, double eps);
/// query_lower_bound(s, 2 delta) for delta in [0, 1/4].
LowerBound distinguishing_lower_bound(const RelationStats& s, double delta);

/// (1 - 2 sqrt(2 delta (1 - 2 delta))) (1 - 4 delta) sqrt((N/zeta)^(1 - mu)).
double permutation_closed_form(double delta, std::size_t n, std::size_t zeta,
                               double mu);
/// Half of the permutation bound: each graph query costs two permutation
/// queries.
double graph_closed_form(double delta, std::size_t n, std::size_t zeta, double mu);

struct AnalyticLMax {
  double paper = 0.0;            // (zeta/N)^(1-mu) |sunflower| |ideal|
  double refined = 0.0;          // max((zeta/N)^(1-mu), (zeta-|F|)/(N-|F|)) |sf| |ideal|
  bool preconditions_hold = false;  // (zeta-|F|)/(N-|F|) <= (zeta/N)^(1-mu)
};

AnalyticLMax analytic_l_max(std::size_t sunflower_size, std::size_t ideal_size,
                            std::size_t core_size, std::size_t n, std::size_t zeta,
                            double mu);

}  // namespace explab
