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
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "explab/adversary.hpp"
#include "explab/errors.hpp"
#include "explab/rng.hpp"

namespace explab {
namespace {

std::vector<Subset> supersets(const Subset& core, std::size_t n, std::size_t zeta) {
  std::vector<Subset> out;
  for (auto& s : all_subsets(n, zeta)) {
    if (std::includes(s.begin(), s.end(), core.begin(), core.end())) out.push_back(s);
  }
  return out;
}

std::vector<Subset> random_family(std::size_t n, std::size_t zeta, Rng& rng) {
  std::vector<Subset> out;
  for (auto& s : all_subsets(n, zeta)) {
    if (rng.coin()) out.push_back(s);
  }
  if (out.empty()) out.push_back(all_subsets(n, zeta).front());
  return out;
}

TEST(ChiPsi, EqualSetsGiveEqualPermutations) {
  const Subset s = {1, 3, 4};
  const auto chi = canonical_chi(s, s, 7);
  EXPECT_EQ(canonical_psi(s, s, chi), chi);
  EXPECT_TRUE(chi_psi_conditions_hold(s, s, chi, chi, 3));
}

TEST(ChiPsi, ExhaustiveSmallN) {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const auto sets = all_subsets(n, k);
      for (const auto& cx : sets) {
        for (const auto& cy : sets) {
          const auto chi = canonical_chi(cx, cy, n);
          ASSERT_TRUE(chi_psi_conditions_hold(cx, cy, chi, canonical_psi(cx, cy, chi), k));
        }
      }
    }
  }
}

TEST(ChiPsi, DetectsBrokenPsi) {
  const Subset cx = {0, 1};
  const Subset cy = {0, 2};
  const auto chi = canonical_chi(cx, cy, 5);
  EXPECT_FALSE(chi_psi_conditions_hold(cx, cy, chi, chi, 2));
}

TEST(Relation, DegreesMatchFamilySizes) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 4 + rng.below(3);
    const std::size_t zeta = 2;
    const auto sf = random_family(n, zeta, rng);
    const auto ideal = random_family(n, zeta, rng);
    const auto st = relation_stats(build_perm_relation(sf, ideal, zeta, n));
    EXPECT_EQ(st.m_lo, ideal.size());
    EXPECT_EQ(st.m_hi, ideal.size());
    EXPECT_EQ(st.mp_lo, sf.size());
    EXPECT_EQ(st.mp_hi, sf.size());
  }
}

TEST(Relation, SingletonPairHasUnitLMax) {
  PermRelation r;
  r.n = 2;
  r.k = 1;
  r.x = {Permutation::identity(2)};
  r.y = {Permutation({1, 0})};
  r.pairs = {{0, 0}};
  r.x_family_size = r.y_family_size = 1;
  const auto st = relation_stats(r);
  EXPECT_EQ(st.l_max, 1u);
  EXPECT_EQ(st.m_lo, 1u);
  EXPECT_EQ(st.mp_hi, 1u);
  EXPECT_FALSE(st.degenerate);
}

// Petal sunflower {0,1},{0,2} against all 2-sets through 0 at N=6.
// Pair x = id on {0,1} and y = swap(1,3) on {0,3} differ at inverse index 1;
// four x share that value and two y do, so l_max is 8 with both tables and
// 4 with the forward table alone.
TEST(Relation, TinyInstanceLMax) {
  const std::vector<Subset> sf = {{0, 1}, {0, 2}};
  const auto ideal = supersets({0}, 6, 2);
  const auto rel = build_perm_relation(sf, ideal, 2, 6);
  EXPECT_EQ(relation_stats(rel).l_max, 8u);
  EXPECT_EQ(relation_stats(rel, OraclePositions::ForwardOnly).l_max, 4u);
}

TEST(Relation, RelabelInvariance) {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 5 + rng.below(2);
    const auto sf = random_family(n, 2, rng);
    const auto ideal = random_family(n, 2, rng);
    const auto rel = build_perm_relation(sf, ideal, 2, n);
    std::vector<Vertex> map(n);
    std::iota(map.begin(), map.end(), Vertex{0});
    std::shuffle(map.begin(), map.end(), rng);
    EXPECT_EQ(relation_stats(relabel_relation(rel, Permutation(map))), relation_stats(rel));
  }
}

TEST(Relation, UnionOverKPreservesExtrema) {
  const std::vector<Subset> sf = {{0, 1}, {0, 2}};
  const auto ideal = supersets({0}, 5, 2);
  std::vector<PermRelation> parts;
  std::vector<RelationStats> stats;
  for (std::size_t k : {1, 2}) {
    parts.push_back(build_perm_relation(sf, ideal, k, 5));
    stats.push_back(relation_stats(parts.back()));
  }
  const auto u = relation_stats(relation_union(parts));
  const auto c = combine_stats(stats);
  EXPECT_EQ(u.m_lo, c.m_lo);
  EXPECT_EQ(u.m_hi, c.m_hi);
  EXPECT_EQ(u.mp_lo, c.mp_lo);
  EXPECT_EQ(u.mp_hi, c.mp_hi);
  EXPECT_EQ(u.l_max, c.l_max);
}

TEST(Relation, RefusesLargeN) {
  EXPECT_THROW(build_perm_relation({{0, 1}}, {{0, 2}}, 2, 9), ScaleError);
}

TEST(LowerBound, Identities) {
  const RelationStats s{5, 5, 3, 3, 4, 10, false};
  EXPECT_NEAR(query_lower_bound(s, 0.5).value, 0.0, 1e-12);
  EXPECT_NEAR(query_lower_bound(s, 0.0).value, std::sqrt(15.0 / 4.0), 1e-12);
  EXPECT_NEAR(distinguishing_lower_bound(s, 0.25).value, 0.0, 1e-12);
  EXPECT_NEAR(distinguishing_lower_bound(s, 0.1).value, query_lower_bound(s, 0.2).value, 1e-15);
  EXPECT_THROW(query_lower_bound(s, 0.6), ParameterError);
}

TEST(LowerBound, VacuousWhenDegreesUneven) {
  const RelationStats s{1, 10, 1, 10, 1, 10, false};
  const auto b = query_lower_bound(s, 0.2);
  EXPECT_TRUE(b.vacuous);
  EXPECT_EQ(b.value, 0.0);
}

TEST(LowerBound, MonotoneInStats) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    RelationStats s;
    s.m_lo = 1 + rng.below(20);
    s.m_hi = s.m_lo + rng.below(5);
    s.mp_lo = 1 + rng.below(20);
    s.mp_hi = s.mp_lo + rng.below(5);
    s.l_max = 1 + rng.below(30);
    const double eps = 0.5 * rng.uniform();
    const double base = query_lower_bound(s, eps).value;
    auto up = s;
    ++up.m_lo;
    up.m_hi = std::max(up.m_hi, up.m_lo);
    EXPECT_GE(query_lower_bound(up, eps).value + 1e-12, base);
    auto wider = s;
    ++wider.l_max;
    EXPECT_LE(query_lower_bound(wider, eps).value, base + 1e-12);
    EXPECT_LE(query_lower_bound(s, std::min(0.5, eps + 0.05)).value, base + 1e-12);
  }
}

TEST(ClosedForm, GraphIsHalfPermutation) {
  for (double delta : {0.0, 0.05, 0.1, 0.2}) {
    EXPECT_DOUBLE_EQ(graph_closed_form(delta, 64, 4, 0.5),
                     0.5 * permutation_closed_form(delta, 64, 4, 0.5));
  }
  EXPECT_NEAR(permutation_closed_form(0.0, 64, 4, 0.5), 2.0, 1e-12);
}

TEST(AnalyticLMax, Values) {
  const auto a = analytic_l_max(2, 5, 1, 6, 2, 0.5);
  EXPECT_NEAR(a.paper, std::sqrt(1.0 / 3.0) * 10.0, 1e-12);
  EXPECT_NEAR(a.refined, a.paper, 1e-12);
  EXPECT_TRUE(a.preconditions_hold);
}

}  // namespace
}  // namespace explab
