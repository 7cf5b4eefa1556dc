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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "explab/errors.hpp"
#include "explab/spectral.hpp"

namespace explab {
namespace {

using testing::small_corpus;

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform() - 0.5;
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Independent subset enumeration for both expansion notions.
std::pair<double, double> brute_expansion(const ColoredGraph& g) {
  const auto n = g.num_vertices();
  double vert = std::numeric_limits<double>::infinity();
  double edge = vert;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (2 * size > n) continue;
    std::uint32_t outside = 0;
    std::size_t cut = 0;
    for (Vertex j = 0; j < n; ++j) {
      if (!((mask >> j) & 1U)) continue;
      for (Color c = 0; c < g.degree(); ++c) {
        const auto t = g.target(j, c);
        if (!((mask >> t) & 1U)) {
          outside |= 1U << t;
          ++cut;
        }
      }
    }
    vert = std::min(vert, __builtin_popcount(outside) / static_cast<double>(size));
    edge = std::min(edge, static_cast<double>(cut) / static_cast<double>(size));
  }
  return {vert, edge};
}

TEST(Adjacency, SelfLoopsAreIdentity) {
  Rng rng(1);
  const auto v = random_vector(9, rng);
  const auto w = normalized_adjacency_apply(ColoredGraph::self_loops(9, 3), v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_DOUBLE_EQ(w[i], v[i]);
}

TEST(Adjacency, UniformIsFixed) {
  for (const auto& g : small_corpus(2)) {
    const std::vector<double> u(g.num_vertices(), 1.0);
    for (double x : normalized_adjacency_apply(g, u)) EXPECT_NEAR(x, 1.0, 1e-15);
  }
}

TEST(Adjacency, CycleFourierVector) {
  constexpr std::size_t n = 12;
  const auto g = fixtures::two_colored_cycle(n);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = std::cos(2.0 * std::numbers::pi * j / n);
  const auto w = normalized_adjacency_apply(g, v);
  const double c = std::cos(2.0 * std::numbers::pi / n);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(w[j], c * v[j], 1e-12);
}

TEST(Adjacency, SizeMismatch) {
  const std::vector<double> v(3, 1.0);
  EXPECT_THROW(normalized_adjacency_apply(fixtures::k4(), v), ParameterError);
}

TEST(Adjacency, Symmetric) {
  Rng rng(3);
  for (const auto& g : small_corpus(4)) {
    const auto u = random_vector(g.num_vertices(), rng);
    const auto v = random_vector(g.num_vertices(), rng);
    EXPECT_NEAR(dot(u, normalized_adjacency_apply(g, v)),
                dot(normalized_adjacency_apply(g, u), v), 1e-12);
  }
}

TEST(Adjacency, DenseMatchesApply) {
  const auto g = fixtures::k4();
  const auto a = normalized_adjacency_dense(g);
  EXPECT_DOUBLE_EQ(a(0, 1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(a(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(normalized_adjacency_dense(ColoredGraph::self_loops(3, 4))(1, 1), 1.0);
}

TEST(SecondEigenvalue, Fixtures) {
  EXPECT_NEAR(second_eigenvalue(ColoredGraph::self_loops(6, 2)).lambda2, 1.0, 1e-12);
  const auto two = fixtures::disjoint_union(fixtures::two_colored_cycle(4),
                                            fixtures::two_colored_cycle(4));
  EXPECT_NEAR(second_eigenvalue(two).lambda2, 1.0, 1e-12);
  EXPECT_NEAR(second_eigenvalue(fixtures::two_colored_cycle(16)).lambda2,
              std::cos(2.0 * std::numbers::pi / 16.0), 1e-9);
  EXPECT_NEAR(second_eigenvalue(fixtures::k4()).lambda2, -1.0 / 3.0, 1e-12);
}

TEST(SecondEigenvalue, IterativeMatchesDense) {
  SpectralOptions it;
  it.method = EigenMethod::Iterative;
  for (const auto& g : small_corpus(5, 2)) {
    const auto dense = second_eigenvalue(g);
    const auto power = second_eigenvalue(g, it);
    EXPECT_EQ(dense.method, "dense");
    EXPECT_EQ(power.method, "power");
    ASSERT_TRUE(power.converged);
    EXPECT_NEAR(dense.lambda2, power.lambda2, 1e-8);
  }
}

TEST(SecondEigenvalue, NonConvergenceIsFlagged) {
  SpectralOptions it;
  it.method = EigenMethod::Iterative;
  it.max_iter = 2;
  const auto est = second_eigenvalue(fixtures::two_colored_cycle(64), it);
  EXPECT_FALSE(est.converged);
  EXPECT_EQ(est.iterations, 2u);
}

TEST(SecondEigenvalue, OneIffDisconnected) {
  for (const auto& g : small_corpus(6)) {
    const bool disconnected = components(g).count() >= 2;
    const double l2 = lambda2_dense(g);
    EXPECT_EQ(std::abs(l2 - 1.0) < 1e-9, disconnected);
    EXPECT_LE(l2, 1.0 + 1e-12);
    EXPECT_GE(l2, -1.0 - 1e-12);
  }
}

TEST(SpectralReport, ComponentGaps) {
  const auto h = fixtures::disjoint_union(fixtures::k4(), fixtures::k4());
  const auto r = spectral_report(h);
  EXPECT_FALSE(r.connected());
  EXPECT_EQ(r.component_sizes, (std::vector<std::size_t>{4, 4}));
  for (double gap : r.component_gaps) EXPECT_NEAR(gap, 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.spectral_gap(), 4.0 / 3.0, 1e-12);
  EXPECT_FALSE(r.is_alpha_expander(0.1));
}

TEST(SpectralReport, SingletonGapIsNaN) {
  const auto r = spectral_report(ColoredGraph::self_loops(3, 2));
  ASSERT_EQ(r.component_gaps.size(), 3u);
  EXPECT_TRUE(std::isnan(r.component_gaps[0]));
}

TEST(SpectralReport, ConnectedExpander) {
  const auto r = spectral_report(fixtures::k4());
  EXPECT_TRUE(r.connected());
  EXPECT_TRUE(r.is_alpha_expander(1.0));
  EXPECT_NEAR(r.spectral_gap(), 4.0 / 3.0, 1e-12);
}

TEST(LazyWalk, ZeroStepsAndUniform) {
  const auto g = fixtures::two_colored_cycle(10);
  std::vector<double> start(10, 0.0);
  start[3] = 1.0;
  EXPECT_EQ(lazy_walk(g, start, 0).probs, start);
  const std::vector<double> u(10, 0.1);
  for (double p : lazy_walk(g, u, 17).probs) EXPECT_NEAR(p, 0.1, 1e-15);
}

TEST(LazyWalk, MixingBoundOnConnectedCorpus) {
  for (const auto& g : small_corpus(7)) {
    if (components(g).count() != 1) continue;
    const double alpha = 1.0 - lambda2_dense(g);
    for (std::size_t steps : {1, 10, 100}) {
      for (Vertex s = 0; s < g.num_vertices(); s += 3) {
        std::vector<double> start(g.num_vertices(), 0.0);
        start[s] = 1.0;
        EXPECT_LE(lazy_walk(g, start, steps).max_deviation_from_uniform(),
                  mixing_bound(alpha, steps) + 1e-12);
      }
    }
  }
}

TEST(LazyWalk, LogarithmicScheduleReachesInversePolynomial) {
  Rng rng(8);
  const auto p = DistributionParams::with_gamma(256, 8, 1, 0.25);
  const auto s = condition_on_profile(p, rng, predicates::connected(), 100);
  ASSERT_FALSE(s.exhausted());
  const double alpha = 1.0 - lambda2_dense(s.sample->graph);
  const auto steps = static_cast<std::size_t>(std::ceil(2.0 * 2.0 * std::log(256.0) / alpha));
  std::vector<double> start(256, 0.0);
  start[0] = 1.0;
  EXPECT_LE(lazy_walk(s.sample->graph, start, steps).max_deviation_from_uniform(),
            1.0 / (256.0 * 256.0));
}

TEST(Expansion, SelfLoopsHaveNone) {
  const auto e = edge_expansion_exact(ColoredGraph::self_loops(6, 3));
  EXPECT_EQ(e.vertex_expansion, 0.0);
  EXPECT_EQ(e.edge_expansion, 0.0);
}

TEST(Expansion, K4ByEnumeration) {
  const auto e = edge_expansion_exact(fixtures::k4());
  // |U| = 2 minimizes both: two outside neighbors, four cut edges.
  EXPECT_DOUBLE_EQ(e.vertex_expansion, 1.0);
  EXPECT_DOUBLE_EQ(e.edge_expansion, 2.0);
  EXPECT_DOUBLE_EQ(e.conductance, 2.0 / 3.0);
}

TEST(Expansion, MatchesBruteForceAndCheeger) {
  for (const auto& g : small_corpus(9)) {
    if (g.num_vertices() > 16) continue;
    const auto e = edge_expansion_exact(g);
    const auto [vert, edge] = brute_expansion(g);
    EXPECT_DOUBLE_EQ(e.vertex_expansion, vert);
    EXPECT_DOUBLE_EQ(e.edge_expansion, edge);
    EXPECT_TRUE(cheeger_consistent(lambda2_dense(g), e, g.degree(), 1e-12));
  }
}

TEST(Expansion, RefusesLargeGraphs) {
  EXPECT_THROW(edge_expansion_exact(fixtures::two_colored_cycle(26)), ScaleError);
}

TEST(Predicates, Expanding) {
  const auto pred = predicates::expanding(0.5);
  const auto k = fixtures::k4();
  EXPECT_TRUE(pred(k, components(k)));
  const auto c = fixtures::two_colored_cycle(32);
  EXPECT_FALSE(pred(c, components(c)));
}

}  // namespace
}  // namespace explab
