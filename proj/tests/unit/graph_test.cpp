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
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "explab/errors.hpp"
#include "explab/graph.hpp"
#include "explab/graph_io.hpp"

namespace explab {
namespace {

using testing::random_permutation;
using testing::small_corpus;

// Reference BFS over an explicit edge list, independent of `components`.
std::vector<std::size_t> bfs_sizes(const ColoredGraph& g) {
  const auto n = g.num_vertices();
  std::vector<std::set<Vertex>> adj(n);
  for (Vertex j = 0; j < n; ++j) {
    for (Color c = 0; c < g.degree(); ++c) adj[j].insert(g.target(j, c));
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> sizes;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> queue{s};
    seen[s] = true;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (auto w : adj[queue[h]]) {
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    sizes.push_back(queue.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

TEST(Validate, SelfLoopGraphIsValid) {
  EXPECT_FALSE(validate(ColoredGraph::self_loops(8, 4)).has_value());
}

TEST(Validate, BrokenInvolutionReportsFirstSlot) {
  // adj(0,1) = 1 but adj(1,1) = 2.
  std::vector<Vertex> t = {0, 1, 1, 2, 2, 1};
  const ColoredGraph g(3, 2, t);
  const auto v = validate(g);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, GraphViolation::Kind::NotInvolution);
  EXPECT_EQ(v->vertex, 0u);
  EXPECT_EQ(v->color, 1u);
}

TEST(Validate, OutOfRangeTarget) {
  const ColoredGraph g(2, 1, {1, 5});
  const auto v = validate(g);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, GraphViolation::Kind::NotInvolution);
  EXPECT_EQ(v->vertex, 0u);
  const auto w = validate(ColoredGraph(2, 1, {5, 0}));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, GraphViolation::Kind::OutOfRange);
  EXPECT_EQ(w->vertex, 0u);
}

TEST(Validate, WholeCorpusIsValid) {
  for (const auto& g : small_corpus(1)) EXPECT_FALSE(validate(g).has_value());
}

TEST(Neighbor, SelfLoop) {
  QueryContext ctx;
  EXPECT_EQ(neighbor(ColoredGraph::self_loops(8, 3), 3, 2, ctx), 3u);
  EXPECT_EQ(ctx.total(), 1u);
}

TEST(Neighbor, TwoColoredCycle) {
  const auto g = fixtures::two_colored_cycle(6);
  QueryContext ctx;
  EXPECT_EQ(neighbor(g, 0, 0, ctx), 1u);
  EXPECT_EQ(neighbor(g, 1, 0, ctx), 0u);
  EXPECT_EQ(neighbor(g, 1, 1, ctx), 2u);
  EXPECT_EQ(neighbor(g, 0, 1, ctx), 5u);
  EXPECT_EQ(ctx.total(), 4u);
}

TEST(Neighbor, InvolutionOnCorpus) {
  QueryContext ctx;
  for (const auto& g : small_corpus(2)) {
    for (Vertex j = 0; j < g.num_vertices(); ++j) {
      for (Color c = 0; c < g.degree(); ++c) {
        EXPECT_EQ(neighbor(g, neighbor(g, j, c, ctx), c, ctx), j);
      }
    }
  }
}

TEST(Neighbor, OutOfRangeIsUsageError) {
  const auto g = fixtures::k4();
  QueryContext ctx;
  EXPECT_THROW(neighbor(g, 4, 0, ctx), UsageError);
  EXPECT_THROW(neighbor(g, 0, 3, ctx), UsageError);
  EXPECT_EQ(ctx.total(), 0u);
}

TEST(QueryContext, TotalIsSumOfOperations) {
  QueryContext a, b;
  a.charge("x", 3);
  a.charge("y");
  b.charge("x", 2);
  a.merge(b);
  EXPECT_EQ(a.total(), 6u);
  EXPECT_EQ(a.charged("x"), 5u);
  EXPECT_EQ(a.charged("missing"), 0u);
}

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 0, 1}), ParameterError);
  EXPECT_THROW(Permutation({0, 3}), ParameterError);
}

TEST(Permutation, InverseAndCompose) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_permutation(9, rng);
    EXPECT_EQ(p.compose(p.inverse()), Permutation::identity(9));
    for (Vertex j = 0; j < 9; ++j) EXPECT_EQ(p.inverse_at(p(j)), j);
  }
}

TEST(Relabel, IdentityIsNoop) {
  for (const auto& g : small_corpus(4)) {
    EXPECT_EQ(relabel(g, Permutation::identity(g.num_vertices())), g);
  }
}

TEST(Relabel, SelfLoopsInvariant) {
  Rng rng(5);
  const auto g = ColoredGraph::self_loops(7, 2);
  EXPECT_EQ(relabel(g, random_permutation(7, rng)), g);
}

TEST(Relabel, FourCycleTransposition) {
  // Cycle 0-1-2-3-0, color 0 = {01, 23}, color 1 = {12, 30}; swap 0 and 1.
  const auto g = fixtures::two_colored_cycle(4);
  const auto h = relabel(g, Permutation({1, 0, 2, 3}));
  // adj'(j,c) = pi^-1(adj(pi(j),c)), enumerated by hand.
  const std::vector<Vertex> expected = {1, 2, 0, 3, 3, 0, 2, 1};
  EXPECT_EQ(std::vector<Vertex>(h.table().begin(), h.table().end()), expected);
  EXPECT_EQ(components(h).sorted_sizes(), components(g).sorted_sizes());
}

TEST(Relabel, RoundTripAndComponentMultiset) {
  Rng rng(6);
  for (const auto& g : small_corpus(7)) {
    const auto pi = random_permutation(g.num_vertices(), rng);
    const auto h = relabel(g, pi);
    EXPECT_FALSE(validate(h).has_value());
    EXPECT_EQ(relabel(h, pi.inverse()), g);
    EXPECT_EQ(components(h).sorted_sizes(), components(g).sorted_sizes());
  }
}

TEST(Relabel, ComponentCarriedThroughInverse) {
  Rng rng(8);
  const auto g = fixtures::disjoint_union(fixtures::k4(), fixtures::k4());
  const auto pi = random_permutation(8, rng);
  const auto pg = components(g);
  const auto ph = components(relabel(g, pi));
  for (Vertex a = 0; a < 8; ++a) {
    for (Vertex b = 0; b < 8; ++b) {
      EXPECT_EQ(pg.labels[a] == pg.labels[b],
                ph.labels[pi.inverse_at(a)] == ph.labels[pi.inverse_at(b)]);
    }
  }
}

TEST(Components, SelfLoopsAreSingletons) {
  const auto p = components(ColoredGraph::self_loops(8, 2));
  EXPECT_EQ(p.count(), 8u);
  EXPECT_EQ(p.sorted_sizes(), std::vector<std::size_t>(8, 1));
}

TEST(Components, TwoFourCycles) {
  const auto g = fixtures::disjoint_union(fixtures::two_colored_cycle(4),
                                          fixtures::two_colored_cycle(4));
  const auto p = components(g);
  EXPECT_EQ(p.sorted_sizes(), (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(p.members(1), (std::vector<Vertex>{4, 5, 6, 7}));
}

TEST(Components, MatchesReferenceBfs) {
  for (const auto& g : small_corpus(9)) {
    const auto p = components(g);
    EXPECT_EQ(p.sorted_sizes(), bfs_sizes(g));
    std::size_t total = 0;
    for (auto s : p.sizes) total += s;
    EXPECT_EQ(total, g.num_vertices());
  }
}

TEST(Components, InducedComponentIsValid) {
  const auto g = fixtures::disjoint_union(fixtures::two_colored_cycle(6),
                                          fixtures::two_colored_cycle(4));
  const auto p = components(g);
  const auto h = induced_component(g, p, p.labels[7]);
  EXPECT_EQ(h, fixtures::two_colored_cycle(4));
}

TEST(GraphIo, BinaryRoundTrip) {
  for (const auto& g : small_corpus(10)) {
    std::stringstream ss;
    write_graph(ss, g);
    EXPECT_EQ(read_graph(ss), g);
  }
}

TEST(GraphIo, CsvRoundTripAndFileDetection) {
  const auto dir = std::filesystem::temp_directory_path() / "explab_graph_io_test";
  std::filesystem::create_directories(dir);
  const auto g = fixtures::k4();
  for (const char* name : {"k4.bin", "k4.csv"}) {
    const auto path = (dir / name).string();
    save_graph(path, g);
    EXPECT_EQ(load_graph(path), g);
  }
  std::stringstream ss;
  write_graph_csv(ss, g);
  EXPECT_EQ(read_graph_csv(ss), g);
}

TEST(GraphIo, CsvRejectsMissingSlot) {
  std::stringstream ss("# two vertices\n0,0,1\n1,0,0\n0,1,0\n");
  EXPECT_ANY_THROW(read_graph_csv(ss));
}

TEST(GraphIo, BinaryRejectsBadMagic) {
  std::stringstream ss("NOPE....");
  EXPECT_ANY_THROW(read_graph(ss));
}

}  // namespace
}  // namespace explab
