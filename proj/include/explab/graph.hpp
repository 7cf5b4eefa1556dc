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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace explab {

using Vertex = std::uint32_t;
using Color = std::uint32_t;

/// A d-regular d-colored graph stored as its adjacency oracle: a flat
/// row-major table of N*d entries, entry (j, c) being the neighbor of j along
/// color c. Colors are 0-based. Self-loops (entry == j) are allowed and count
/// as one color slot.
///
/// Immutable after construction. The constructor checks only the table size;
/// range and involution are checked by `validate`.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(std::size_t n_vertices, std::size_t degree,
               std::vector<Vertex> table);

  /// Every (j, c) maps back to j.
  static ColoredGraph self_loops(std::size_t n_vertices, std::size_t degree);

  std::size_t num_vertices() const { return n_; }
  std::size_t degree() const { return d_; }

  /// Unchecked, uncharged table lookup for analysis code.
  Vertex target(Vertex j, Color c) const { return table_[j * d_ + c]; }
  std::span<const Vertex> row(Vertex j) const {
    return {table_.data() + j * d_, d_};
  }
  std::span<const Vertex> table() const { return table_; }

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<Vertex> table_;
};

/// Per-experiment oracle query ledger. Confined to one thread.
class QueryContext {
 public:
  void charge(std::string_view operation, std::uint64_t count = 1);
  std::uint64_t total() const { return total_; }
  std::uint64_t charged(std::string_view operation) const;
  const std::map<std::string, std::uint64_t, std::less<>>& by_operation() const {
    return by_op_;
  }
  void merge(const QueryContext& other);

 private:
  std::uint64_t total_ = 0;
  std::map<std::string, std::uint64_t, std::less<>> by_op_;
};

/// Classical oracle query: returns the neighbor of j along color c and charges
/// one query under `operation`. Throws UsageError on out-of-range arguments.
Vertex neighbor(const ColoredGraph& g, Vertex j, Color c, QueryContext& ctx,
                std::string_view operation = "neighbor");

struct GraphViolation {
  enum class Kind { OutOfRange, NotInvolution };
  Kind kind;
  Vertex vertex;
  Color color;
  std::string describe() const;
};

/// First violating (j, c) in row-major order, or nullopt if the table is a
/// valid oracle (total, in range, an involution per color).
std::optional<GraphViolation> validate(const ColoredGraph& g);

class Permutation {
 public:
  Permutation() = default;
  /// Throws ParameterError unless `map` is a bijection of [0, n).
  explicit Permutation(std::vector<Vertex> map);
  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  Vertex operator()(Vertex j) const { return map_[j]; }
  Vertex inverse_at(Vertex j) const { return inverse_[j]; }
  std::span<const Vertex> forward() const { return map_; }
  std::span<const Vertex> backward() const { return inverse_; }
  Permutation inverse() const;
  /// (this o inner)(j) = this(inner(j)).
  Permutation compose(const Permutation& inner) const;

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.map_ == b.map_;
  }
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::vector<Vertex> map_;
  std::vector<Vertex> inverse_;
};

/// adj'(j, c) = pi^{-1}(adj(pi(j), c)); the component of g on C becomes the
/// component pi^{-1}(C) of the result.
ColoredGraph relabel(const ColoredGraph& g, const Permutation& pi);

/// Connected components, colors and self-loops ignored. Component ids are
/// assigned in order of each component's smallest vertex.
struct ComponentPartition {
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> sizes;

  std::size_t count() const { return sizes.size(); }
  std::vector<Vertex> members(std::uint32_t component) const;
  std::vector<std::size_t> sorted_sizes() const;
};

ComponentPartition components(const ColoredGraph& g);

/// The graph restricted to one component, relabeled to 0..|C|-1 in increasing
/// vertex order. Still d-regular since no edge leaves a component.
ColoredGraph induced_component(const ColoredGraph& g,
                               const ComponentPartition& part,
                               std::uint32_t component);

/// Small fixtures shared by tests, the CLI and experiments.
namespace fixtures {
/// Two colors on an even cycle: color 0 pairs (2i, 2i+1), color 1 pairs
/// (2i+1, 2i+2 mod N).
ColoredGraph two_colored_cycle(std::size_t n);
/// K4 with its proper 3-edge-coloring.
ColoredGraph k4();
/// Disjoint union; vertices of `b` are shifted by a.num_vertices().
ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);
}  // namespace fixtures

}  // namespace explab
