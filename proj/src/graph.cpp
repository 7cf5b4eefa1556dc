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

#include "explab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "explab/errors.hpp"

namespace explab {

ColoredGraph::ColoredGraph(std::size_t n_vertices, std::size_t degree,
                           std::vector<Vertex> table)
    : n_(n_vertices), d_(degree), table_(std::move(table)) {
  if (n_ == 0 || d_ == 0) {
    throw ParameterError("ColoredGraph: N and d must be positive");
  }
  if (table_.size() != n_ * d_) {
    throw ParameterError("ColoredGraph: table must hold N*d entries");
  }
}

ColoredGraph ColoredGraph::self_loops(std::size_t n_vertices,
                                      std::size_t degree) {
  std::vector<Vertex> table(n_vertices * degree);
  for (std::size_t j = 0; j < n_vertices; ++j) {
    std::fill_n(table.begin() + static_cast<std::ptrdiff_t>(j * degree), degree,
                static_cast<Vertex>(j));
  }
  return ColoredGraph(n_vertices, degree, std::move(table));
}

void QueryContext::charge(std::string_view operation, std::uint64_t count) {
  total_ += count;
  auto it = by_op_.find(operation);
  if (it == by_op_.end()) {
    by_op_.emplace(std::string(operation), count);
  } else {
    it->second += count;
  }
}

std::uint64_t QueryContext::charged(std::string_view operation) const {
  auto it = by_op_.find(operation);
  return it == by_op_.end() ? 0 : it->second;
}

void QueryContext::merge(const QueryContext& other) {
  for (const auto& [op, n] : other.by_op_) charge(op, n);
}

Vertex neighbor(const ColoredGraph& g, Vertex j, Color c, QueryContext& ctx,
                std::string_view operation) {
  if (j >= g.num_vertices() || c >= g.degree()) {
    std::ostringstream msg;
    msg << "neighbor: query (" << j << ", " << c << ") outside [" << g.num_vertices()
        << "] x [" << g.degree() << "]";
    throw UsageError(msg.str());
  }
  ctx.charge(operation);
  return g.target(j, c);
}

std::string GraphViolation::describe() const {
  std::ostringstream out;
  out << (kind == Kind::OutOfRange ? "out-of-range neighbor" : "not an involution")
      << " at (vertex " << vertex << ", color " << color << ")";
  return out.str();
}

std::optional<GraphViolation> validate(const ColoredGraph& g) {
  const std::size_t n = g.num_vertices();
  for (Vertex j = 0; j < n; ++j) {
    for (Color c = 0; c < g.degree(); ++c) {
      const Vertex v = g.target(j, c);
      if (v >= n) return GraphViolation{GraphViolation::Kind::OutOfRange, j, c};
      if (g.target(v, c) != j) {
        return GraphViolation{GraphViolation::Kind::NotInvolution, j, c};
      }
    }
  }
  return std::nullopt;
}

Permutation::Permutation(std::vector<Vertex> map) : map_(std::move(map)) {
  inverse_.assign(map_.size(), 0);
  std::vector<bool> seen(map_.size(), false);
  for (std::size_t j = 0; j < map_.size(); ++j) {
    const Vertex v = map_[j];
    if (v >= map_.size() || seen[v]) {
      throw ParameterError("Permutation: map is not a bijection");
    }
    seen[v] = true;
    inverse_[v] = static_cast<Vertex>(j);
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> map(n);
  std::iota(map.begin(), map.end(), Vertex{0});
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const { return Permutation(inverse_); }

Permutation Permutation::compose(const Permutation& inner) const {
  if (inner.size() != size()) {
    throw ParameterError("Permutation::compose: size mismatch");
  }
  std::vector<Vertex> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = map_[inner.map_[j]];
  return Permutation(std::move(out));
}

ColoredGraph relabel(const ColoredGraph& g, const Permutation& pi) {
  if (pi.size() != g.num_vertices()) {
    throw ParameterError("relabel: permutation size differs from N");
  }
  const std::size_t d = g.degree();
  std::vector<Vertex> table(g.num_vertices() * d);
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    for (Color c = 0; c < d; ++c) {
      table[j * d + c] = pi.inverse_at(g.target(pi(j), c));
    }
  }
  return ColoredGraph(g.num_vertices(), d, std::move(table));
}

std::vector<Vertex> ComponentPartition::members(std::uint32_t component) const {
  std::vector<Vertex> out;
  out.reserve(sizes.at(component));
  for (Vertex j = 0; j < labels.size(); ++j) {
    if (labels[j] == component) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> ComponentPartition::sorted_sizes() const {
  auto out = sizes;
  std::sort(out.begin(), out.end());
  return out;
}

ComponentPartition components(const ColoredGraph& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  ComponentPartition part;
  part.labels.assign(g.num_vertices(), kUnset);
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < g.num_vertices(); ++root) {
    if (part.labels[root] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(part.sizes.size());
    std::size_t size = 0;
    part.labels[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++size;
      for (Vertex w : g.row(v)) {
        if (part.labels[w] == kUnset) {
          part.labels[w] = id;
          stack.push_back(w);
        }
      }
    }
    part.sizes.push_back(size);
  }
  return part;
}

ColoredGraph induced_component(const ColoredGraph& g,
                               const ComponentPartition& part,
                               std::uint32_t component) {
  const auto verts = part.members(component);
  std::vector<Vertex> local(g.num_vertices(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    local[verts[i]] = static_cast<Vertex>(i);
  }
  const std::size_t d = g.degree();
  std::vector<Vertex> table(verts.size() * d);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (Color c = 0; c < d; ++c) table[i * d + c] = local[g.target(verts[i], c)];
  }
  return ColoredGraph(verts.size(), d, std::move(table));
}

namespace fixtures {

ColoredGraph two_colored_cycle(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw ParameterError("two_colored_cycle: N must be even and >= 2");
  }
  std::vector<Vertex> table(n * 2);
  for (std::size_t j = 0; j < n; ++j) {
    const bool even = j % 2 == 0;
    table[j * 2 + 0] = static_cast<Vertex>(even ? j + 1 : j - 1);
    table[j * 2 + 1] = static_cast<Vertex>(even ? (j + n - 1) % n : (j + 1) % n);
  }
  return ColoredGraph(n, 2, std::move(table));
}

ColoredGraph k4() {
  // Colors: {01,23}, {02,13}, {03,12}.
  return ColoredGraph(4, 3, {1, 2, 3,  //
                             0, 3, 2,  //
                             3, 0, 1,  //
                             2, 1, 0});
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.degree() != b.degree()) {
    throw ParameterError("disjoint_union: degrees differ");
  }
  std::vector<Vertex> table(a.table().begin(), a.table().end());
  const auto shift = static_cast<Vertex>(a.num_vertices());
  for (Vertex v : b.table()) table.push_back(v + shift);
  return ColoredGraph(a.num_vertices() + b.num_vertices(), a.degree(),
                      std::move(table));
}

}  // namespace fixtures

}  // namespace explab
