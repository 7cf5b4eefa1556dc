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

#include "explab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "explab/errors.hpp"

namespace explab {

void DistributionParams::check() const {
  if (n == 0 || m == 0 || ell == 0 || d == 0) {
    throw ParameterError("DistributionParams: N, M, ell and d must be positive");
  }
  if (m < n) throw ParameterError("DistributionParams: M must be >= N");
  if (m % ell != 0) throw ParameterError("DistributionParams: ell must divide M");
  if (zeta() % 2 != 0) throw ParameterError("DistributionParams: M/ell must be even");
  if (f.size() > zeta()) throw ParameterError("DistributionParams: |F| exceeds M/ell");
  std::vector<bool> seen(n, false);
  for (Vertex v : f) {
    if (v >= n || seen[v]) {
      throw ParameterError("DistributionParams: F must be distinct vertices of [N]");
    }
    seen[v] = true;
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw ParameterError("DistributionParams: gamma must lie in [0, 1)");
  }
}

DistributionParams DistributionParams::with_gamma(std::size_t n, std::size_t d,
                                                  std::size_t ell, double gamma) {
  if (ell == 0) throw ParameterError("with_gamma: ell must be positive");
  DistributionParams p;
  p.n = n;
  p.d = d;
  p.ell = ell;
  p.gamma = gamma;
  const std::size_t step = 2 * ell;
  const auto target =
      static_cast<std::size_t>(std::ceil((1.0 + gamma) * static_cast<double>(n) - 1e-9));
  p.m = std::max<std::size_t>(step, (target + step - 1) / step * step);
  p.check();
  return p;
}

DistributionParams DistributionParams::desk(std::size_t n) {
  return with_gamma(n, 8, 4, 0.25);
}

DistributionParams DistributionParams::asymptotic(std::size_t n) {
  const double nn = static_cast<double>(n);
  const auto ell = static_cast<std::size_t>(std::max(1.0, std::round(std::pow(nn, 0.1))));
  return with_gamma(n, 100, ell, std::pow(nn, -0.1));
}

DistributionParams DistributionParams::preset(const std::string& name, std::size_t n) {
  if (name == "desk") return desk(n);
  if (name == "asymptotic") return asymptotic(n);
  throw ParameterError("unknown preset '" + name + "'");
}

ColoredGraph sample_block_graph(std::size_t block_size, std::size_t d, Rng& rng) {
  if (block_size < 2 || block_size % 2 != 0) {
    throw ParameterError("sample_block_graph: block size must be even and >= 2");
  }
  std::vector<Vertex> table(block_size * d);
  std::vector<Vertex> order(block_size);
  for (Color c = 0; c < d; ++c) {
    std::iota(order.begin(), order.end(), Vertex{0});
    shuffle(std::span<Vertex>(order), rng);
    for (std::size_t i = 0; i < block_size; i += 2) {
      table[order[i] * d + c] = order[i + 1];
      table[order[i + 1] * d + c] = order[i];
    }
  }
  return ColoredGraph(block_size, d, std::move(table));
}

SampleOutcome sample_pml(const DistributionParams& params, Rng& rng) {
  params.check();
  const std::size_t n = params.n, d = params.d, ell = params.ell;
  const std::size_t zeta = params.zeta();
  SampleOutcome out;
  out.coins.key = rng.key();
  out.coins.begin = rng.counter();

  // Step 1: the super-graph, block by block.
  std::vector<Vertex> super(params.m * d);
  for (std::size_t b = 0; b < ell; ++b) {
    const ColoredGraph block = sample_block_graph(zeta, d, rng);
    const auto base = static_cast<Vertex>(b * zeta);
    for (Vertex s = 0; s < zeta; ++s) {
      for (Color c = 0; c < d; ++c) super[(base + s) * d + c] = base + block.target(s, c);
    }
  }

  // Step 2: the block map, forced to block 0 on F.
  std::vector<bool> in_f(n, false);
  for (Vertex v : params.f) in_f[v] = true;
  out.k_map.resize(n);
  std::vector<std::size_t> load(ell, 0);
  for (Vertex j = 0; j < n; ++j) {
    out.k_map[j] = in_f[j] ? 0U : static_cast<std::uint32_t>(rng.below(ell));
    ++load[out.k_map[j]];
  }
  if (std::any_of(load.begin(), load.end(), [&](std::size_t x) { return x > zeta; })) {
    out.aborted = true;
    out.graph = ColoredGraph::self_loops(n, d);
    out.coins.end = rng.counter();
    return out;
  }

  // Step 3: the injection, uniform without replacement inside each block.
  std::vector<std::vector<Vertex>> slots(ell, std::vector<Vertex>(zeta));
  for (std::size_t b = 0; b < ell; ++b) {
    std::iota(slots[b].begin(), slots[b].end(), static_cast<Vertex>(b * zeta));
    shuffle(std::span<Vertex>(slots[b]), rng);
  }
  std::vector<std::size_t> next(ell, 0);
  constexpr auto kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> preimage(params.m, kNone);
  out.injection.resize(n);
  for (Vertex j = 0; j < n; ++j) {
    const auto b = out.k_map[j];
    out.injection[j] = slots[b][next[b]++];
    preimage[out.injection[j]] = j;
  }

  // Steps 4-5: induced edges, self-loops on every missing slot.
  std::vector<Vertex> table(n * d);
  for (Vertex j = 0; j < n; ++j) {
    for (Color c = 0; c < d; ++c) {
      const Vertex t = preimage[super[out.injection[j] * d + c]];
      table[j * d + c] = t == kNone ? j : t;
    }
  }
  out.graph = ColoredGraph(n, d, std::move(table));
  out.coins.end = rng.counter();
  return out;
}

namespace predicates {

ProfilePredicate always() {
  return [](const ColoredGraph&, const ComponentPartition&) { return true; };
}

ProfilePredicate exactly_components(std::size_t count) {
  return [count](const ColoredGraph&, const ComponentPartition& p) {
    return p.count() == count;
  };
}

ProfilePredicate sizes_within(double lo, double hi) {
  return [lo, hi](const ColoredGraph&, const ComponentPartition& p) {
    return std::all_of(p.sizes.begin(), p.sizes.end(), [&](std::size_t s) {
      const auto x = static_cast<double>(s);
      return lo <= x && x <= hi;
    });
  };
}

ProfilePredicate connected() { return exactly_components(1); }

ProfilePredicate concentrated(const DistributionParams& params) {
  return all_of({exactly_components(params.ell),
                 sizes_within(params.window_lo(), params.window_hi())});
}

ProfilePredicate all_of(std::vector<ProfilePredicate> parts) {
  return [parts = std::move(parts)](const ColoredGraph& g, const ComponentPartition& p) {
    return std::all_of(parts.begin(), parts.end(),
                       [&](const ProfilePredicate& q) { return q(g, p); });
  };
}

}  // namespace predicates

RejectionResult condition_on_profile(const DistributionParams& params, Rng& rng,
                                     const ProfilePredicate& predicate,
                                     std::size_t max_retries) {
  RejectionResult res;
  while (res.attempts < max_retries) {
    ++res.attempts;
    SampleOutcome s = sample_pml(params, rng);
    if (predicate(s.graph, components(s.graph))) {
      res.sample = std::move(s);
      break;
    }
  }
  return res;
}

bool has_component_within(const ComponentPartition& part,
                          const std::vector<bool>& subset_mask) {
  std::vector<bool> escapes(part.count(), false);
  for (Vertex j = 0; j < part.labels.size(); ++j) {
    if (!subset_mask[j]) escapes[part.labels[j]] = true;
  }
  return std::find(escapes.begin(), escapes.end(), false) != escapes.end();
}

namespace {

std::vector<bool> subset_mask(const DistributionParams& params,
                              const std::vector<Vertex>& s) {
  if (s.size() != params.zeta()) throw ParameterError("B_S: |S| must equal M/ell");
  std::vector<bool> mask(params.n, false);
  for (Vertex v : s) {
    if (v >= params.n || mask[v]) throw ParameterError("B_S: S must be distinct vertices");
    mask[v] = true;
  }
  return mask;
}

}  // namespace

RejectionResult sample_bs(const DistributionParams& params,
                          const std::vector<Vertex>& s, Rng& rng,
                          std::size_t max_retries) {
  DistributionParams plain = params;
  plain.f.clear();
  if (plain.zeta() > plain.n) throw ParameterError("B_S: M/ell exceeds N");
  const auto mask = subset_mask(plain, s);
  RejectionResult res;
  while (res.attempts < max_retries) {
    ++res.attempts;
    SampleOutcome out = sample_pml(plain, rng);
    if (!out.aborted && has_component_within(components(out.graph), mask)) {
      res.sample = std::move(out);
      break;
    }
  }
  return res;
}

std::optional<PlantedSample> sample_bs_planted(const DistributionParams& params,
                                               const std::vector<Vertex>& s,
                                               Rng& rng,
                                               const ProfilePredicate& predicate,
                                               std::size_t max_retries) {
  DistributionParams plain = params;
  plain.f.clear();
  if (plain.zeta() > plain.n) throw ParameterError("B_S: M/ell exceeds N");
  const auto mask = subset_mask(plain, s);
  const std::size_t n = plain.n, zeta = plain.zeta();

  for (std::size_t attempt = 1; attempt <= max_retries; ++attempt) {
    SampleOutcome base = sample_pml(plain, rng);
    if (base.aborted) continue;
    const auto part = components(base.graph);
    if (!predicate(base.graph, part)) continue;

    std::vector<std::uint32_t> fitting;
    for (std::uint32_t c = 0; c < part.count(); ++c) {
      if (part.sizes[c] <= zeta) fitting.push_back(c);
    }
    if (fitting.empty()) continue;
    const auto chosen = fitting[rng.below(fitting.size())];
    const auto members = part.members(chosen);

    // S' = C plus random padding; pi maps S onto S' and the rest onto the rest.
    std::vector<bool> in_c(n, false);
    for (Vertex v : members) in_c[v] = true;
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < n; ++v) {
      if (!in_c[v]) outside.push_back(v);
    }
    shuffle(std::span<Vertex>(outside), rng);
    std::vector<Vertex> s_prime = members;
    s_prime.insert(s_prime.end(), outside.begin(),
                   outside.begin() + static_cast<std::ptrdiff_t>(zeta - members.size()));
    std::vector<Vertex> rest(outside.begin() + static_cast<std::ptrdiff_t>(zeta - members.size()),
                             outside.end());
    shuffle(std::span<Vertex>(s_prime), rng);
    shuffle(std::span<Vertex>(rest), rng);

    std::vector<Vertex> map(n);
    std::size_t in_i = 0, out_i = 0;
    for (Vertex v = 0; v < n; ++v) map[v] = mask[v] ? s_prime[in_i++] : rest[out_i++];
    const Permutation pi(std::move(map));

    PlantedSample res;
    res.attempts = attempt;
    res.outcome.graph = relabel(base.graph, pi);
    res.outcome.k_map.resize(n);
    res.outcome.injection.resize(n);
    for (Vertex j = 0; j < n; ++j) {
      res.outcome.k_map[j] = base.k_map[pi(j)];
      res.outcome.injection[j] = base.injection[pi(j)];
    }
    res.outcome.coins = base.coins;
    res.outcome.coins.end = rng.counter();
    for (Vertex v : members) res.component.push_back(pi.inverse_at(v));
    std::sort(res.component.begin(), res.component.end());
    return res;
  }
  return std::nullopt;
}

TriangleReport triangle_count(const ColoredGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex v : g.row(j)) {
      if (v != j) adj[j].push_back(v);
    }
    std::sort(adj[j].begin(), adj[j].end());
    adj[j].erase(std::unique(adj[j].begin(), adj[j].end()), adj[j].end());
  }
  const auto part = components(g);
  TriangleReport rep;
  rep.per_component.assign(part.count(), 0);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b : adj[a]) {
      if (b <= a) continue;
      for (Vertex c : adj[b]) {
        if (c <= b) continue;
        if (std::binary_search(adj[a].begin(), adj[a].end(), c)) {
          ++rep.count;
          ++rep.per_component[part.labels[a]];
        }
      }
    }
  }
  return rep;
}

}  // namespace explab
