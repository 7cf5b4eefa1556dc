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

#include "explab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "explab/errors.hpp"

namespace explab {

Permutation canonical_chi(const Subset& cx, const Subset& cy, std::size_t n) {
  std::vector<Vertex> common, only_x;
  std::set_intersection(cx.begin(), cx.end(), cy.begin(), cy.end(),
                        std::back_inserter(common));
  std::set_difference(cx.begin(), cx.end(), cy.begin(), cy.end(),
                      std::back_inserter(only_x));
  std::vector<Vertex> map(n);
  std::vector<bool> placed(n, false);
  Vertex next = 0;
  for (Vertex v : common) {
    map[v] = next++;
    placed[v] = true;
  }
  for (Vertex v : only_x) {
    map[v] = next++;
    placed[v] = true;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!placed[v]) map[v] = next++;
  }
  return Permutation(std::move(map));
}

Permutation canonical_psi(const Subset& cx, const Subset& cy, const Permutation& chi) {
  std::vector<Vertex> only_x, only_y;
  std::set_difference(cx.begin(), cx.end(), cy.begin(), cy.end(),
                      std::back_inserter(only_x));
  std::set_difference(cy.begin(), cy.end(), cx.begin(), cx.end(),
                      std::back_inserter(only_y));
  if (only_x.size() != only_y.size()) {
    throw ParameterError("canonical_psi: sets differ in size");
  }
  std::vector<Vertex> map(chi.forward().begin(), chi.forward().end());
  for (std::size_t i = 0; i < only_x.size(); ++i) {
    map[only_y[i]] = chi(only_x[i]);
    map[only_x[i]] = chi(only_y[i]);
  }
  return Permutation(std::move(map));
}

bool chi_psi_conditions_hold(const Subset& cx, const Subset& cy, const Permutation& chi,
                             const Permutation& psi, std::size_t k) {
  const auto onto_prefix = [k](const Subset& s, const Permutation& p) {
    return s.size() == k &&
           std::all_of(s.begin(), s.end(), [&](Vertex v) { return p(v) < k; });
  };
  if (!onto_prefix(cx, chi) || !onto_prefix(cy, psi)) return false;
  const std::size_t n = chi.size();
  std::vector<int> side(n, 0);  // bit 0: in C_x, bit 1: in C_y
  for (Vertex v : cx) side[v] |= 1;
  for (Vertex v : cy) side[v] |= 2;
  for (Vertex j = 0; j < n; ++j) {
    if ((side[j] == 0 || side[j] == 3) && chi(j) != psi(j)) return false;
  }
  for (Vertex j1 = 0; j1 < n; ++j1) {
    if (side[j1] != 1) continue;
    bool found = false;
    for (Vertex j2 = 0; j2 < n && !found; ++j2) {
      found = side[j2] == 2 && chi(j1) == psi(j2) && chi(j2) == psi(j1);
    }
    if (!found) return false;
  }
  return true;
}

namespace {

std::vector<Subset> k_shadow(const std::vector<Subset>& family, std::size_t k,
                             std::size_t n) {
  std::set<Subset> out;
  for (const Subset& s : family) {
    if (s.size() < k) throw ParameterError("build_perm_relation: a set is smaller than k");
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end() ||
        (!s.empty() && s.back() >= n)) {
      throw ParameterError("build_perm_relation: sets must be sorted distinct vertices of [N]");
    }
    for (const Subset& pick : all_subsets(s.size(), k)) {
      Subset c;
      for (Vertex i : pick) c.push_back(s[i]);
      out.insert(std::move(c));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Permutation> prefix_stabilizer(std::size_t n, std::size_t k) {
  std::vector<Permutation> out;
  std::vector<Vertex> head(k), tail(n - k);
  std::iota(head.begin(), head.end(), Vertex{0});
  do {
    std::iota(tail.begin(), tail.end(), static_cast<Vertex>(k));
    do {
      std::vector<Vertex> map(head);
      map.insert(map.end(), tail.begin(), tail.end());
      out.emplace_back(std::move(map));
    } while (std::next_permutation(tail.begin(), tail.end()));
  } while (std::next_permutation(head.begin(), head.end()));
  return out;
}

std::uint32_t intern(std::map<std::vector<Vertex>, std::uint32_t>& index,
                     std::vector<Permutation>& store, Permutation p) {
  std::vector<Vertex> key(p.forward().begin(), p.forward().end());
  const auto [it, fresh] = index.emplace(std::move(key), static_cast<std::uint32_t>(store.size()));
  if (fresh) store.push_back(std::move(p));
  return it->second;
}

}  // namespace

PermRelation build_perm_relation(const std::vector<Subset>& sunflower_sets,
                                 const std::vector<Subset>& ideal_sets, std::size_t k,
                                 std::size_t n) {
  if (n > kMaxRelationVertices) {
    throw ScaleError("build_perm_relation: N = " + std::to_string(n) +
                     " exceeds the enumeration limit");
  }
  if (k > n) throw ParameterError("build_perm_relation: k exceeds N");
  const auto fx = k_shadow(sunflower_sets, k, n);
  const auto fy = k_shadow(ideal_sets, k, n);
  const auto taus = prefix_stabilizer(n, k);

  PermRelation r;
  r.n = n;
  r.k = k;
  r.x_family_size = fx.size();
  r.y_family_size = fy.size();
  std::map<std::vector<Vertex>, std::uint32_t> xi, yi;
  for (const Subset& cx : fx) {
    for (const Subset& cy : fy) {
      const Permutation chi = canonical_chi(cx, cy, n);
      const Permutation psi = canonical_psi(cx, cy, chi);
      for (const Permutation& tau : taus) {
        const auto a = intern(xi, r.x, tau.compose(chi));
        const auto b = intern(yi, r.y, tau.compose(psi));
        r.pairs.emplace_back(a, b);
      }
    }
  }
  std::sort(r.pairs.begin(), r.pairs.end());
  return r;
}

std::vector<Vertex> oracle_string(const Permutation& p) {
  std::vector<Vertex> s(p.forward().begin(), p.forward().end());
  s.insert(s.end(), p.backward().begin(), p.backward().end());
  return s;
}

RelationStats relation_stats(const PermRelation& r, OraclePositions positions) {
  RelationStats st;
  st.pairs = r.pairs.size();
  if (r.pairs.empty()) {
    st.degenerate = true;
    return st;
  }
  std::vector<std::vector<std::uint32_t>> nx(r.x.size()), ny(r.y.size());
  for (const auto& [a, b] : r.pairs) {
    nx[a].push_back(b);
    ny[b].push_back(a);
  }
  std::vector<std::vector<Vertex>> ox, oy;
  for (const auto& p : r.x) ox.push_back(oracle_string(p));
  for (const auto& p : r.y) oy.push_back(oracle_string(p));

  const auto degree_range = [](const std::vector<std::vector<std::uint32_t>>& adj,
                               std::uint64_t& lo, std::uint64_t& hi) {
    lo = std::numeric_limits<std::uint64_t>::max();
    hi = 0;
    for (const auto& list : adj) {
      if (list.empty()) continue;
      lo = std::min<std::uint64_t>(lo, list.size());
      hi = std::max<std::uint64_t>(hi, list.size());
    }
  };
  degree_range(nx, st.m_lo, st.m_hi);
  degree_range(ny, st.mp_lo, st.mp_hi);

  // l[e][i]: related partners of e that differ from e at position i.
  const std::size_t len = positions == OraclePositions::Both ? 2 * r.n : r.n;
  const auto differing = [len](const std::vector<std::vector<std::uint32_t>>& adj,
                               const std::vector<std::vector<Vertex>>& self,
                               const std::vector<std::vector<Vertex>>& other) {
    std::vector<std::vector<std::uint64_t>> l(adj.size(), std::vector<std::uint64_t>(len, 0));
    for (std::size_t e = 0; e < adj.size(); ++e) {
      for (auto partner : adj[e]) {
        for (std::size_t i = 0; i < len; ++i) {
          if (self[e][i] != other[partner][i]) ++l[e][i];
        }
      }
    }
    return l;
  };
  const auto lx = differing(nx, ox, oy);
  const auto ly = differing(ny, oy, ox);
  for (const auto& [a, b] : r.pairs) {
    for (std::size_t i = 0; i < len; ++i) {
      if (ox[a][i] != oy[b][i]) st.l_max = std::max(st.l_max, lx[a][i] * ly[b][i]);
    }
  }
  st.degenerate = st.l_max == 0;
  return st;
}

PermRelation relation_union(const std::vector<PermRelation>& parts) {
  PermRelation u;
  if (parts.empty()) return u;
  u.n = parts.front().n;
  u.k = parts.front().k;
  for (const auto& p : parts) {
    if (p.n != u.n) throw ParameterError("relation_union: relations differ in N");
    const auto dx = static_cast<std::uint32_t>(u.x.size());
    const auto dy = static_cast<std::uint32_t>(u.y.size());
    u.x.insert(u.x.end(), p.x.begin(), p.x.end());
    u.y.insert(u.y.end(), p.y.begin(), p.y.end());
    for (const auto& [a, b] : p.pairs) u.pairs.emplace_back(a + dx, b + dy);
    u.x_family_size += p.x_family_size;
    u.y_family_size += p.y_family_size;
  }
  return u;
}

RelationStats combine_stats(const std::vector<RelationStats>& parts) {
  RelationStats s;
  s.m_lo = s.mp_lo = std::numeric_limits<std::uint64_t>::max();
  bool any = false;
  for (const auto& p : parts) {
    if (p.pairs == 0) continue;
    any = true;
    s.m_lo = std::min(s.m_lo, p.m_lo);
    s.m_hi = std::max(s.m_hi, p.m_hi);
    s.mp_lo = std::min(s.mp_lo, p.mp_lo);
    s.mp_hi = std::max(s.mp_hi, p.mp_hi);
    s.l_max = std::max(s.l_max, p.l_max);
    s.pairs += p.pairs;
  }
  if (!any) return RelationStats{0, 0, 0, 0, 0, 0, true};
  s.degenerate = s.l_max == 0;
  return s;
}

PermRelation relabel_relation(const PermRelation& r, const Permutation& rho) {
  PermRelation out = r;
  for (auto& p : out.x) p = rho.compose(p);
  for (auto& p : out.y) p = rho.compose(p);
  return out;
}

LowerBound query_lower_bound(const RelationStats& s, double eps) {
  if (!(eps >= 0.0 && eps <= 0.5)) {
    throw ParameterError("query_lower_bound: eps must lie in [0, 1/2]");
  }
  if (s.l_max == 0) throw ParameterError("query_lower_bound: l_max is zero");
  LowerBound lb;
  const double a = static_cast<double>(s.m_lo) - 2.0 * eps * static_cast<double>(s.m_hi);
  const double b = static_cast<double>(s.mp_lo) - 2.0 * eps * static_cast<double>(s.mp_hi);
  lb.vacuous = a <= 0.0 || b <= 0.0;
  const double pre = 1.0 - 2.0 * std::sqrt(eps * (1.0 - eps));
  lb.value = lb.vacuous ? 0.0
                        : std::max(0.0, pre) * std::sqrt(a * b / static_cast<double>(s.l_max));
  return lb;
}

LowerBound distinguishing_lower_bound(const RelationStats& s, double delta) {
  if (!(delta >= 0.0 && delta <= 0.25)) {
    throw ParameterError("distinguishing_lower_bound: delta must lie in [0, 1/4]");
  }
  return query_lower_bound(s, 2.0 * delta);
}

double permutation_closed_form(double delta, std::size_t n, std::size_t zeta, double mu) {
  if (!(delta >= 0.0 && delta <= 0.25)) {
    throw ParameterError("permutation_closed_form: delta must lie in [0, 1/4]");
  }
  const double ratio = static_cast<double>(n) / static_cast<double>(zeta);
  return std::max(0.0, 1.0 - 2.0 * std::sqrt(2.0 * delta * (1.0 - 2.0 * delta))) *
         (1.0 - 4.0 * delta) * std::sqrt(std::pow(ratio, 1.0 - mu));
}

double graph_closed_form(double delta, std::size_t n, std::size_t zeta, double mu) {
  return 0.5 * permutation_closed_form(delta, n, zeta, mu);
}

AnalyticLMax analytic_l_max(std::size_t sunflower_size, std::size_t ideal_size,
                            std::size_t core_size, std::size_t n, std::size_t zeta,
                            double mu) {
  if (core_size >= n || zeta > n) throw ParameterError("analytic_l_max: bad sizes");
  AnalyticLMax a;
  const double thr =
      std::pow(static_cast<double>(zeta) / static_cast<double>(n), 1.0 - mu);
  const double slack = static_cast<double>(zeta - std::min(zeta, core_size)) /
                       static_cast<double>(n - core_size);
  const double families =
      static_cast<double>(sunflower_size) * static_cast<double>(ideal_size);
  a.paper = thr * families;
  a.refined = std::max(thr, slack) * families;
  a.preconditions_hold = slack <= thr;
  return a;
}

}  // namespace explab
