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

#include "explab/sunflower.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "explab/errors.hpp"

namespace explab {

using boost::multiprecision::cpp_int;

Rational Rational::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ParameterError("Rational: zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

Rational Rational::parse(const std::string& text) {
  const auto bad = [&] { return ParameterError("Rational: cannot parse '" + text + "'"); };
  const auto digits = [&](const std::string& s) {
    if (s.empty() || s.size() > 18 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw bad();
    }
    return static_cast<std::uint64_t>(std::stoull(s));
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    return of(digits(text.substr(0, slash)), digits(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return of(digits(text), 1);
  const std::string whole = dot == 0 ? "0" : text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty()) return of(digits(whole), 1);
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  return of(digits(whole) * scale + digits(frac), scale);
}

std::string Rational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<Subset> all_subsets(std::size_t n, std::size_t k) {
  std::vector<Subset> out;
  if (k > n) return out;
  Subset cur(k);
  std::iota(cur.begin(), cur.end(), Vertex{0});
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::size_t WitnessMap::witness_length() const {
  return witnesses.empty() ? 0 : witnesses.front().size();
}

void WitnessMap::check() const {
  if (sets.size() != witnesses.size()) {
    throw ParameterError("WitnessMap: sets and witnesses differ in count");
  }
  const auto q = witness_length();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (witnesses[i].size() != q ||
        witnesses[i].find_first_not_of("01") != std::string::npos) {
      throw ParameterError("WitnessMap: witness " + std::to_string(i) +
                           " is not a bit string of length " + std::to_string(q));
    }
    if (!std::is_sorted(sets[i].begin(), sets[i].end()) ||
        std::adjacent_find(sets[i].begin(), sets[i].end()) != sets[i].end()) {
      throw ParameterError("WitnessMap: set " + std::to_string(i) + " is not sorted and distinct");
    }
  }
}

bool frequency_at_least(std::uint64_t count, std::uint64_t size, std::uint64_t zeta,
                        std::uint64_t n, const Rational& mu) {
  if (size == 0) throw ParameterError("frequency_at_least: empty family");
  if (mu.num > mu.den) throw ParameterError("frequency_at_least: mu must be <= 1");
  const auto den = static_cast<unsigned>(mu.den);
  const auto rest = static_cast<unsigned>(mu.den - mu.num);
  const cpp_int lhs = pow(cpp_int(count), den) * pow(cpp_int(n), rest);
  const cpp_int rhs = pow(cpp_int(size), den) * pow(cpp_int(zeta), rest);
  return lhs >= rhs;
}

bool frequency_at_most(std::uint64_t count, std::uint64_t size, std::uint64_t zeta,
                       std::uint64_t n, const Rational& mu) {
  if (size == 0) throw ParameterError("frequency_at_most: empty family");
  if (mu.num > mu.den) throw ParameterError("frequency_at_most: mu must be <= 1");
  const auto den = static_cast<unsigned>(mu.den);
  const auto rest = static_cast<unsigned>(mu.den - mu.num);
  const cpp_int lhs = pow(cpp_int(count), den) * pow(cpp_int(n), rest);
  const cpp_int rhs = pow(cpp_int(size), den) * pow(cpp_int(zeta), rest);
  return lhs <= rhs;
}

double heaviness_threshold(std::size_t zeta, std::size_t n, const Rational& mu) {
  return std::pow(static_cast<double>(zeta) / static_cast<double>(n), 1.0 - mu.value());
}

std::string SunflowerViolation::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::WrongSize:
      out << "set " << set_index << " does not have size zeta";
      break;
    case Kind::CoreNotContained:
      out << "set " << set_index << " does not contain the core";
      break;
    case Kind::HeavyElement:
      out << "vertex " << vertex << " outside the core exceeds the frequency bound";
      break;
  }
  return out.str();
}

namespace {

std::vector<std::uint64_t> element_counts(const std::vector<const Subset*>& family,
                                          std::size_t n) {
  std::vector<std::uint64_t> counts(n, 0);
  for (const Subset* s : family) {
    for (Vertex v : *s) ++counts.at(v);
  }
  return counts;
}

}  // namespace

std::optional<SunflowerViolation> verify_sunflower(const Sunflower& sf, std::size_t n) {
  using Kind = SunflowerViolation::Kind;
  std::vector<bool> in_core(n, false);
  for (Vertex v : sf.core) in_core.at(v) = true;
  Subset core = sf.core;
  std::sort(core.begin(), core.end());
  std::vector<const Subset*> family;
  for (std::size_t i = 0; i < sf.sets.size(); ++i) {
    const Subset& s = sf.sets[i];
    if (s.size() != sf.zeta) return SunflowerViolation{Kind::WrongSize, i, 0};
    if (!std::includes(s.begin(), s.end(), core.begin(), core.end())) {
      return SunflowerViolation{Kind::CoreNotContained, i, 0};
    }
    family.push_back(&s);
  }
  if (family.empty()) return std::nullopt;
  const auto counts = element_counts(family, n);
  const auto size = static_cast<std::uint64_t>(family.size());
  for (Vertex v = 0; v < n; ++v) {
    if (in_core[v] || counts[v] == 0) continue;
    if (!frequency_at_most(counts[v], size, sf.zeta, n, sf.mu)) {
      return SunflowerViolation{Kind::HeavyElement, 0, v};
    }
  }
  return std::nullopt;
}

ExtractionResult extract_sunflower(const WitnessMap& wm, const Rational& mu,
                                   std::size_t zeta, std::size_t n) {
  wm.check();
  if (wm.sets.empty()) throw ParameterError("extract_sunflower: empty domain");
  if (!(mu.num > 0 && mu.num < mu.den)) {
    throw ParameterError("extract_sunflower: mu must lie in (0, 1)");
  }
  std::map<std::string, std::size_t> popularity;
  for (const auto& w : wm.witnesses) ++popularity[w];
  ExtractionResult res;
  for (const auto& [w, count] : popularity) {
    if (count > res.popular_count) {
      res.popular_count = count;
      res.witness = w;
    }
  }

  std::vector<const Subset*> family;
  for (std::size_t i = 0; i < wm.sets.size(); ++i) {
    if (wm.witnesses[i] == res.witness) family.push_back(&wm.sets[i]);
  }
  res.trace.push_back(family.size());
  std::vector<bool> in_core(n, false);
  while (true) {
    const auto counts = element_counts(family, n);
    const auto size = static_cast<std::uint64_t>(family.size());
    std::optional<Vertex> pivot;
    for (Vertex v = 0; v < n && !pivot; ++v) {
      if (!in_core[v] && counts[v] > 0 &&
          frequency_at_least(counts[v], size, zeta, n, mu)) {
        pivot = v;
      }
    }
    if (!pivot) break;
    in_core[*pivot] = true;
    res.pivots.push_back(*pivot);
    std::erase_if(family, [&](const Subset* s) {
      return !std::binary_search(s->begin(), s->end(), *pivot);
    });
    res.trace.push_back(family.size());
  }

  res.sunflower.mu = mu;
  res.sunflower.zeta = zeta;
  for (const Subset* s : family) res.sunflower.sets.push_back(*s);
  for (Vertex v = 0; v < n; ++v) {
    if (in_core[v]) res.sunflower.core.push_back(v);
  }
  return res;
}

CoreBound core_size_bound(std::size_t q, const Rational& mu, std::size_t n,
                          std::size_t zeta, std::optional<std::size_t> ell) {
  if (zeta >= n) throw ParameterError("core_size_bound: need zeta < N");
  if (mu.num == 0) throw ParameterError("core_size_bound: mu must be positive");
  CoreBound b;
  const double qq = static_cast<double>(q);
  b.strict = qq / (mu.value() * std::log2(static_cast<double>(n) / static_cast<double>(zeta)));
  if (ell) {
    if (*ell < 2) throw ParameterError("core_size_bound: ell must be >= 2");
    b.relaxed = 2.0 * qq / (mu.value() * std::log2(static_cast<double>(*ell)));
  }
  return b;
}

}  // namespace explab
