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
#include <vector>

#include "explab/graph.hpp"

namespace explab {

/// Exact rational in lowest terms; used for the heaviness exponent mu so that
/// frequency thresholds are decided without rounding.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Accepts "p/q" or a finite decimal such as "0.5". Throws ParameterError.
  static Rational parse(const std::string& text);
  static Rational of(std::uint64_t num, std::uint64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

using Subset = std::vector<Vertex>;  // sorted, distinct

/// All k-subsets of [n] in lexicographic order.
std::vector<Subset> all_subsets(std::size_t n, std::size_t k);

/// A witness string per set of an explicit family.
struct WitnessMap {
  std::vector<Subset> sets;
  std::vector<std::string> witnesses;  // bit strings, all of length q
  std::size_t witness_length() const;
  /// Throws ParameterError on length mismatch, unsorted sets or non-bit chars.
  void check() const;
};

struct Sunflower {
  std::vector<Subset> sets;
  Subset core;
  Rational mu;
  std::size_t zeta = 0;
};

/// count / size >= (zeta / n)^(1 - mu), decided in integer arithmetic.
bool frequency_at_least(std::uint64_t count, std::uint64_t size, std::uint64_t zeta,
                        std::uint64_t n, const Rational& mu);

/// count / size <= (zeta / n)^(1 - mu), decided in integer arithmetic.
bool frequency_at_most(std::uint64_t count, std::uint64_t size, std::uint64_t zeta,
                       std::uint64_t n, const Rational& mu);

/// (zeta / n)^(1 - mu) in floating point, for reporting.
double heaviness_threshold(std::size_t zeta, std::size_t n, const Rational& mu);

struct SunflowerViolation {
  enum class Kind { WrongSize, CoreNotContained, HeavyElement };
  Kind kind;
  std::size_t set_index = 0;  // for WrongSize and CoreNotContained
  Vertex vertex = 0;          // for HeavyElement
  std::string describe() const;
};

/// Checks every set has size zeta and contains the core, and that every
/// element outside the core has frequency at most (zeta/N)^(1 - mu).
std::optional<SunflowerViolation> verify_sunflower(const Sunflower& sf, std::size_t n);

struct ExtractionResult {
  Sunflower sunflower;
  std::string witness;              // the most popular witness
  std::size_t popular_count = 0;    // |wt^{-1}(witness)|
  std::vector<std::size_t> trace;   // family size after each restriction
  std::vector<Vertex> pivots;       // in the order they were added
};

/// Most popular witness (ties: lexicographically smallest string), then
/// repeatedly restrict to the sets containing the smallest vertex outside the
/// core whose frequency reaches the threshold.
ExtractionResult extract_sunflower(const WitnessMap& wm, const Rational& mu,
                                   std::size_t zeta, std::size_t n);

struct CoreBound {
  double strict = 0.0;             // q / (mu log2(N/zeta))
  std::optional<double> relaxed;   // 2q / (mu log2 ell)
};

CoreBound core_size_bound(std::size_t q, const Rational& mu, std::size_t n,
                          std::size_t zeta, std::optional<std::size_t> ell = std::nullopt);

}  // namespace explab
