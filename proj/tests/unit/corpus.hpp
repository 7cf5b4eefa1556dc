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

#include <numeric>
#include <vector>

#include "explab/graph.hpp"
#include "explab/rng.hpp"
#include "explab/sampler.hpp"

namespace explab::testing {

inline Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<Vertex> map(n);
  std::iota(map.begin(), map.end(), Vertex{0});
  shuffle(std::span<Vertex>(map), rng);
  return Permutation(std::move(map));
}

/// Mixed corpus: fixtures, unions, and samples from P_{M,ell} at small N.
inline std::vector<ColoredGraph> small_corpus(std::uint64_t seed, std::size_t per_shape = 4) {
  std::vector<ColoredGraph> out;
  out.push_back(ColoredGraph::self_loops(8, 3));
  out.push_back(fixtures::two_colored_cycle(4));
  out.push_back(fixtures::two_colored_cycle(10));
  out.push_back(fixtures::k4());
  out.push_back(fixtures::disjoint_union(fixtures::two_colored_cycle(4),
                                         fixtures::two_colored_cycle(4)));
  Rng rng(seed);
  for (std::size_t n : {8, 16, 32}) {
    for (std::size_t ell : {1, 2}) {
      for (std::size_t d : {2, 3, 4}) {
        const auto p = DistributionParams::with_gamma(n, d, ell, 0.25);
        for (std::size_t i = 0; i < per_shape; ++i) out.push_back(sample_pml(p, rng).graph);
      }
    }
  }
  return out;
}

}  // namespace explab::testing
