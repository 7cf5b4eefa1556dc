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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "explab/graph.hpp"
#include "explab/sampler.hpp"

namespace explab {

/// (Av)_j = (1/d) sum_c v[adj(j, c)]. A self-loop slot adds 1/d to the
/// diagonal. Summation runs over colors in order, so results are bit-stable.
void normalized_adjacency_apply(const ColoredGraph& g, std::span<const double> v,
                                std::span<double> out);
std::vector<double> normalized_adjacency_apply(const ColoredGraph& g,
                                               std::span<const double> v);

Eigen::MatrixXd normalized_adjacency_dense(const ColoredGraph& g);

enum class EigenMethod { Automatic, Dense, Iterative };

struct SpectralOptions {
  std::size_t dense_threshold = 4096;
  double tol = 1e-10;
  /// Iteration also requires the eigen-residual ||A'x - mu x|| to fall below
  /// this, so a slowly drifting Rayleigh quotient does not stop it early.
  double residual_tol = 1e-7;
  std::size_t max_iter = 100000;
  EigenMethod method = EigenMethod::Automatic;
};

struct Lambda2Estimate {
  double lambda2 = 1.0;
  std::string method;  // "dense" or "power"
  bool converged = true;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Second-largest eigenvalue of A. The dense path uses a full symmetric
/// eigendecomposition. The iterative path runs power iteration on the lazy
/// operator (I + A)/2, whose spectrum lies in [0, 1], deflated against the
/// uniform vector, and maps back via lambda2 = 2 mu - 1. A non-converged
/// estimate is returned with `converged` cleared. Requires N >= 2.
Lambda2Estimate second_eigenvalue(const ColoredGraph& g,
                                  const SpectralOptions& options = {});
double lambda2_dense(const ColoredGraph& g);

struct SpectralReport {
  Lambda2Estimate estimate;
  std::vector<std::size_t> component_sizes;
  /// 1 - lambda2 per component; NaN for singletons, which have no second
  /// eigenvalue.
  std::vector<double> component_gaps;

  double lambda2() const { return estimate.lambda2; }
  bool connected() const { return component_sizes.size() == 1; }
  /// 1 - lambda2 when connected, otherwise the smallest component gap.
  double spectral_gap() const;
  bool is_alpha_expander(double alpha) const {
    return connected() && 1.0 - lambda2() >= alpha;
  }
};

SpectralReport spectral_report(const ColoredGraph& g,
                               const SpectralOptions& options = {});

struct WalkDistribution {
  std::vector<double> probs;
  std::size_t steps = 0;
  /// max_v |probs_v - 1/N|.
  double max_deviation_from_uniform() const;
};

/// (A')^steps start with A' = (I + A)/2, applied exactly.
WalkDistribution lazy_walk(const ColoredGraph& g, std::span<const double> start,
                           std::size_t steps);

/// (1 - alpha/2)^steps.
double mixing_bound(double alpha, std::size_t steps);

struct ExpansionReport {
  /// min |N(U) \ U| / |U| over 1 <= |U| <= N/2.
  double vertex_expansion = 0.0;
  /// min e(U, V \ U) / |U|, counting color slots.
  double edge_expansion = 0.0;
  /// edge_expansion / d.
  double conductance = 0.0;
};

inline constexpr std::size_t kMaxExpansionVertices = 24;

/// Exhaustive over subsets; throws ScaleError above kMaxExpansionVertices.
ExpansionReport edge_expansion_exact(const ColoredGraph& g);

/// Two-sided Cheeger relation for d-regular graphs,
/// (1 - lambda2)/2 <= phi <= sqrt(2 (1 - lambda2)), together with
/// h_v / d <= phi <= h_v.
bool cheeger_consistent(double lambda2, const ExpansionReport& e, std::size_t d,
                        double slack = 1e-9);

namespace predicates {
/// Every component with at least two vertices has gap >= alpha.
ProfilePredicate expanding(double alpha);
}  // namespace predicates

}  // namespace explab
