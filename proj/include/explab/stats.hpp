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

#include <cstddef>
#include <cstdint>
#include <span>

#include "explab/rng.hpp"

namespace explab {

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

/// Sample mean and standard error of the mean (n-1 denominator).
MeanEstimate estimate_mean(std::span<const double> xs);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Wilson score interval for k successes in n trials at z standard deviations.
Interval wilson_interval(std::size_t k, std::size_t n, double z);

/// Two-sided standard normal quantile: z with P(|Z| <= z) = level.
double normal_two_sided_quantile(double level);

/// Total variation distance between the empirical distributions of two
/// integer-valued samples.
double total_variation(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b);

/// Percentile bootstrap interval for the empirical TVD, resampling each side
/// independently with replacement.
Interval bootstrap_tvd_interval(std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b,
                                std::size_t resamples, double level, Rng& rng);

/// Permutation-test p-value for H0: both samples share one distribution, with
/// the TVD as statistic. Uses the (hits + 1) / (perms + 1) convention.
double permutation_pvalue(std::span<const std::int64_t> a,
                          std::span<const std::int64_t> b,
                          std::size_t permutations, Rng& rng);

/// P[Binomial(n, p) >= k].
double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k);

/// Half-width a with P[|X/n - p| > a] <= alpha for X ~ Binomial(n, p), from
/// the outward-rounded alpha/2 quantiles on each side.
double binomial_deviation_allowance(std::uint64_t n, double p, double alpha);

}  // namespace explab
