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

#include "explab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include "explab/errors.hpp"

namespace explab {

MeanEstimate estimate_mean(std::span<const double> xs) {
  MeanEstimate e;
  e.n = xs.size();
  if (xs.empty()) return e;
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(e.n - 1) / static_cast<double>(e.n));
  }
  return e;
}

Interval wilson_interval(std::size_t k, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double normal_two_sided_quantile(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ParameterError("normal_two_sided_quantile: level must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(),
                               0.5 + level / 2.0);
}

double total_variation(std::span<const std::int64_t> a,
                       std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) throw ParameterError("total_variation: empty sample");
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> counts;
  for (auto x : a) ++counts[x].first;
  for (auto x : b) ++counts[x].second;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double sum = 0.0;
  for (const auto& [value, c] : counts) {
    sum += std::abs(static_cast<double>(c.first) / na - static_cast<double>(c.second) / nb);
  }
  return sum / 2.0;
}

namespace {

void resample(std::span<const std::int64_t> src, std::vector<std::int64_t>& dst,
              Rng& rng) {
  dst.resize(src.size());
  for (auto& x : dst) x = src[rng.below(src.size())];
}

}  // namespace

Interval bootstrap_tvd_interval(std::span<const std::int64_t> a,
                                std::span<const std::int64_t> b,
                                std::size_t resamples, double level, Rng& rng) {
  if (resamples == 0) throw ParameterError("bootstrap_tvd_interval: no resamples");
  std::vector<double> stats;
  stats.reserve(resamples);
  std::vector<std::int64_t> ra, rb;
  for (std::size_t i = 0; i < resamples; ++i) {
    resample(a, ra, rng);
    resample(b, rb, rng);
    stats.push_back(total_variation(ra, rb));
  }
  std::sort(stats.begin(), stats.end());
  const double tail = (1.0 - level) / 2.0;
  const auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(
        std::clamp(std::floor(q * static_cast<double>(resamples)), 0.0,
                   static_cast<double>(resamples - 1)));
    return stats[idx];
  };
  return {at(tail), at(1.0 - tail)};
}

double permutation_pvalue(std::span<const std::int64_t> a,
                          std::span<const std::int64_t> b,
                          std::size_t permutations, Rng& rng) {
  const double observed = total_variation(a, b);
  std::vector<std::int64_t> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < permutations; ++i) {
    shuffle(std::span<std::int64_t>(pooled), rng);
    const std::span<const std::int64_t> all(pooled);
    if (total_variation(all.first(a.size()), all.subspan(a.size())) >= observed - 1e-12) {
      ++hits;
    }
  }
  return static_cast<double>(hits + 1) / static_cast<double>(permutations + 1);
}

double binomial_upper_tail(std::uint64_t n, double p, std::uint64_t k) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  return boost::math::cdf(boost::math::complement(dist, static_cast<double>(k - 1)));
}

double binomial_deviation_allowance(std::uint64_t n, double p, double alpha) {
  if (n == 0) throw ParameterError("binomial_deviation_allowance: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("binomial_deviation_allowance: alpha must lie in (0, 1)");
  }
  if (p <= 0.0 || p >= 1.0) return 0.0;
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  const double hi = boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
  const double lo = boost::math::quantile(dist, alpha / 2.0);
  const double nn = static_cast<double>(n);
  return std::max(hi / nn - p, p - lo / nn);
}

}  // namespace explab
