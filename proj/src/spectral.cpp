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

#include "explab/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "explab/errors.hpp"
#include "explab/rng.hpp"

namespace explab {

void normalized_adjacency_apply(const ColoredGraph& g, std::span<const double> v,
                                std::span<double> out) {
  const std::size_t n = g.num_vertices();
  if (v.size() != n || out.size() != n) {
    throw ParameterError("normalized_adjacency_apply: vector length differs from N");
  }
  const double inv_d = 1.0 / static_cast<double>(g.degree());
  for (Vertex j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Vertex t : g.row(j)) acc += v[t];
    out[j] = acc * inv_d;
  }
}

std::vector<double> normalized_adjacency_apply(const ColoredGraph& g,
                                               std::span<const double> v) {
  std::vector<double> out(g.num_vertices());
  normalized_adjacency_apply(g, v, out);
  return out;
}

Eigen::MatrixXd normalized_adjacency_dense(const ColoredGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  const double inv_d = 1.0 / static_cast<double>(g.degree());
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    for (Vertex t : g.row(j)) a(j, t) += inv_d;
  }
  return a;
}

double lambda2_dense(const ColoredGraph& g) {
  if (g.num_vertices() < 2) throw ParameterError("lambda2: needs N >= 2");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized_adjacency_dense(g),
                                                        Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return ev(ev.size() - 2);
}

namespace {

void project_out_uniform(std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

Lambda2Estimate lambda2_power(const ColoredGraph& g, const SpectralOptions& opt) {
  const std::size_t n = g.num_vertices();
  Lambda2Estimate est;
  est.method = "power";
  est.converged = false;

  std::vector<double> x(n), ax(n);
  Rng rng(0x5eedULL, n);
  for (double& v : x) v = rng.uniform() - 0.5;
  project_out_uniform(x);
  double nrm = norm2(x);
  for (double& v : x) v /= nrm;

  double mu_prev = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    normalized_adjacency_apply(g, x, ax);
    for (std::size_t i = 0; i < n; ++i) ax[i] = 0.5 * (x[i] + ax[i]);
    project_out_uniform(ax);
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i] * ax[i];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (ax[i] - mu * x[i]) * (ax[i] - mu * x[i]);
    res = std::sqrt(res);

    est.iterations = it;
    est.residual = res;
    est.lambda2 = 2.0 * mu - 1.0;
    if (std::abs(mu - mu_prev) <= opt.tol / 2.0 && res <= opt.residual_tol) {
      est.converged = true;
      break;
    }
    mu_prev = mu;
    nrm = norm2(ax);
    if (nrm == 0.0) {
      // x lies in the kernel of A'; the deflated top eigenvalue is 0.
      est.lambda2 = -1.0;
      est.residual = 0.0;
      est.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = ax[i] / nrm;
  }
  return est;
}

}  // namespace

Lambda2Estimate second_eigenvalue(const ColoredGraph& g, const SpectralOptions& options) {
  if (g.num_vertices() < 2) throw ParameterError("second_eigenvalue: needs N >= 2");
  const bool dense =
      options.method == EigenMethod::Dense ||
      (options.method == EigenMethod::Automatic &&
       g.num_vertices() <= options.dense_threshold);
  if (!dense) return lambda2_power(g, options);
  Lambda2Estimate est;
  est.method = "dense";
  est.lambda2 = lambda2_dense(g);
  return est;
}

double SpectralReport::spectral_gap() const {
  if (connected()) return 1.0 - lambda2();
  double gap = std::numeric_limits<double>::infinity();
  for (double x : component_gaps) {
    if (!std::isnan(x)) gap = std::min(gap, x);
  }
  return gap;
}

SpectralReport spectral_report(const ColoredGraph& g, const SpectralOptions& options) {
  SpectralReport rep;
  rep.estimate = second_eigenvalue(g, options);
  const auto part = components(g);
  rep.component_sizes = part.sizes;
  if (part.count() == 1) {
    rep.component_gaps = {1.0 - rep.lambda2()};
    return rep;
  }
  for (std::uint32_t c = 0; c < part.count(); ++c) {
    if (part.sizes[c] < 2) {
      rep.component_gaps.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const auto sub = induced_component(g, part, c);
    rep.component_gaps.push_back(1.0 - second_eigenvalue(sub, options).lambda2);
  }
  return rep;
}

double WalkDistribution::max_deviation_from_uniform() const {
  const double u = 1.0 / static_cast<double>(probs.size());
  double worst = 0.0;
  for (double p : probs) worst = std::max(worst, std::abs(p - u));
  return worst;
}

WalkDistribution lazy_walk(const ColoredGraph& g, std::span<const double> start,
                           std::size_t steps) {
  if (start.size() != g.num_vertices()) {
    throw ParameterError("lazy_walk: start length differs from N");
  }
  WalkDistribution w;
  w.steps = steps;
  w.probs.assign(start.begin(), start.end());
  std::vector<double> next(start.size());
  for (std::size_t s = 0; s < steps; ++s) {
    normalized_adjacency_apply(g, w.probs, next);
    for (std::size_t i = 0; i < next.size(); ++i) w.probs[i] = 0.5 * (w.probs[i] + next[i]);
  }
  return w;
}

double mixing_bound(double alpha, std::size_t steps) {
  return std::pow(1.0 - alpha / 2.0, static_cast<double>(steps));
}

ExpansionReport edge_expansion_exact(const ColoredGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxExpansionVertices) {
    throw ScaleError("edge_expansion_exact: N = " + std::to_string(n) +
                     " is too large for subset enumeration");
  }
  if (n < 2) throw ParameterError("edge_expansion_exact: needs N >= 2");
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex j = 0; j < n; ++j) {
    for (Vertex t : g.row(j)) {
      if (t != j) nbr[j] |= 1U << t;
    }
  }
  ExpansionReport rep;
  rep.vertex_expansion = std::numeric_limits<double>::infinity();
  rep.edge_expansion = std::numeric_limits<double>::infinity();
  const std::uint32_t limit = 1U << n;
  for (std::uint32_t u = 1; u < limit; ++u) {
    const auto size = static_cast<std::size_t>(std::popcount(u));
    if (2 * size > n) continue;
    std::uint32_t reach = 0;
    std::size_t cut = 0;
    for (std::uint32_t rest = u; rest != 0; rest &= rest - 1) {
      const auto j = static_cast<Vertex>(std::countr_zero(rest));
      reach |= nbr[j];
      for (Vertex t : g.row(j)) {
        if (((u >> t) & 1U) == 0) ++cut;
      }
    }
    const double sz = static_cast<double>(size);
    rep.vertex_expansion =
        std::min(rep.vertex_expansion, static_cast<double>(std::popcount(reach & ~u)) / sz);
    rep.edge_expansion = std::min(rep.edge_expansion, static_cast<double>(cut) / sz);
  }
  rep.conductance = rep.edge_expansion / static_cast<double>(g.degree());
  return rep;
}

bool cheeger_consistent(double lambda2, const ExpansionReport& e, std::size_t d,
                        double slack) {
  const double gap = std::max(0.0, 1.0 - lambda2);
  const double phi = e.conductance;
  return gap / 2.0 <= phi + slack && phi <= std::sqrt(2.0 * gap) + slack &&
         e.vertex_expansion / static_cast<double>(d) <= phi + slack &&
         phi <= e.vertex_expansion + slack;
}

namespace predicates {

ProfilePredicate expanding(double alpha) {
  return [alpha](const ColoredGraph& g, const ComponentPartition& part) {
    if (part.count() == 1) return 1.0 - lambda2_dense(g) >= alpha;
    for (std::uint32_t c = 0; c < part.count(); ++c) {
      if (part.sizes[c] < 2) continue;
      if (1.0 - lambda2_dense(induced_component(g, part, c)) < alpha) return false;
    }
    return true;
  };
}

}  // namespace predicates

}  // namespace explab
