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

#include "explab/verifier.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "explab/errors.hpp"
#include "explab/spectral.hpp"

namespace explab {

WitnessState::WitnessState(std::vector<double> amps) : amps_(std::move(amps)) {
  double s = 0.0;
  for (double a : amps_) s += a * a;
  if (amps_.empty() || std::abs(s - 1.0) > 1e-12) {
    throw ParameterError("WitnessState: amplitudes must have unit norm");
  }
}

WitnessState WitnessState::normalized(std::vector<double> amps) {
  double s = 0.0;
  for (double a : amps) s += a * a;
  if (s == 0.0) throw ParameterError("WitnessState: zero vector");
  const double inv = 1.0 / std::sqrt(s);
  for (double& a : amps) a *= inv;
  return WitnessState(std::move(amps));
}

WitnessState uniform_witness(std::size_t n) {
  return WitnessState::normalized(std::vector<double>(n, 1.0));
}

namespace {

std::vector<bool> membership(std::span<const Vertex> s, std::size_t n) {
  std::vector<bool> in(n, false);
  for (Vertex v : s) {
    if (v >= n || in[v]) throw ParameterError("witness: subset must be distinct vertices of [N]");
    in[v] = true;
  }
  return in;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VerifierOutcome outcome_from(std::span<const double> psi) {
  VerifierOutcome out;
  const double n = static_cast<double>(psi.size());
  double sum = 0.0;
  for (double a : psi) sum += a;
  out.p_step2 = dot(psi, psi);
  const double mean = sum / n;
  out.overlap_uniform = sum * sum / n;
  double acc = 0.0;
  for (double a : psi) acc += (a - mean) * (a - mean);
  out.p_accept = acc;
  return out;
}

}  // namespace

WitnessState subset_witness(std::span<const Vertex> s, std::size_t n) {
  const auto in = membership(s, n);
  if (s.empty()) throw ParameterError("subset_witness: S is empty");
  std::vector<double> amps(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) amps[v] = 1.0;
  }
  return WitnessState::normalized(std::move(amps));
}

WitnessState ideal_witness(std::span<const Vertex> s, std::size_t n) {
  const auto in = membership(s, n);
  if (s.empty() || s.size() == n) {
    throw ParameterError("ideal_witness: S must be a proper non-empty subset");
  }
  const double nn = static_cast<double>(n);
  const double ns = static_cast<double>(s.size());
  const double nt = nn - ns;
  // sqrt(|T|/N)/sqrt(|S|) on S and -sqrt(|S|/N)/sqrt(|T|) on T.
  const double on_s = std::sqrt(nt / (nn * ns));
  const double on_t = -std::sqrt(ns / (nn * nt));
  std::vector<double> amps(n);
  for (Vertex v = 0; v < n; ++v) amps[v] = in[v] ? on_s : on_t;
  return WitnessState::normalized(std::move(amps));
}

VerifierOutcome acceptance_probability(const ColoredGraph& g, const WitnessState& w) {
  if (w.size() != g.num_vertices()) {
    throw ParameterError("acceptance_probability: witness length differs from N");
  }
  auto psi = normalized_adjacency_apply(g, w.amps());
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = 0.5 * (w[i] + psi[i]);
  return outcome_from(psi);
}

double test_score_exact(const ColoredGraph& g, const WitnessState& w) {
  const auto aw = normalized_adjacency_apply(g, w.amps());
  // <w|A^2|w> = ||Aw||^2 since A is symmetric.
  return 0.25 + 0.25 * dot(aw, aw) + 0.5 * dot(w.amps(), aw);
}

VerifierOutcome acceptance_statevector(const ColoredGraph& g, const WitnessState& w,
                                       QueryContext& ctx) {
  const std::size_t n = g.num_vertices(), d = g.degree();
  if (w.size() != n) {
    throw ParameterError("acceptance_statevector: witness length differs from N");
  }
  const std::size_t half = n * d;
  const auto index = [d](std::size_t j, std::size_t c) { return j * d + c; };

  // |+> (x) |w> (x) |0_d>; control 0 occupies [0, half), control 1 [half, 2 half).
  std::vector<double> state(2 * half);
  const double amp_c = 1.0 / std::sqrt(2.0 * static_cast<double>(d));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      state[index(j, c)] = amp_c * w[j];
      state[half + index(j, c)] = amp_c * w[j];
    }
  }

  // Controlled walk: a permutation of the control-1 basis states. The oracle
  // is used once to compute the neighbor and once to uncompute the scratch
  // register that held it.
  ctx.charge("verifier", kVerifierQueries);
  std::vector<double> walked(half);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < d; ++c) {
      walked[index(g.target(static_cast<Vertex>(j), static_cast<Color>(c)), c)] =
          state[half + index(j, c)];
    }
  }
  std::copy(walked.begin(), walked.end(), state.begin() + static_cast<std::ptrdiff_t>(half));

  // Project control onto |+> and color onto |0_d>.
  std::vector<double> psi(n, 0.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      acc += inv_sqrt2 * (state[index(j, c)] + state[half + index(j, c)]) * inv_sqrt_d;
    }
    psi[j] = acc;
  }
  return outcome_from(psi);
}

double optimal_acceptance(const ColoredGraph& g, std::size_t dense_threshold) {
  const std::size_t n = g.num_vertices();
  if (n > dense_threshold) {
    throw ScaleError("optimal_acceptance: N = " + std::to_string(n) +
                     " exceeds the dense threshold");
  }
  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::MatrixXd w =
      0.5 * (Eigen::MatrixXd::Identity(nn, nn) + normalized_adjacency_dense(g));
  const Eigen::MatrixXd p =
      Eigen::MatrixXd::Identity(nn, nn) -
      Eigen::MatrixXd::Constant(nn, nn, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd m = w * p * w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double repeated_acceptance(double p, std::uint64_t reps, CombineRule rule) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("repeated_acceptance: p outside [0, 1]");
  if (reps == 0) throw ParameterError("repeated_acceptance: reps must be positive");
  if (rule == CombineRule::AllAccept) return std::pow(p, static_cast<double>(reps));
  return binomial_upper_tail(reps, p, reps / 2 + 1);
}

std::uint64_t solve_reps(double p_no, double target) {
  if (!(target > 0.0 && target < 1.0)) {
    throw ParameterError("solve_reps: target must lie in (0, 1)");
  }
  if (!(p_no >= 0.0 && p_no < 1.0)) {
    throw ParameterError("solve_reps: p_no must lie in [0, 1)");
  }
  if (p_no <= target) return 1;
  return static_cast<std::uint64_t>(std::ceil(std::log(target) / std::log(p_no)));
}

MeanEstimate expectation_over_distribution(const GraphSampler& sampler,
                                           const WitnessState& w,
                                           std::size_t n_samples, Rng& rng) {
  return expectation_over_distribution(
      sampler,
      [&w](const ColoredGraph& g) { return acceptance_probability(g, w).p_accept; },
      n_samples, rng);
}

MeanEstimate expectation_over_distribution(const GraphSampler& sampler,
                                           const GraphScore& score,
                                           std::size_t n_samples, Rng& rng) {
  std::vector<double> xs;
  xs.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) xs.push_back(score(sampler(rng)));
  return estimate_mean(xs);
}

namespace {

/// P[at least k successes] for independent trials with the given rates.
double poisson_binomial_upper_tail(std::span<const double> ps, std::size_t k) {
  std::vector<double> dist(ps.size() + 1, 0.0);
  dist[0] = 1.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t s = i + 1; s > 0; --s) {
      dist[s] = dist[s] * (1.0 - ps[i]) + dist[s - 1] * ps[i];
    }
    dist[0] *= 1.0 - ps[i];
  }
  double tail = 0.0;
  for (std::size_t s = k; s < dist.size(); ++s) tail += dist[s];
  return tail;
}

}  // namespace

MeanEstimate amplified_acceptance(const GraphSampler& sampler, const GraphScore& score,
                                  std::uint64_t reps, CombineRule rule,
                                  RepetitionMode mode, std::size_t n_samples, Rng& rng) {
  if (reps == 0) throw ParameterError("amplified_acceptance: reps must be positive");
  std::vector<double> xs;
  xs.reserve(n_samples);
  std::vector<double> ps;
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (mode == RepetitionMode::PerGraph) {
      xs.push_back(repeated_acceptance(std::clamp(score(sampler(rng)), 0.0, 1.0), reps, rule));
      continue;
    }
    ps.clear();
    for (std::uint64_t r = 0; r < reps; ++r) {
      ps.push_back(std::clamp(score(sampler(rng)), 0.0, 1.0));
    }
    if (rule == CombineRule::AllAccept) {
      double prod = 1.0;
      for (double p : ps) prod *= p;
      xs.push_back(prod);
    } else {
      xs.push_back(poisson_binomial_upper_tail(ps, static_cast<std::size_t>(reps / 2 + 1)));
    }
  }
  return estimate_mean(xs);
}

}  // namespace explab
