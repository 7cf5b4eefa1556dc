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

#include "explab/lab/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <string>

#include "explab/errors.hpp"

namespace explab::lab {

Json number(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

Json to_json(const DistributionParams& p) {
  return {{"N", p.n}, {"M", p.m},       {"ell", p.ell}, {"d", p.d},
          {"gamma", p.gamma}, {"zeta", p.zeta()}, {"z", p.z()}, {"F", p.f}};
}

Json to_json(const SampleOutcome& s) {
  return {{"N", s.graph.num_vertices()},
          {"d", s.graph.degree()},
          {"aborted", s.aborted},
          {"k_map", s.k_map},
          {"injection", s.injection},
          {"coins", {{"key", s.coins.key}, {"begin", s.coins.begin}, {"end", s.coins.end}}}};
}

Json to_json(const SpectralReport& r) {
  Json gaps = Json::array();
  for (double g : r.component_gaps) gaps.push_back(number(g));
  return {{"lambda2", r.lambda2()},
          {"method", r.estimate.method},
          {"converged", r.estimate.converged},
          {"iterations", r.estimate.iterations},
          {"residual", r.estimate.residual},
          {"connected", r.connected()},
          {"spectral_gap", number(r.spectral_gap())},
          {"component_sizes", r.component_sizes},
          {"component_gaps", gaps}};
}

Json to_json(const VerifierOutcome& v) {
  return {{"p_step2", v.p_step2},
          {"p_accept", v.p_accept},
          {"overlap_uniform", v.overlap_uniform}};
}

Json to_json(const MeanEstimate& e) {
  return {{"mean", e.mean}, {"stderr", e.std_error}, {"n", e.n}};
}

Json to_json(const FSampleOutcome& f) {
  return {{"aborted", f.aborted},
          {"f_prime", f.f_prime},
          {"start", f.start},
          {"retained", f.retained}};
}

Json to_json(const DeviationReport& r) {
  return {{"trials", r.trials},
          {"aborts", r.aborts},
          {"K", r.component_size},
          {"alpha", r.alpha},
          {"delta", r.delta},
          {"rK_delta", r.rk_delta},
          {"regime_ok", r.regime_ok},
          {"envelope", number(r.envelope)},
          {"max_vertex_deviation", r.max_vertex_deviation},
          {"max_pair_deviation", r.max_pair_deviation},
          {"vertex_allowance", r.vertex_allowance},
          {"pair_allowance", r.pair_allowance},
          {"consistent_with_uniform", r.consistent_with_uniform()},
          {"within_envelope", r.within_envelope()}};
}

Json to_json(const ClosenessReport& r) {
  Json features = Json::array();
  for (const auto& f : r.features) {
    features.push_back({{"feature", f.feature},
                        {"tvd", f.tvd},
                        {"ci", {f.tvd_ci.lo, f.tvd_ci.hi}},
                        {"p_value", f.p_value}});
  }
  return {{"n_samples", r.n_samples},
          {"m", r.m},
          {"d1_undefined", r.d1_undefined},
          {"d1_aborts", r.d1_aborts},
          {"d2_aborts", r.d2_aborts},
          {"features", features},
          {"d1_block0_weight", to_json(r.d1_block0_weight)},
          {"d2_block0_weight", to_json(r.d2_block0_weight)},
          {"d1_block0_expected", r.d1_block0_expected},
          {"d2_block0_expected", r.d2_block0_expected}};
}

Json to_json(const ExtractionResult& r) {
  return {{"witness", r.witness},
          {"popular_count", r.popular_count},
          {"core", r.sunflower.core},
          {"family_size", r.sunflower.sets.size()},
          {"sets", r.sunflower.sets},
          {"mu", r.sunflower.mu.str()},
          {"zeta", r.sunflower.zeta},
          {"trace", r.trace},
          {"pivots", r.pivots}};
}

Json to_json(const RelationStats& s) {
  return {{"m_lo", s.m_lo},   {"m_hi", s.m_hi},   {"mp_lo", s.mp_lo},
          {"mp_hi", s.mp_hi}, {"l_max", s.l_max}, {"pairs", s.pairs},
          {"degenerate", s.degenerate}};
}

Json to_json(const LowerBound& b) { return {{"value", b.value}, {"vacuous", b.vacuous}}; }

Json to_json(const TriangleReport& t) {
  return {{"count", t.count}, {"per_component", t.per_component}};
}

Json to_json(const ExpansionReport& e) {
  return {{"vertex_expansion", e.vertex_expansion},
          {"edge_expansion", e.edge_expansion},
          {"conductance", e.conductance}};
}

WitnessMap read_witness_map(std::istream& in) {
  WitnessMap wm;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      auto set = j.at("set").get<Subset>();
      std::sort(set.begin(), set.end());
      wm.sets.push_back(std::move(set));
      wm.witnesses.push_back(j.at("witness").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw ParameterError("witness map line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  wm.check();
  return wm;
}

}  // namespace explab::lab
