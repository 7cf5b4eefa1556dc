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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "explab/sampler.hpp"

namespace explab::lab {

inline constexpr int kConfigVersion = 1;

/// INI experiment description.
///
///   [experiment]  id, version, seed (mandatory), n_samples
///   [params]      preset (desk | asymptotic) and overrides n, d, ell, gamma,
///                 m, f (space separated vertices)
///   [options]     experiment-specific knobs
///   [thresholds]  every pass/fail threshold the experiment applies
///   [inputs]      literal inputs; keys ending in `_file` are paths relative
///                 to the config file and must exist
class ExperimentConfig {
 public:
  static ExperimentConfig parse(std::istream& in, const std::string& source);
  static ExperimentConfig load(const std::string& path);

  const std::string& id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t n_samples() const { return n_samples_; }
  const std::string& source() const { return source_; }

  /// Distribution parameters from [params], after `check()`.
  DistributionParams params() const;
  /// Same, with `n` replaced (used by experiments sweeping N).
  DistributionParams params_for(std::size_t n) const;

  /// Required threshold; throws ConfigError when absent.
  double threshold(const std::string& key) const;

  std::string option(const std::string& key, const std::string& fallback) const;
  double option(const std::string& key, double fallback) const;
  std::size_t option(const std::string& key, std::size_t fallback) const;
  std::vector<std::size_t> option_list(const std::string& key,
                                       std::vector<std::size_t> fallback) const;
  /// Required [inputs] entry.
  std::string input(const std::string& key) const;
  double input_number(const std::string& key) const;

  /// Section -> key -> value, as written in the file.
  std::map<std::string, std::map<std::string, std::string>> sections() const;

 private:
  std::string source_;
  std::string id_;
  std::uint64_t seed_ = 0;
  std::size_t n_samples_ = 0;
  boost::property_tree::ptree tree_;

  std::optional<std::string> raw(const std::string& section, const std::string& key) const;
};

}  // namespace explab::lab
