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

#include "explab/lab/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "explab/errors.hpp"

namespace explab::lab {
namespace {

const char* const kKnownSections[] = {"experiment", "params", "options", "thresholds",
                                      "inputs"};

std::uint64_t parse_unsigned(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') {
    throw ConfigError(what + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ConfigError(what + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
  std::vector<std::size_t> out;
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::string tok;
  while (in >> tok) out.push_back(parse_unsigned(tok, what));
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  cfg.source_ = source;
  try {
    boost::property_tree::ini_parser::read_ini(in, cfg.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : cfg.tree_) {
    if (std::find(std::begin(kKnownSections), std::end(kKnownSections), section) ==
        std::end(kKnownSections)) {
      throw ConfigError(source + ": unknown section [" + section + "]");
    }
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(source + ": key '" + section + "' outside any section");
    }
  }
  const auto need = [&](const std::string& key) {
    auto v = cfg.raw("experiment", key);
    if (!v) throw ConfigError(source + ": [experiment] " + key + " is required");
    return *v;
  };
  cfg.id_ = need("id");
  const auto version = parse_unsigned(need("version"), "[experiment] version");
  if (version != kConfigVersion) {
    throw ConfigError(source + ": unsupported config version " + std::to_string(version));
  }
  cfg.seed_ = parse_unsigned(need("seed"), "[experiment] seed");
  cfg.n_samples_ = parse_unsigned(need("n_samples"), "[experiment] n_samples");
  if (cfg.tree_.get_child_optional("inputs")) {
    const auto base = std::filesystem::path(source).parent_path();
    for (const auto& [key, node] : cfg.tree_.get_child("inputs")) {
      if (key.size() > 5 && key.compare(key.size() - 5, 5, "_file") == 0) {
        const auto path = base / node.data();
        if (!std::filesystem::exists(path)) {
          throw ConfigError(source + ": input file '" + path.string() + "' does not exist");
        }
      }
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse(in, path);
}

std::optional<std::string> ExperimentConfig::raw(const std::string& section,
                                                 const std::string& key) const {
  const auto node = tree_.get_child_optional(boost::property_tree::ptree::path_type(
      section + "\x1f" + key, '\x1f'));
  if (!node) return std::nullopt;
  return node->data();
}

DistributionParams ExperimentConfig::params() const {
  const auto n = raw("params", "n");
  if (!n) throw ConfigError(source_ + ": [params] n is required");
  return params_for(parse_unsigned(*n, "[params] n"));
}

DistributionParams ExperimentConfig::params_for(std::size_t n) const {
  const auto preset = raw("params", "preset");
  DistributionParams p;
  try {
    if (preset) {
      p = DistributionParams::preset(*preset, n);
    } else {
      p.n = n;
    }
    const auto d = raw("params", "d");
    const auto ell = raw("params", "ell");
    const auto gamma = raw("params", "gamma");
    const auto m = raw("params", "m");
    if (d || ell || gamma) {
      p = DistributionParams::with_gamma(
          n, d ? parse_unsigned(*d, "[params] d") : p.d,
          ell ? parse_unsigned(*ell, "[params] ell") : p.ell,
          gamma ? parse_double(*gamma, "[params] gamma") : p.gamma);
    }
    if (m) p.m = parse_unsigned(*m, "[params] m");
    if (const auto f = raw("params", "f")) {
      for (auto v : parse_list(*f, "[params] f")) p.f.push_back(static_cast<Vertex>(v));
    }
    p.check();
  } catch (const ParameterError& e) {
    throw ConfigError(source_ + ": " + e.what());
  }
  return p;
}

double ExperimentConfig::threshold(const std::string& key) const {
  const auto v = raw("thresholds", key);
  if (!v) throw ConfigError(source_ + ": [thresholds] " + key + " is required");
  return parse_double(*v, "[thresholds] " + key);
}

std::string ExperimentConfig::option(const std::string& key,
                                     const std::string& fallback) const {
  return raw("options", key).value_or(fallback);
}

double ExperimentConfig::option(const std::string& key, double fallback) const {
  const auto v = raw("options", key);
  return v ? parse_double(*v, "[options] " + key) : fallback;
}

std::size_t ExperimentConfig::option(const std::string& key, std::size_t fallback) const {
  const auto v = raw("options", key);
  return v ? parse_unsigned(*v, "[options] " + key) : fallback;
}

std::vector<std::size_t> ExperimentConfig::option_list(
    const std::string& key, std::vector<std::size_t> fallback) const {
  const auto v = raw("options", key);
  return v ? parse_list(*v, "[options] " + key) : fallback;
}

std::string ExperimentConfig::input(const std::string& key) const {
  const auto v = raw("inputs", key);
  if (!v) throw ConfigError(source_ + ": [inputs] " + key + " is required");
  if (key.size() > 5 && key.compare(key.size() - 5, 5, "_file") == 0) {
    return (std::filesystem::path(source_).parent_path() / *v).string();
  }
  return *v;
}

double ExperimentConfig::input_number(const std::string& key) const {
  return parse_double(input(key), "[inputs] " + key);
}

std::map<std::string, std::map<std::string, std::string>> ExperimentConfig::sections() const {
  std::map<std::string, std::map<std::string, std::string>> out;
  for (const auto& [section, body] : tree_) {
    auto& dst = out[section];
    for (const auto& [key, node] : body) dst[key] = node.data();
  }
  return out;
}

}  // namespace explab::lab
