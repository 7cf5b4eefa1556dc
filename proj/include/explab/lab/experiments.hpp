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

#include <string>
#include <vector>

#include "explab/lab/config.hpp"
#include "explab/lab/report.hpp"

namespace explab::lab {

/// Registered experiment ids, in a fixed order.
const std::vector<std::string>& experiment_ids();

/// Runs the experiment named by cfg.id(). Throws ConfigError for an unknown
/// id or missing configuration; check failures are reported, not thrown.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace explab::lab
