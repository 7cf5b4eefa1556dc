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

#include <iosfwd>

#include <json.hpp>

#include "explab/adversary.hpp"
#include "explab/sampler.hpp"
#include "explab/spectral.hpp"
#include "explab/sunflower.hpp"
#include "explab/verifier.hpp"
#include "explab/walk_witness.hpp"

namespace explab::lab {

using Json = nlohmann::ordered_json;

/// Transcript line: params echo, k map, injection, abort flag and coins. The
/// graph itself is stored separately in the graph file format.
Json to_json(const SampleOutcome& s);
Json to_json(const DistributionParams& p);
Json to_json(const SpectralReport& r);
Json to_json(const VerifierOutcome& v);
Json to_json(const MeanEstimate& e);
Json to_json(const FSampleOutcome& f);
Json to_json(const DeviationReport& r);
Json to_json(const ClosenessReport& r);
Json to_json(const ExtractionResult& r);
Json to_json(const RelationStats& s);
Json to_json(const LowerBound& b);
Json to_json(const TriangleReport& t);
Json to_json(const ExpansionReport& e);

/// One `{"set":[...], "witness":"0101"}` object per line; blank lines skipped.
WitnessMap read_witness_map(std::istream& in);

/// Finite doubles as numbers, the rest as null.
Json number(double x);

}  // namespace explab::lab
