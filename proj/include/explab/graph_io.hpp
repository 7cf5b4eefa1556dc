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
#include <string>

#include "explab/graph.hpp"

namespace explab {

/// Binary layout, little-endian: "EXLG", u32 version, u32 N, u32 d, then N*d
/// u32 neighbor entries in row-major (vertex, color) order.
inline constexpr std::uint32_t kGraphFormatVersion = 1;

void write_graph(std::ostream& out, const ColoredGraph& g);
ColoredGraph read_graph(std::istream& in);

/// Text form: one `j,color,neighbor` line per slot, any order, '#' comments.
/// N and d are inferred from the largest indices seen; every slot must appear
/// exactly once.
void write_graph_csv(std::ostream& out, const ColoredGraph& g);
ColoredGraph read_graph_csv(std::istream& in);

void save_graph(const std::string& path, const ColoredGraph& g);
/// Detects the binary magic, otherwise parses CSV. Throws ParameterError on
/// malformed input; the result is not validated.
ColoredGraph load_graph(const std::string& path);

}  // namespace explab
