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

#include "explab/graph_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "explab/errors.hpp"

namespace explab {
namespace {

constexpr std::array<char, 4> kMagic = {'E', 'X', 'L', 'G'};

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw ParameterError("read_graph: truncated input");
  }
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_graph(std::ostream& out, const ColoredGraph& g) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kGraphFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(g.num_vertices()));
  put_u32(out, static_cast<std::uint32_t>(g.degree()));
  for (Vertex v : g.table()) put_u32(out, v);
}

ColoredGraph read_graph(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) {
    throw ParameterError("read_graph: bad magic");
  }
  const std::uint32_t version = get_u32(in);
  if (version != kGraphFormatVersion) {
    throw ParameterError("read_graph: unsupported version " + std::to_string(version));
  }
  const std::uint32_t n = get_u32(in);
  const std::uint32_t d = get_u32(in);
  std::vector<Vertex> table(static_cast<std::size_t>(n) * d);
  for (auto& v : table) v = get_u32(in);
  return ColoredGraph(n, d, std::move(table));
}

void write_graph_csv(std::ostream& out, const ColoredGraph& g) {
  for (Vertex j = 0; j < g.num_vertices(); ++j) {
    for (Color c = 0; c < g.degree(); ++c) {
      out << j << ',' << c << ',' << g.target(j, c) << '\n';
    }
  }
}

ColoredGraph read_graph_csv(std::istream& in) {
  struct Entry {
    std::uint64_t j, c, v;
  };
  std::vector<Entry> entries;
  std::uint64_t n = 0, d = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream fields(line);
    Entry e{};
    std::string rest;
    if (!(fields >> e.j >> e.c >> e.v) || (fields >> rest)) {
      throw ParameterError("read_graph_csv: malformed line " + std::to_string(lineno));
    }
    n = std::max({n, e.j + 1, e.v + 1});
    d = std::max(d, e.c + 1);
    entries.push_back(e);
  }
  if (entries.empty()) throw ParameterError("read_graph_csv: no entries");
  if (entries.size() != n * d) {
    throw ParameterError("read_graph_csv: expected " + std::to_string(n * d) +
                         " entries, found " + std::to_string(entries.size()));
  }
  std::vector<Vertex> table(n * d);
  std::vector<bool> seen(n * d, false);
  for (const auto& e : entries) {
    const auto slot = e.j * d + e.c;
    if (seen[slot]) {
      throw ParameterError("read_graph_csv: duplicate slot (" + std::to_string(e.j) +
                           ", " + std::to_string(e.c) + ")");
    }
    seen[slot] = true;
    table[slot] = static_cast<Vertex>(e.v);
  }
  return ColoredGraph(n, d, std::move(table));
}

void save_graph(const std::string& path, const ColoredGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("save_graph: cannot open " + path);
  write_graph(out, g);
}

ColoredGraph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("load_graph: cannot open " + path);
  std::array<char, 4> head{};
  in.read(head.data(), 4);
  const bool binary = in.gcount() == 4 && head == kMagic;
  in.clear();
  in.seekg(0);
  return binary ? read_graph(in) : read_graph_csv(in);
}

}  // namespace explab
