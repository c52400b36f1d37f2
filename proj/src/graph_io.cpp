// Copyright 2026 The cutstream Authors.
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

#include "cutstream/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cutstream/errors.hpp"

namespace cutstream {

void write_edge_list(std::ostream& out, const MultiGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

MultiGraph read_edge_list(std::istream& in) {
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header");
  MultiGraph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) {
      throw InputError("edge list: expected " + std::to_string(m) + " edges, read " +
                       std::to_string(i));
    }
    if (u < 1 || v < 1 || u > n || v > n) {
      throw InputError("edge list: vertex out of range on edge " + std::to_string(i + 1));
    }
    g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  }
  std::string trailing;
  if (in >> trailing) throw InputError("edge list: trailing data '" + trailing + "'");
  return g;
}

void save_edge_list(const std::filesystem::path& path, const MultiGraph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_edge_list(out, g);
}

MultiGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return read_edge_list(in);
}

}  // namespace cutstream
