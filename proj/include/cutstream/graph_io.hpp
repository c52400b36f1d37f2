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

#ifndef CUTSTREAM_GRAPH_IO_HPP_
#define CUTSTREAM_GRAPH_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "cutstream/graph.hpp"

namespace cutstream {

// Edge-list text format shared by every tool in the repo:
//
//   n m
//   u v        (m lines, 1-based, whitespace separated)
//
// Duplicate lines encode multiplicity. Writing a graph read from a file
// reproduces the file (modulo whitespace normalization).
void write_edge_list(std::ostream& out, const MultiGraph& g);
MultiGraph read_edge_list(std::istream& in);

void save_edge_list(const std::filesystem::path& path, const MultiGraph& g);
MultiGraph load_edge_list(const std::filesystem::path& path);

}  // namespace cutstream

#endif  // CUTSTREAM_GRAPH_IO_HPP_
