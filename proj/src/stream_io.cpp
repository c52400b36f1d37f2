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

#include "cutstream/stream_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "cutstream/errors.hpp"

namespace cutstream {

void write_stream(std::ostream& out, const EdgeStream& s) {
  out << s.n << ' ' << s.items.size() << ' ' << to_string(s.ordering) << ' '
      << (s.label ? to_string(*s.label) : std::string_view("none")) << ' ' << s.seed << '\n';
  for (const Edge& e : s.items) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

EdgeStream read_stream(std::istream& in) {
  long long n = -1;
  long long length = -1;
  std::string tag;
  std::string label;
  std::uint64_t seed = 0;
  if (!(in >> n >> length >> tag >> label >> seed) || n < 0 || length < 0) {
    throw InputError("stream: bad header");
  }
  EdgeStream s;
  s.n = static_cast<std::size_t>(n);
  s.ordering = parse_ordering(tag);
  if (label != "none") s.label = parse_answer(label);
  s.seed = seed;
  s.items.reserve(static_cast<std::size_t>(length));
  for (long long i = 0; i < length; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) {
      throw InputError("stream: expected " + std::to_string(length) + " edges, read " +
                       std::to_string(i));
    }
    if (u < 1 || v < 1 || u > n || v > n || u == v) {
      throw InputError("stream: invalid edge on line " + std::to_string(i + 2));
    }
    s.items.push_back(Edge{static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)});
  }
  std::string trailing;
  if (in >> trailing) throw InputError("stream: trailing data '" + trailing + "'");
  return s;
}

void save_stream(const std::filesystem::path& path, const EdgeStream& s) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_stream(out, s);
}

EdgeStream load_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return read_stream(in);
}

}  // namespace cutstream
