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

#ifndef CUTSTREAM_GRAPH_HPP_
#define CUTSTREAM_GRAPH_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

namespace cutstream {

class Rng;

// Vertices are 0-based in memory; the text formats are 1-based.
using Vertex = std::uint32_t;

// Element of {0,1}^d. XOR is the group operation and count() the weight.
using BitVector = boost::dynamic_bitset<std::uint64_t>;

BitVector bits_from_mask(std::size_t dim, std::uint64_t mask);
// Requires dim <= 64.
std::uint64_t bits_to_mask(const BitVector& bits);

enum class Answer : std::uint8_t { kYes, kNo };

std::string_view to_string(Answer a);
Answer parse_answer(std::string_view text);
inline Answer flip(Answer a) { return a == Answer::kYes ? Answer::kNo : Answer::kYes; }

// Unordered vertex pair. The stored orientation is kept so that edge lists
// round-trip byte for byte; comparisons that mean "same pair" go through
// key().
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  std::pair<Vertex, Vertex> key() const { return u < v ? std::pair{u, v} : std::pair{v, u}; }
  bool touches(Vertex x) const { return u == x || v == x; }
  Vertex other(Vertex x) const { return u == x ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline bool same_pair(const Edge& a, const Edge& b) { return a.key() == b.key(); }

// x_u = 0 puts u on side P, x_u = 1 on side Q.
struct Bipartition {
  BitVector side;

  std::size_t size() const { return side.size(); }
  bool crosses(const Edge& e) const { return side[e.u] != side[e.v]; }
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

// Uniform over {0,1}^n.
Bipartition random_bipartition(std::size_t n, Rng& rng);

class MultiGraph {
 public:
  explicit MultiGraph(std::size_t n = 0) : n_(n) {}
  // Throws InputError on out-of-range endpoints or self-loops.
  MultiGraph(std::size_t n, std::vector<Edge> edges);

  void add_edge(Vertex u, Vertex v);
  void add_edge(const Edge& e) { add_edge(e.u, e.v); }

  std::size_t num_vertices() const { return n_; }
  // m, counting multiplicity.
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  // Distinct pairs (u < v) in sorted order with their multiplicities.
  std::vector<std::pair<Edge, std::size_t>> multiplicities() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

// Edge incidence matrix M in {0,1}^{r x n}. Row e is the e-th edge of the
// graph in insertion order; coordinates of w and s in {0,1}^r refer to
// this order.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const MultiGraph& g);
  IncidenceMatrix(std::size_t n, std::vector<Edge> rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return n_; }
  const Edge& row(std::size_t e) const { return rows_[e]; }
  std::span<const Edge> edges() const { return rows_; }

 private:
  std::size_t n_;
  std::vector<Edge> rows_;
};

std::uint64_t cut_value(const MultiGraph& g, const Bipartition& x);

inline constexpr std::size_t kMaxExactCutVertices = 24;

struct MaxCut {
  std::uint64_t value = 0;
  Bipartition witness;
};

// Exhaustive search over the 2^{n-1} bipartitions with vertex 0 on side P.
// Among optimal bipartitions the lexicographically smallest x is returned.
// Throws SizeError when n > kMaxExactCutVertices.
MaxCut max_cut_exact(const MultiGraph& g);

// BFS 2-coloring; every component's smallest vertex goes to side P.
std::optional<Bipartition> two_coloring(const MultiGraph& g);
bool is_bipartite(const MultiGraph& g);

// 1 - OPT/m. Throws InputError for m = 0 and SizeError above the
// exhaustive budget.
boost::rational<std::int64_t> beta_distance(const MultiGraph& g);

struct Components {
  std::vector<std::uint32_t> label;  // component id per vertex
  std::size_t count = 0;
};

Components connected_components(const MultiGraph& g);

struct ComponentCensus {
  std::size_t trees = 0;
  std::size_t unicyclic = 0;
  std::size_t complex = 0;
  std::size_t largest = 0;  // vertex count of the largest component

  std::size_t total() const { return trees + unicyclic + complex; }
  friend bool operator==(const ComponentCensus&, const ComponentCensus&) = default;
};

// Parallel edges count as distinct edges.
ComponentCensus classify_components(const MultiGraph& g);

// Max-cut of a graph whose components each contain at most one cycle:
// m minus the number of components whose cycle is odd. Works at any n.
// Throws InputError if some component is complex.
std::uint64_t max_cut_pseudoforest(const MultiGraph& g);

// (Mx)_e = x_u xor x_v.
BitVector gf2_apply(const IncidenceMatrix& m, const BitVector& x);
// (M^T s)_u = parity of u's degree in the edges selected by s.
BitVector gf2_apply_transpose(const IncidenceMatrix& m, const BitVector& s);

// Word-sized variants used by the enumeration oracles (r, n <= 64).
std::uint64_t gf2_apply_mask(const IncidenceMatrix& m, std::uint64_t x);
std::uint64_t gf2_apply_transpose_mask(const IncidenceMatrix& m, std::uint64_t s);

}  // namespace cutstream

#endif  // CUTSTREAM_GRAPH_HPP_
