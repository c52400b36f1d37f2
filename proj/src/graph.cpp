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

#include "cutstream/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <string>

#include "cutstream/errors.hpp"
#include "cutstream/rng.hpp"

namespace cutstream {

BitVector bits_from_mask(std::size_t dim, std::uint64_t mask) {
  BitVector b(dim);
  for (std::size_t i = 0; i < dim && i < 64; ++i) {
    if ((mask >> i) & 1U) b.set(i);
  }
  return b;
}

std::uint64_t bits_to_mask(const BitVector& bits) {
  if (bits.size() > 64) throw InputError("bit vector wider than 64 bits");
  std::uint64_t mask = 0;
  for (std::size_t i = bits.find_first(); i != BitVector::npos; i = bits.find_next(i)) {
    mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::string_view to_string(Answer a) { return a == Answer::kYes ? "yes" : "no"; }

Answer parse_answer(std::string_view text) {
  if (text == "yes" || text == "YES") return Answer::kYes;
  if (text == "no" || text == "NO") return Answer::kNo;
  throw InputError("expected yes|no, got '" + std::string(text) + "'");
}

Bipartition random_bipartition(std::size_t n, Rng& rng) {
  Bipartition x{BitVector(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.coin()) x.side.set(i);
  }
  return x;
}

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) add_edge(e);
}

void MultiGraph::add_edge(Vertex u, Vertex v) {
  if (u >= n_ || v >= n_) {
    throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                     "} out of range for n=" + std::to_string(n_));
  }
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  edges_.push_back({u, v});
}

std::vector<std::pair<Edge, std::size_t>> MultiGraph::multiplicities() const {
  std::map<std::pair<Vertex, Vertex>, std::size_t> counts;
  for (const Edge& e : edges_) ++counts[e.key()];
  std::vector<std::pair<Edge, std::size_t>> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) out.push_back({Edge{key.first, key.second}, count});
  return out;
}

IncidenceMatrix::IncidenceMatrix(const MultiGraph& g)
    : n_(g.num_vertices()), rows_(g.edges().begin(), g.edges().end()) {}

IncidenceMatrix::IncidenceMatrix(std::size_t n, std::vector<Edge> rows)
    : n_(n), rows_(std::move(rows)) {
  for (const Edge& e : rows_) {
    if (e.u >= n_ || e.v >= n_ || e.u == e.v) throw InputError("invalid incidence row");
  }
}

std::uint64_t cut_value(const MultiGraph& g, const Bipartition& x) {
  if (x.size() != g.num_vertices()) {
    throw InputError("bipartition dimension " + std::to_string(x.size()) +
                     " != vertex count " + std::to_string(g.num_vertices()));
  }
  std::uint64_t cut = 0;
  for (const Edge& e : g.edges()) cut += x.crosses(e) ? 1 : 0;
  return cut;
}

MaxCut max_cut_exact(const MultiGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n > kMaxExactCutVertices) {
    throw SizeError("exhaustive max-cut limited to n <= " +
                    std::to_string(kMaxExactCutVertices) + ", got n=" + std::to_string(n));
  }
  if (n <= 1) return {0, Bipartition{BitVector(n)}};

  // Symmetric multiplicity matrix.
  std::vector<std::int64_t> weight(n * n, 0);
  for (const Edge& e : g.edges()) {
    ++weight[e.u * n + e.v];
    ++weight[e.v * n + e.u];
  }

  // Gray-code walk over the free vertices 1..n-1. The code integer maps
  // vertex i to bit (n-1-i), so integer order is lexicographic order on x.
  const std::size_t free = n - 1;
  std::vector<std::uint8_t> x(n, 0);
  std::int64_t cut = 0;
  std::int64_t best = 0;
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  const std::uint64_t total = std::uint64_t{1} << free;
  for (std::uint64_t step = 1; step < total; ++step) {
    const unsigned bit = static_cast<unsigned>(std::countr_zero(step));
    const std::size_t v = n - 1 - bit;
    const std::int64_t* row = &weight[v * n];
    std::int64_t delta = 0;
    for (std::size_t u = 0; u < n; ++u) delta += x[u] == x[v] ? row[u] : -row[u];
    x[v] ^= 1;
    cut += delta;
    code ^= std::uint64_t{1} << bit;
    if (cut > best || (cut == best && code < best_code)) {
      best = cut;
      best_code = code;
    }
  }

  Bipartition witness{BitVector(n)};
  for (std::size_t i = 1; i < n; ++i) {
    if ((best_code >> (n - 1 - i)) & 1U) witness.side.set(i);
  }
  return {static_cast<std::uint64_t>(best), std::move(witness)};
}

namespace {

std::vector<std::vector<std::pair<Vertex, std::size_t>>> adjacency(const MultiGraph& g) {
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(g.num_vertices());
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    adj[edges[i].u].push_back({edges[i].v, i});
    adj[edges[i].v].push_back({edges[i].u, i});
  }
  return adj;
}

// BFS coloring that keeps going past conflicts and reports, per component,
// whether an odd cycle was found.
struct Coloring {
  std::vector<std::int8_t> color;
  std::vector<std::uint32_t> label;
  std::vector<bool> odd;  // per component
};

Coloring bfs_coloring(const MultiGraph& g) {
  const std::size_t n = g.num_vertices();
  const auto adj = adjacency(g);
  Coloring c{std::vector<std::int8_t>(n, -1), std::vector<std::uint32_t>(n, 0), {}};
  std::queue<Vertex> queue;
  for (Vertex s = 0; s < n; ++s) {
    if (c.color[s] >= 0) continue;
    const auto id = static_cast<std::uint32_t>(c.odd.size());
    c.odd.push_back(false);
    c.color[s] = 0;
    c.label[s] = id;
    queue.push(s);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop();
      for (const auto& [w, idx] : adj[u]) {
        if (c.color[w] < 0) {
          c.color[w] = static_cast<std::int8_t>(1 - c.color[u]);
          c.label[w] = id;
          queue.push(w);
        } else if (c.color[w] == c.color[u]) {
          c.odd[id] = true;
        }
      }
    }
  }
  return c;
}

}  // namespace

std::optional<Bipartition> two_coloring(const MultiGraph& g) {
  const Coloring c = bfs_coloring(g);
  if (std::any_of(c.odd.begin(), c.odd.end(), [](bool b) { return b; })) return std::nullopt;
  Bipartition x{BitVector(g.num_vertices())};
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (c.color[u] == 1) x.side.set(u);
  }
  return x;
}

bool is_bipartite(const MultiGraph& g) { return two_coloring(g).has_value(); }

boost::rational<std::int64_t> beta_distance(const MultiGraph& g) {
  if (g.num_edges() == 0) throw InputError("beta_distance undefined for m = 0");
  const auto opt = static_cast<std::int64_t>(max_cut_exact(g).value);
  const auto m = static_cast<std::int64_t>(g.num_edges());
  return boost::rational<std::int64_t>(m - opt, m);
}

Components connected_components(const MultiGraph& g) {
  const Coloring c = bfs_coloring(g);
  return {c.label, c.odd.size()};
}

ComponentCensus classify_components(const MultiGraph& g) {
  const Components comps = connected_components(g);
  std::vector<std::size_t> vertices(comps.count, 0);
  std::vector<std::size_t> edges(comps.count, 0);
  for (std::size_t u = 0; u < g.num_vertices(); ++u) ++vertices[comps.label[u]];
  for (const Edge& e : g.edges()) ++edges[comps.label[e.u]];

  ComponentCensus census;
  for (std::size_t c = 0; c < comps.count; ++c) {
    if (edges[c] + 1 == vertices[c]) {
      ++census.trees;
    } else if (edges[c] == vertices[c]) {
      ++census.unicyclic;
    } else {
      ++census.complex;
    }
    census.largest = std::max(census.largest, vertices[c]);
  }
  return census;
}

std::uint64_t max_cut_pseudoforest(const MultiGraph& g) {
  const Coloring c = bfs_coloring(g);
  const std::size_t count = c.odd.size();
  std::vector<std::size_t> vertices(count, 0);
  std::vector<std::size_t> edges(count, 0);
  for (std::size_t u = 0; u < g.num_vertices(); ++u) ++vertices[c.label[u]];
  for (const Edge& e : g.edges()) ++edges[c.label[e.u]];

  std::uint64_t lost = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (edges[i] > vertices[i]) {
      throw InputError("max_cut_pseudoforest: component with " + std::to_string(vertices[i]) +
                       " vertices has " + std::to_string(edges[i]) + " edges");
    }
    // A single odd cycle costs exactly one edge.
    if (c.odd[i]) ++lost;
  }
  return g.num_edges() - lost;
}

BitVector gf2_apply(const IncidenceMatrix& m, const BitVector& x) {
  if (x.size() != m.cols()) {
    throw InputError("gf2_apply: x has dimension " + std::to_string(x.size()) + ", expected " +
                     std::to_string(m.cols()));
  }
  BitVector w(m.rows());
  for (std::size_t e = 0; e < m.rows(); ++e) {
    if (x[m.row(e).u] != x[m.row(e).v]) w.set(e);
  }
  return w;
}

BitVector gf2_apply_transpose(const IncidenceMatrix& m, const BitVector& s) {
  if (s.size() != m.rows()) {
    throw InputError("gf2_apply_transpose: s has dimension " + std::to_string(s.size()) +
                     ", expected " + std::to_string(m.rows()));
  }
  BitVector v(m.cols());
  for (std::size_t e = s.find_first(); e != BitVector::npos; e = s.find_next(e)) {
    v.flip(m.row(e).u);
    v.flip(m.row(e).v);
  }
  return v;
}

std::uint64_t gf2_apply_mask(const IncidenceMatrix& m, std::uint64_t x) {
  if (m.rows() > 64) throw SizeError("gf2_apply_mask needs r <= 64");
  std::uint64_t w = 0;
  for (std::size_t e = 0; e < m.rows(); ++e) {
    const std::uint64_t bit = ((x >> m.row(e).u) ^ (x >> m.row(e).v)) & 1U;
    w |= bit << e;
  }
  return w;
}

std::uint64_t gf2_apply_transpose_mask(const IncidenceMatrix& m, std::uint64_t s) {
  if (m.cols() > 64) throw SizeError("gf2_apply_transpose_mask needs n <= 64");
  std::uint64_t v = 0;
  while (s != 0) {
    const auto e = static_cast<std::size_t>(std::countr_zero(s));
    s &= s - 1;
    v ^= (std::uint64_t{1} << m.row(e).u) | (std::uint64_t{1} << m.row(e).v);
  }
  return v;
}

}  // namespace cutstream
