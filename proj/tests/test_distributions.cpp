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


#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "cutstream/distributions.hpp"
#include "cutstream/stream_io.hpp"

using namespace cutstream;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased sample variance
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(xs.size() - 1);
  return m;
}

double chi_square(const std::vector<double>& observed, double expected_each) {
  double stat = 0.0;
  for (double o : observed) stat += (o - expected_each) * (o - expected_each) / expected_each;
  return stat;
}

// Generous upper quantile for a chi-square with d degrees of freedom.
double chi_square_cap(double d) { return d + 5.0 * std::sqrt(2.0 * d) + 10.0; }

// Oracle: labeled connected graphs on k vertices with exactly k edges.
std::uint64_t brute_unicyclic(std::size_t k) {
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) pairs.push_back({u, v});
  }
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    std::vector<Vertex> parent(k);
    for (Vertex v = 0; v < k; ++v) parent[v] = v;
    auto find = [&](Vertex v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::size_t merges = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (((mask >> i) & 1U) == 0) continue;
      const Vertex a = find(pairs[i].u);
      const Vertex b = find(pairs[i].v);
      if (a != b) {
        parent[a] = b;
        ++merges;
      }
    }
    count += merges == k - 1;
  }
  return count;
}

}  // namespace

TEST_CASE("HardDistParams derives k by ceiling and validates ranges") {
  CHECK(HardDistParams::make(16, 0.3, 0.5).k == 178);  // 8 / 0.045 = 177.7
  CHECK(HardDistParams::make(16, 0.5, 0.5, 9.0).k == 72);  // exact quotient stays put
  CHECK(HardDistParams::make(16, 0.3, 0.5, 8.0, 5).k == 5);
  CHECK_THROWS_AS(HardDistParams::make(1, 0.3, 0.5), InputError);
  CHECK_THROWS_AS(HardDistParams::make(16, 0.0, 0.5), InputError);
  CHECK_THROWS_AS(HardDistParams::make(16, 0.3, 1.0), InputError);
  CHECK_THROWS_AS(HardDistParams::make(10, 0.3, 0.05), InputError);
  CHECK_THROWS_AS(HardDistParams::make(16, 0.3, 0.5, 0.0), InputError);
}

TEST_CASE("ordering tags round trip") {
  for (Ordering o : {Ordering::kCanonical, Ordering::kUniform, Ordering::kIid, Ordering::kAdversarial}) {
    CHECK(parse_ordering(to_string(o)) == o);
  }
  CHECK_THROWS_AS(parse_ordering("sorted"), InputError);
}

TEST_CASE("sample_gnp extremes") {
  Rng rng(1);
  CHECK(sample_gnp(30, 0.0, rng).num_edges() == 0);
  const MultiGraph full = sample_gnp(30, 30.0, rng);
  CHECK(full.num_edges() == 30 * 29 / 2);
  CHECK(full.multiplicities().size() == full.num_edges());
  CHECK_THROWS_AS(sample_gnp(30, 31.0, rng), InputError);
}

TEST_CASE("sample_gnp edge count is binomial") {
  const std::size_t n = 10000;
  const double alpha = 0.5;
  const double pairs = 0.5 * n * (n - 1.0);
  const double p = alpha / n;
  const double mean = pairs * p;  // 2499.75
  const double var = pairs * p * (1.0 - p);
  std::vector<double> counts;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    counts.push_back(static_cast<double>(sample_gnp(n, alpha, rng).num_edges()));
  }
  const Moments m = moments(counts);
  CHECK(std::abs(mean - 2499.75) < 1e-9);
  CHECK(std::abs(m.mean - mean) <= 3.0 * std::sqrt(var / 1000.0));
  // Sample variance of 1000 draws has relative standard error near sqrt(2/999).
  CHECK(std::abs(m.var / var - 1.0) <= 4.0 * std::sqrt(2.0 / 999.0));
}

TEST_CASE("sample_gnp pairs are uniform") {
  // Each of the 10 pairs of K5 appears with probability p; counts per pair are binomial.
  const std::size_t n = 5;
  const std::size_t trials = 20000;
  std::map<std::pair<Vertex, Vertex>, double> hits;
  Rng rng(4);
  for (std::size_t t = 0; t < trials; ++t) {
    const MultiGraph g = sample_gnp(n, 1.5, rng);
    for (const Edge& e : g.edges()) hits[e.key()] += 1.0;
  }
  REQUIRE(hits.size() == 10);
  const double expect = trials * 0.3;
  double stat = 0.0;
  for (const auto& [key, c] : hits) stat += (c - expect) * (c - expect) / (expect * 0.7);
  CHECK(stat < chi_square_cap(10));
}

TEST_CASE("YES instances are cut completely by the hidden bipartition") {
  const auto params = HardDistParams::make(200, 0.3, 0.2, 8.0, 40);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const PhasedInstance inst = sample_hard(params, Answer::kYes, rng);
    REQUIRE(inst.hidden.has_value());
    CHECK(cut_value(inst.combined, *inst.hidden) == inst.combined.num_edges());
    const auto coloring = two_coloring(inst.combined);
    REQUIRE(coloring.has_value());
    // On each component the coloring equals R or its complement.
    const Components comps = connected_components(inst.combined);
    std::map<std::uint32_t, bool> relation;
    for (const Edge& e : inst.combined.edges()) {
      for (Vertex v : {e.u, e.v}) {
        const bool same = coloring->side[v] == inst.hidden->side[v];
        const auto [it, fresh] = relation.emplace(comps.label[v], same);
        CHECK(it->second == same);
      }
    }
  }
}

TEST_CASE("phases are simple and bounded") {
  const auto params = HardDistParams::make(400, 0.3, 0.25, 8.0, 60);
  for (Answer label : {Answer::kYes, Answer::kNo}) {
    Rng rng(label == Answer::kYes ? 10 : 11);
    const PhasedInstance inst = sample_hard(params, label, rng);
    CHECK(inst.phases.size() == params.k);
    CHECK(inst.hidden.has_value() == (label == Answer::kYes));
    std::size_t total = 0;
    for (const auto& phase : inst.phases) {
      std::set<std::pair<Vertex, Vertex>> distinct;
      for (const Edge& e : phase) distinct.insert(e.key());
      CHECK(distinct.size() == phase.size());
      CHECK(static_cast<double>(phase.size()) <= params.alpha * params.n);
      total += phase.size();
    }
    CHECK(total == inst.combined.num_edges());
    for (const auto& [edge, count] : inst.combined.multiplicities()) CHECK(count <= params.k);
  }
}

TEST_CASE("canonical_stream keeps phase segments") {
  const auto params = HardDistParams::make(100, 0.3, 0.5, 8.0, 6);
  Rng rng(2);
  const PhasedInstance inst = sample_hard(params, Answer::kNo, rng);
  const EdgeStream s = canonical_stream(inst, rng);
  CHECK(s.ordering == Ordering::kCanonical);
  REQUIRE(s.items.size() == inst.combined.num_edges());
  std::size_t offset = 0;
  for (const auto& phase : inst.phases) {
    std::multiset<Edge> want(phase.begin(), phase.end());
    std::multiset<Edge> got(s.items.begin() + static_cast<std::ptrdiff_t>(offset),
                            s.items.begin() + static_cast<std::ptrdiff_t>(offset + phase.size()));
    CHECK(want == got);
    offset += phase.size();
  }
}

TEST_CASE("uniform_stream orders a three-edge union uniformly") {
  PhasedInstance inst;
  inst.params = HardDistParams::make(4, 0.3, 0.5, 8.0, 1);
  inst.phases = {{{0, 1}, {1, 2}, {2, 3}}};
  inst.combined = MultiGraph(4, inst.phases[0]);
  std::map<std::vector<Edge>, double> seen;
  Rng rng(6);
  for (int t = 0; t < 6000; ++t) ++seen[uniform_stream(inst, rng).items];
  REQUIRE(seen.size() == 6);
  std::vector<double> counts;
  for (const auto& [order, c] : seen) counts.push_back(c);
  // 5 degrees of freedom; 20.5 is the 0.999 quantile.
  CHECK(chi_square(counts, 1000.0) < 20.5);

  PhasedInstance single;
  single.params = inst.params;
  single.phases = {{{2, 3}}};
  single.combined = MultiGraph(4, single.phases[0]);
  CHECK(uniform_stream(single, rng).items == std::vector<Edge>{{2, 3}});
}

TEST_CASE("multiplicity_profile histogram") {
  const MultiGraph g(4, {{0, 1}, {1, 0}, {1, 2}, {0, 1}, {2, 3}, {3, 2}});
  const MultiplicityProfile prof = multiplicity_profile(g);
  CHECK(prof.edges == 6);
  CHECK(prof.histogram == std::vector<std::uint64_t>{0, 1, 1, 1});
  CHECK(prof.distinct() == 3);
  CHECK(prof.with_multiplicity_at_least(2) == 2);
  CHECK(prof.with_multiplicity_at_least(3) == 1);
}

TEST_CASE("sampled multiplicity profile matches explicit instances") {
  const auto params = HardDistParams::make(200, 0.3, 0.2);
  REQUIRE(params.k == 445);
  for (Answer label : {Answer::kYes, Answer::kNo}) {
    std::vector<double> direct_m, direct_dup, fast_m, fast_dup;
    Rng rng(label == Answer::kYes ? 30 : 31);
    for (int t = 0; t < 300; ++t) {
      const MultiplicityProfile a = multiplicity_profile(sample_hard(params, label, rng).combined);
      direct_m.push_back(static_cast<double>(a.edges));
      direct_dup.push_back(static_cast<double>(a.with_multiplicity_at_least(2)));
      const MultiplicityProfile b = sample_multiplicity_profile(params, label, rng);
      fast_m.push_back(static_cast<double>(b.edges));
      fast_dup.push_back(static_cast<double>(b.with_multiplicity_at_least(2)));
    }
    for (const auto& [x, y] : {std::pair{&direct_m, &fast_m}, std::pair{&direct_dup, &fast_dup}}) {
      const Moments mx = moments(*x);
      const Moments my = moments(*y);
      const double se = std::sqrt((mx.var + my.var) / 300.0);
      CHECK(std::abs(mx.mean - my.mean) <= 4.0 * se);
    }
  }
}

TEST_CASE("collision_fraction degenerate profiles") {
  Rng rng(8);
  MultiplicityProfile simple;
  simple.edges = 50;
  simple.histogram = {0, 50};
  CHECK(collision_fraction(simple, 10, 200, rng) == 0.0);
  MultiplicityProfile pair;
  pair.edges = 2;
  pair.histogram = {0, 0, 1};
  CHECK(collision_fraction(pair, 2, 200, rng) == 1.0);
  CHECK_THROWS_AS(collision_fraction(pair, 2, 0, rng), InputError);
}

TEST_CASE("collision probability of one duplicate pair") {
  // Two copies among m positions land within distance w with probability
  // 1 - (m - w)(m - w - 1) / (m (m - 1)).
  const std::uint64_t m = 40;
  const std::size_t w = 5;
  MultiplicityProfile prof;
  prof.edges = m;
  prof.histogram = {0, m - 2, 1};
  const double exact = 1.0 - static_cast<double>((m - w) * (m - w - 1)) / static_cast<double>(m * (m - 1));
  Rng rng(12);
  const std::size_t trials = 40000;
  const double got = collision_fraction(prof, w, trials, rng);
  CHECK(std::abs(got - exact) <= 4.0 * std::sqrt(exact * (1.0 - exact) / trials));
}

TEST_CASE("iid_stream draws uniformly from the edge set") {
  Rng rng(13);
  const MultiGraph one(5, {{1, 3}});
  for (const Edge& e : iid_stream(one, 50, rng).items) CHECK(e == Edge{1, 3});
  CHECK_THROWS_AS(iid_stream(MultiGraph(3), 5, rng), InputError);

  const auto params = HardDistParams::make(100, 0.3, 0.5);
  const std::size_t length = 100000;
  const EdgeStream s = iid_stream(params, Answer::kNo, length, rng);
  CHECK(s.items.size() == length);
  std::map<std::pair<Vertex, Vertex>, double> freq;
  for (const Edge& e : s.items) freq[e.key()] += 1.0;
  std::vector<double> counts;
  for (Vertex u = 0; u < 100; ++u) {
    for (Vertex v = u + 1; v < 100; ++v) counts.push_back(freq[{u, v}]);
  }
  CHECK(freq.size() == counts.size());
  const double expect = static_cast<double>(length) / static_cast<double>(counts.size());
  CHECK(chi_square(counts, expect) < chi_square_cap(static_cast<double>(counts.size() - 1)));
}

TEST_CASE("iid YES streams are bipartite") {
  const auto params = HardDistParams::make(60, 0.3, 0.5);
  Rng rng(14);
  const EdgeStream s = iid_stream(params, Answer::kYes, 5000, rng);
  CHECK(is_bipartite(MultiGraph(60, s.items)));
}

TEST_CASE("iid plan phase sizes have the stated means") {
  const auto params = HardDistParams::make(100, 0.3, 0.5, 8.0, 400);
  Rng rng(15);
  const IidPhasePlan no = sample_iid_plan(params, Answer::kNo, rng);
  CHECK(no.phase_sizes.size() == 400);
  // Thinning C(n,2) by 1/2 then by alpha/n: mean alpha (n - 1) / 4 per phase.
  const double mean = 0.5 * 99.0 / 4.0;
  const double var = 4950.0 * 0.5 * 0.005 * (1.0 - 0.5 * 0.005);
  CHECK(std::abs(static_cast<double>(no.total()) / 400.0 - mean) <= 4.0 * std::sqrt(var / 400.0));
  const auto phases = iid_phases(100, no, rng);
  for (std::size_t i = 0; i < phases.size(); ++i) CHECK(phases[i].size() == no.phase_sizes[i]);
}

TEST_CASE("BHH instances") {
  Rng rng(16);
  for (Answer label : {Answer::kYes, Answer::kNo}) {
    const BhhInstance inst = sample_bhh(24, 3, label, rng);
    CHECK(inst.blocks.size() == 8);
    std::vector<int> covered(24, 0);
    for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
      bool parity = false;
      for (Vertex v : inst.blocks[i]) {
        ++covered[v];
        parity ^= inst.x[v];
      }
      CHECK(parity == (label == Answer::kYes ? inst.w[i] : !inst.w[i]));
    }
    CHECK(std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }));
  }
  const BhhInstance matching = sample_bhh(12, 2, Answer::kYes, rng);
  for (const auto& b : matching.blocks) CHECK(b.size() == 2);
  CHECK_THROWS_AS(sample_bhh(10, 3, Answer::kYes, rng), InputError);
}

TEST_CASE("BHP instances") {
  Rng rng(17);
  const BhpInstance zero = sample_bhp(40, 0.9, Answer::kYes, BitVector(40), rng);
  CHECK(zero.w.none());
  CHECK(zero.w.size() == zero.graph.num_edges());
  for (int t = 0; t < 20; ++t) {
    const BhpInstance yes = sample_bhp(40, 0.9, Answer::kYes, rng);
    CHECK(yes.w.count() == cut_value(yes.graph, Bipartition{yes.x}));
  }
  CHECK_THROWS_AS(sample_bhp(4, 0.5, Answer::kYes, BitVector(5), rng), InputError);

  // alpha = n gives K4 with r = 6; NO labels are uniform on {0,1}^6.
  std::vector<double> counts(64, 0.0);
  const BitVector x(4);
  for (int t = 0; t < 10000; ++t) {
    const BhpInstance no = sample_bhp(4, 4.0, Answer::kNo, x, rng);
    REQUIRE(no.w.size() == 6);
    counts[bits_to_mask(no.w)] += 1.0;
  }
  CHECK(chi_square(counts, 10000.0 / 64.0) < chi_square_cap(63));
}

TEST_CASE("chernoff_tail closed forms") {
  CHECK(chernoff_tail(100, 0, Tail::kLower) == 1.0);
  CHECK(chernoff_tail(100, 20, Tail::kLower) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(chernoff_tail(100, 20, Tail::kUpper) == doctest::Approx(std::exp(-400.0 / 240.0)).epsilon(1e-12));
  CHECK_THROWS_AS(chernoff_tail(-1, 1, Tail::kUpper), InputError);
}

TEST_CASE("unicyclic graph counts match enumeration") {
  CHECK(unicyclic_graph_count(3) == 1);
  CHECK(unicyclic_graph_count(4) == 15);
  CHECK(unicyclic_graph_count(5) == 222);
  for (std::size_t k = 3; k <= 6; ++k) CHECK(unicyclic_graph_count(k) == brute_unicyclic(k));
  CHECK_THROWS_AS(unicyclic_graph_count(17), SizeError);
}

TEST_CASE("expected_cycle_count matches the binomial-coefficient sum") {
  for (std::size_t n : {10, 30, 80}) {
    for (double alpha : {0.1, 0.5, 0.9}) {
      const double p = alpha / static_cast<double>(n);
      double direct = 0.0;
      for (std::size_t j = 3; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        const double log_choose = std::lgamma(n + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(n - jd + 1.0);
        direct += std::exp(log_choose + std::lgamma(jd) - std::log(2.0) + jd * std::log(p));
      }
      CHECK(expected_cycle_count(n, alpha) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("stream file round trip") {
  EdgeStream s;
  s.n = 5;
  s.ordering = Ordering::kIid;
  s.label = Answer::kNo;
  s.seed = 99;
  s.items = {{0, 4}, {2, 1}, {0, 4}};
  std::stringstream buf;
  write_stream(buf, s);
  CHECK(buf.str() == "5 3 iid no 99\n1 5\n3 2\n1 5\n");
  const EdgeStream back = read_stream(buf);
  CHECK(back.n == s.n);
  CHECK(back.ordering == s.ordering);
  CHECK(back.label == s.label);
  CHECK(back.seed == s.seed);
  CHECK(back.items == s.items);

  std::istringstream unlabeled("3 1 uniform none 0\n1 3\n");
  CHECK_FALSE(read_stream(unlabeled).label.has_value());
  std::istringstream bad_tag("3 1 sideways none 0\n1 3\n");
  CHECK_THROWS_AS(read_stream(bad_tag), InputError);
  std::istringstream loop("3 1 iid none 0\n2 2\n");
  CHECK_THROWS_AS(read_stream(loop), InputError);
}
