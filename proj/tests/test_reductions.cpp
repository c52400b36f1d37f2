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
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"

#include "cutstream/reductions.hpp"

using namespace cutstream;

namespace {

std::set<std::pair<Vertex, Vertex>> keys(const std::vector<Edge>& edges) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : edges) out.insert(e.key());
  return out;
}

// Oracle: peel degree-one vertices; what survives in each component is its cycle.
std::map<std::uint32_t, std::size_t> cycle_lengths(const MultiGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::vector<std::size_t>> incident(n);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    ++degree[edges[i].u];
    ++degree[edges[i].v];
    incident[edges[i].u].push_back(i);
    incident[edges[i].v].push_back(i);
  }
  std::vector<bool> removed(edges.size(), false);
  std::vector<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push_back(v);
  }
  while (!leaves.empty()) {
    const Vertex v = leaves.back();
    leaves.pop_back();
    for (std::size_t i : incident[v]) {
      if (removed[i]) continue;
      removed[i] = true;
      --degree[v];
      const Vertex w = edges[i].other(v);
      if (--degree[w] == 1) leaves.push_back(w);
    }
  }
  const Components comps = connected_components(g);
  std::map<std::uint32_t, std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!removed[i]) ++out[comps.label[edges[i].u]];
  }
  return out;
}

StateCurve hand_curve(Answer label, std::uint64_t trials, const std::vector<std::vector<std::uint64_t>>& counts) {
  StateCurve c;
  c.label = label;
  c.trials = trials;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    StateDistribution d;
    d.phase = j;
    d.counts = counts[j];
    d.trials = trials;
    c.after_phase.push_back(d);
  }
  return c;
}

StateDistribution table_of(std::vector<std::uint64_t> counts) {
  StateDistribution d;
  d.counts = std::move(counts);
  d.trials = std::accumulate(d.counts.begin(), d.counts.end(), std::uint64_t{0});
  return d;
}

}  // namespace

TEST_CASE("Alice's gadget edges") {
  const std::vector<Edge> zero = bhh_alice_edges(bits_from_mask(1, 0));
  CHECK(keys(zero) == keys({{0, 1}, {2, 3}, {0, 3}}));
  const std::vector<Edge> one = bhh_alice_edges(bits_from_mask(1, 1));
  CHECK(keys(one) == keys({{0, 1}, {2, 3}, {0, 2}}));
  Rng rng(1);
  const BitVector x = random_bipartition(20, rng).side;
  CHECK(bhh_alice_edges(x).size() == 60);
}

TEST_CASE("Bob's gadget edges close each hyperedge chain") {
  const std::vector<std::vector<Vertex>> block = {{0, 1}};
  // Chain edge (d_0, a_1), then the closing edge back to block 0.
  CHECK(keys(bhh_bob_edges(2, block, bits_from_mask(1, 0))) ==
        keys({{gadget_d(0), gadget_a(1)}, {gadget_d(1), gadget_a(0)}}));
  CHECK(keys(bhh_bob_edges(2, block, bits_from_mask(1, 1))) ==
        keys({{gadget_d(0), gadget_a(1)}, {gadget_d(1), gadget_b(0)}}));
  Rng rng(2);
  const BhhInstance inst = sample_bhh(24, 4, Answer::kNo, rng);
  CHECK(bhh_bob_edges(24, inst.blocks, inst.w).size() == 24);
  CHECK_THROWS_AS(bhh_bob_edges(2, {{1, 0}}, bits_from_mask(1, 0)), InputError);
  CHECK_THROWS_AS(bhh_bob_edges(2, block, BitVector(2)), InputError);
}

TEST_CASE("gadget components are single cycles with the predicted length") {
  Rng rng(3);
  for (std::size_t t : {1, 2, 3, 5}) {
    for (Answer label : {Answer::kYes, Answer::kNo}) {
      const BhhInstance inst = sample_bhh(10 * t, t, label, rng);
      const GadgetGraph gadget = bhh_build(inst);
      const MultiGraph g = gadget.graph();
      CHECK(g.num_edges() == 4 * inst.n);
      const ComponentCensus census = classify_components(g);
      CHECK(census.unicyclic == inst.n / t);
      CHECK(census.trees == 0);
      CHECK(census.complex == 0);
      CHECK(census.largest == 4 * t);

      const Components comps = connected_components(g);
      const auto lengths = cycle_lengths(g);
      for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
        const std::uint32_t comp = comps.label[gadget_a(inst.blocks[i].front())];
        CHECK(lengths.at(comp) == gadget_cycle_length(inst, i));
        std::size_t parity = inst.w[i] ? 1 : 0;
        for (Vertex v : inst.blocks[i]) parity += inst.x[v] ? 1 : 0;
        CHECK((lengths.at(comp) % 2 == 0) == (parity % 2 == 0));
      }

      const std::uint64_t expected = label == Answer::kYes ? 4 * inst.n : 4 * inst.n - inst.n / t;
      CHECK(max_cut_pseudoforest(g) == expected);
      CHECK(is_bipartite(g) == (label == Answer::kYes));
    }
  }
}

TEST_CASE("gadget max cut agrees with exhaustive search at small n") {
  Rng rng(4);
  for (int trial = 0; trial < 6; ++trial) {
    for (Answer label : {Answer::kYes, Answer::kNo}) {
      const std::size_t t = trial % 2 == 0 ? 1 : 3;
      const BhhInstance inst = sample_bhh(6, t, label, rng);
      const MultiGraph g = bhh_build(inst).graph();
      REQUIRE(g.num_vertices() == 24);
      CHECK(max_cut_exact(g).value == (label == Answer::kYes ? 24 : 24 - 6 / t));
    }
  }
}

TEST_CASE("adversarial stream lists Alice's edges first") {
  Rng rng(5);
  const BhhInstance inst = sample_bhh(8, 2, Answer::kYes, rng);
  const GadgetGraph gadget = bhh_build(inst);
  const EdgeStream s = adversarial_stream(gadget, inst, 5);
  CHECK(s.ordering == Ordering::kAdversarial);
  CHECK(s.n == 32);
  REQUIRE(s.items.size() == 32);
  CHECK(std::equal(gadget.alice.begin(), gadget.alice.end(), s.items.begin()));
}

TEST_CASE("bhh_decide threshold") {
  CHECK(bhh_decide(32.0, 8, 2) == Answer::kYes);
  for (std::size_t t : {2, 3, 4, 6}) {
    const std::size_t n = 12 * t;
    CHECK(bhh_decide(4.0 * n - static_cast<double>(n / t), n, t) == Answer::kNo);
  }
  // (1 - 1/12) * 48 = 44 sits exactly on the boundary.
  CHECK(bhh_decide(44.0, 12, 3) == Answer::kNo);
  CHECK(bhh_decide(44.5, 12, 3) == Answer::kYes);
}

TEST_CASE("exact gadget decider always wins") {
  const auto sample = [](Answer label, Rng& rng) { return sample_bhh(12, 3, label, rng); };
  const auto decide = [](const BhhInstance& inst, Rng&) {
    const double est = static_cast<double>(max_cut_pseudoforest(bhh_build(inst).graph()));
    return bhh_decide(est, inst.n, inst.t);
  };
  const AdvantageEstimate a = advantage_estimate(decide, sample, 500, Rng(6));
  CHECK(a.advantage == 0.5);
  CHECK(a.correct == 500);

  const auto guess = [](const BhhInstance&, Rng& rng) { return rng.coin() ? Answer::kYes : Answer::kNo; };
  const AdvantageEstimate g = advantage_estimate(guess, sample, 4000, Rng(7));
  CHECK(g.lower() <= 0.0);
  CHECK(g.upper() >= 0.0);
  CHECK(g.radius == doctest::Approx(1.5 / std::sqrt(4000.0)));
}

TEST_CASE("state tables: probabilities, smoothing, distances") {
  const StateDistribution a = table_of({6, 2, 0, 2});
  const StateDistribution b = table_of({1, 4, 5, 0});
  CHECK(a.probabilities().sum() == doctest::Approx(1.0));
  CHECK(a.smoothed().sum() == doctest::Approx(1.0));
  CHECK(a.smoothed()[2] == doctest::Approx(0.25 / 11.0));
  CHECK(l1_count_distance(a, b) == 5 + 2 + 5 + 2);
  CHECK(tvd(a, b) == doctest::Approx(14.0 / 20.0));
  CHECK_THROWS_AS(l1_count_distance(a, table_of({1, 1, 1})), InputError);
}

TEST_CASE("bob_decide picks the likelier table and breaks ties toward NO") {
  ReferenceTables tables{table_of({5, 3, 2}), table_of({3, 3, 4})};
  CHECK(bob_decide(tables, 0) == Answer::kYes);
  CHECK(bob_decide(tables, 1) == Answer::kNo);
  CHECK(bob_decide(tables, 2) == Answer::kNo);
  CHECK_THROWS_AS(bob_decide(tables, 3), InputError);
}

TEST_CASE("table advantage equals half the smoothed total variation") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    // Equal trial counts: 200 draws into six states for each table.
    std::vector<std::uint64_t> ya(6, 0), na(6, 0);
    for (int i = 0; i < 200; ++i) {
      ++ya[rng.below(6)];
      ++na[rng.below(3)];
    }
    ReferenceTables tables{table_of(ya), table_of(na)};
    REQUIRE(tables.yes.trials == tables.no.trials);
    const double half_l1 = 0.5 * (tables.yes.smoothed() - tables.no.smoothed()).cwiseAbs().sum();
    CHECK(table_advantage(tables) == doctest::Approx(0.5 * half_l1).epsilon(1e-12));
  }
}

TEST_CASE("state distribution at phase zero is a point mass") {
  const auto params = HardDistParams::make(16, 0.3, 0.5, 8.0, 6);
  const Automaton count = saturating_edge_count_automaton(15);
  Rng rng(9);
  const StateDistribution d = estimate_state_distribution(count, params, Answer::kYes, 0, 100, rng);
  CHECK(d.counts[0] == 100);
  CHECK_THROWS_AS(estimate_state_distribution(count, params, Answer::kYes, 7, 10, rng), InputError);
}

TEST_CASE("state distribution estimates are consistent") {
  const auto params = HardDistParams::make(16, 0.3, 0.5, 8.0, 6);
  const Automaton mod = edge_count_mod_automaton(5);
  Rng a(10);
  Rng b(11);
  const StateDistribution da = estimate_state_distribution(mod, params, Answer::kNo, 3, 100000, a);
  const StateDistribution db = estimate_state_distribution(mod, params, Answer::kNo, 3, 100000, b);
  CHECK(tvd(da, db) <= 0.02);
}

TEST_CASE("edge-count automaton tracks the phase edge totals") {
  const auto params = HardDistParams::make(16, 0.3, 0.5, 8.0, 5);
  const std::size_t cap = 7;
  const Automaton count = edge_count_mod_automaton(cap);
  const std::size_t trials = 20000;
  Rng rng(12);
  const StateDistribution est = estimate_state_distribution(count, params, Answer::kYes, 4, trials, rng);
  // Independent simulation from full instances.
  StateDistribution direct;
  direct.counts.assign(cap, 0);
  direct.trials = trials;
  Rng other(13);
  for (std::size_t i = 0; i < trials; ++i) {
    const PhasedInstance inst = sample_hard(params, Answer::kYes, other);
    std::size_t total = 0;
    for (std::size_t j = 0; j < 4; ++j) total += inst.phases[j].size();
    ++direct.counts[total % cap];
  }
  CHECK(tvd(est, direct) <= 0.03);
}

TEST_CASE("informative index of a blind algorithm is zero") {
  const auto params = HardDistParams::make(16, 0.3, 0.5, 8.0, 5);
  Rng rng(14);
  const InformativeIndexReport r = find_informative_index(identity_automaton(), params, 200, rng);
  CHECK(r.phases() == 5);
  for (double v : r.tvd) CHECK(v == 0.0);
  CHECK(r.increment == 0.0);
}

TEST_CASE("a phase-one distinguisher has index zero") {
  const StateCurve yes = hand_curve(Answer::kYes, 10, {{10, 0}, {10, 0}, {10, 0}, {10, 0}});
  const StateCurve no = hand_curve(Answer::kNo, 10, {{10, 0}, {0, 10}, {0, 10}, {0, 10}});
  const InformativeIndexReport r = informative_index_from_curves(yes, no);
  CHECK(r.index == 0);
  CHECK(r.increment == 1.0);
  CHECK(r.c_dist == 1.0);

  // Planted monochromatic counting at alpha = 0.9 separates almost surely after one phase.
  const auto params = HardDistParams::make(40, 0.3, 0.9, 8.0, 4);
  Rng rng(15);
  const Bipartition x0 = random_bipartition(40, rng);
  const InformativeIndexReport p =
      find_informative_index(monochromatic_count_automaton(x0, 255), params, 500, rng, x0);
  CHECK(p.index == 0);
  CHECK(p.increment == doctest::Approx(p.tvd.back()).epsilon(0.02));
}

TEST_CASE("informative index increments telescope and clear the average") {
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng.below(8);
    const std::uint64_t trials = 30;
    std::vector<std::vector<std::uint64_t>> yc(k + 1), nc(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
      yc[j].assign(3, 0);
      nc[j].assign(3, 0);
      for (std::uint64_t i = 0; i < trials; ++i) {
        ++yc[j][j == 0 ? 0 : rng.below(3)];
        ++nc[j][j == 0 ? 0 : rng.below(3)];
      }
    }
    const InformativeIndexReport r =
        informative_index_from_curves(hand_curve(Answer::kYes, trials, yc), hand_curve(Answer::kNo, trials, nc));
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < k; ++j) sum += r.increment_counts(j);
    CHECK(sum == static_cast<std::int64_t>(r.l1_counts[k]) - static_cast<std::int64_t>(r.l1_counts[0]));
    CHECK(r.index < k);
    // Delta >= C/k with C = tvd(k), exactly in integer counts.
    CHECK(r.increment_counts(r.index) * static_cast<std::int64_t>(k) >= static_cast<std::int64_t>(r.l1_counts[k]));
  }
}

TEST_CASE("an unreachable explicit constant falls back to the largest increment") {
  const StateCurve yes = hand_curve(Answer::kYes, 10, {{10, 0}, {8, 2}, {5, 5}, {5, 5}});
  const StateCurve no = hand_curve(Answer::kNo, 10, {{10, 0}, {10, 0}, {10, 0}, {10, 0}});
  const InformativeIndexReport r = informative_index_from_curves(yes, no, 0.9);
  CHECK(r.index == 1);
  CHECK(r.increment == doctest::Approx(0.3));
}

TEST_CASE("Alice keeps only crossing edges and Bob only selected edges") {
  Rng rng(17);
  const Bipartition x = random_bipartition(30, rng);
  const Automaton mono = monochromatic_count_automaton(x, 255);
  for (int t = 0; t < 20; ++t) CHECK(alice_simulate(mono, 30, 0.9, 6, x.side, rng) == 0);
  CHECK_THROWS_AS(alice_simulate(mono, 30, 0.9, 1, BitVector(29), rng), InputError);

  const Automaton count = saturating_edge_count_automaton(255);
  for (int t = 0; t < 20; ++t) {
    const BhpInstance bhp = sample_bhp(30, 0.9, t % 2 == 0 ? Answer::kYes : Answer::kNo, rng);
    CHECK(bob_step(count, 3, bhp.graph, bhp.w, rng) == 3 + bhp.w.count());
  }
}

TEST_CASE("protocol advantage matches the reference tables") {
  const auto params = HardDistParams::make(16, 0.3, 0.5, 8.0, 4);
  Rng rng(18);
  const Bipartition x0 = random_bipartition(16, rng);
  const Automaton alg = monochromatic_count_automaton(x0, 255);
  const InformativeIndexReport report = find_informative_index(alg, params, 1000, rng, x0);
  const ReferenceTables tables = build_reference_tables(alg, params, report.index, 20000, rng, x0);
  const double predicted = table_advantage(tables);
  CHECK(predicted > 0.05);
  const auto sample = [&](Answer label, Rng& r) { return sample_bhp(16, 0.5, label, x0.side, r); };
  const auto decide = [&](const BhpInstance& bhp, Rng& r) {
    return dbhp_protocol_run(alg, report.index, bhp, tables, r);
  };
  const AdvantageEstimate a = advantage_estimate(decide, sample, 10000, Rng(19));
  CHECK(std::abs(a.advantage - predicted) <= a.radius + 0.02);
}
