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

#include "cutstream/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cutstream/errors.hpp"
#include "cutstream/probability.hpp"

namespace cutstream {
namespace {

Automaton::State feed(const Automaton& alg, Automaton::State s, std::vector<Edge>& phase, Rng& rng) {
  std::shuffle(phase.begin(), phase.end(), rng);
  for (const Edge& e : phase) s = alg.step(s, e);
  return s;
}

StateDistribution empty_table(const Automaton& alg, std::size_t phase, std::string tag) {
  StateDistribution d;
  d.phase = phase;
  d.tag = std::move(tag);
  d.counts.assign(alg.num_states(), 0);
  return d;
}

std::optional<Bipartition> trial_partition(const HardDistParams& params, Answer label,
                                           const PlantedPartition& planted, Rng& rng) {
  if (label == Answer::kNo) return std::nullopt;
  if (planted) {
    if (planted->size() != params.n) throw InputError("planted partition has the wrong dimension");
    return planted;
  }
  return random_bipartition(params.n, rng);
}

}  // namespace

MultiGraph GadgetGraph::graph() const {
  MultiGraph g(num_vertices());
  for (const Edge& e : alice) g.add_edge(e);
  for (const Edge& e : bob) g.add_edge(e);
  return g;
}

std::vector<Edge> bhh_alice_edges(const BitVector& x) {
  std::vector<Edge> edges;
  edges.reserve(3 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    edges.push_back({gadget_a(i), gadget_b(i)});
    edges.push_back({gadget_c(i), gadget_d(i)});
    edges.push_back({gadget_a(i), x[i] ? gadget_c(i) : gadget_d(i)});
  }
  return edges;
}

std::vector<Edge> bhh_bob_edges(std::size_t n, const std::vector<std::vector<Vertex>>& blocks,
                                const BitVector& w) {
  if (w.size() != blocks.size()) throw InputError("w must have one bit per hyperedge");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& block = blocks[i];
    if (block.empty()) throw InputError("empty hyperedge");
    if (!std::is_sorted(block.begin(), block.end())) throw InputError("hyperedge blocks must be sorted");
    if (block.back() >= n) throw InputError("hyperedge vertex out of range");
    for (std::size_t s = 1; s < block.size(); ++s) edges.push_back({gadget_d(block[s - 1]), gadget_a(block[s])});
    edges.push_back({gadget_d(block.back()), w[i] ? gadget_b(block.front()) : gadget_a(block.front())});
  }
  return edges;
}

GadgetGraph bhh_build(const BhhInstance& inst) {
  GadgetGraph g;
  g.base_n = inst.n;
  g.t = inst.t;
  g.alice = bhh_alice_edges(inst.x);
  g.bob = bhh_bob_edges(inst.n, inst.blocks, inst.w);
  return g;
}

std::size_t gadget_cycle_length(const BhhInstance& inst, std::size_t block) {
  std::size_t len = 2 * inst.t + (inst.w[block] ? 1 : 0);
  for (Vertex v : inst.blocks.at(block)) len += inst.x[v] ? 1 : 0;
  return len;
}

EdgeStream adversarial_stream(const GadgetGraph& g, const BhhInstance& inst, std::uint64_t seed) {
  EdgeStream s;
  s.n = g.num_vertices();
  s.ordering = Ordering::kAdversarial;
  s.label = inst.label;
  s.seed = seed;
  s.items = g.alice;
  s.items.insert(s.items.end(), g.bob.begin(), g.bob.end());
  return s;
}

Answer bhh_decide(double maxcut_estimate, std::size_t n, std::size_t t) {
  if (t == 0) throw InputError("t must be positive");
  // estimate > (1 - 1/(4t)) 4n  <=>  t * estimate > 4nt - n
  const double lhs = static_cast<double>(t) * maxcut_estimate;
  const double rhs = 4.0 * static_cast<double>(n) * static_cast<double>(t) - static_cast<double>(n);
  return lhs > rhs ? Answer::kYes : Answer::kNo;
}

Eigen::VectorXd StateDistribution::probabilities() const {
  Eigen::VectorXd p(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    p[static_cast<Eigen::Index>(s)] = trials == 0 ? 0.0 : static_cast<double>(counts[s]) / static_cast<double>(trials);
  }
  return p;
}

Eigen::VectorXd StateDistribution::smoothed() const {
  const double pseudo = 1.0 / static_cast<double>(counts.size());
  Eigen::VectorXd p(counts.size());
  for (std::size_t s = 0; s < counts.size(); ++s) {
    p[static_cast<Eigen::Index>(s)] = (static_cast<double>(counts[s]) + pseudo) / (static_cast<double>(trials) + 1.0);
  }
  return p;
}

std::uint64_t l1_count_distance(const StateDistribution& a, const StateDistribution& b) {
  if (a.counts.size() != b.counts.size()) throw InputError("state tables differ in size");
  if (a.trials != b.trials) throw InputError("state tables come from different trial counts");
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < a.counts.size(); ++s) {
    total += a.counts[s] > b.counts[s] ? a.counts[s] - b.counts[s] : b.counts[s] - a.counts[s];
  }
  return total;
}

double tvd(const StateDistribution& a, const StateDistribution& b) {
  if (a.counts.size() != b.counts.size()) throw InputError("state tables differ in size");
  return tvd(a.probabilities(), b.probabilities());
}

StateCurve estimate_state_curve(const Automaton& alg, const HardDistParams& params, Answer label,
                                std::size_t trials, Rng& rng, const PlantedPartition& planted) {
  if (trials == 0) throw InputError("state curve needs at least one trial");
  StateCurve curve;
  curve.label = label;
  curve.trials = trials;
  const std::string tag(to_string(label));
  for (std::size_t j = 0; j <= params.k; ++j) {
    curve.after_phase.push_back(empty_table(alg, j, tag));
    curve.after_phase.back().trials = trials;
  }
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.substream(i);
    const auto hidden = trial_partition(params, label, planted, trial);
    Automaton::State s = 0;
    ++curve.after_phase[0].counts[s];
    for (std::size_t j = 1; j <= params.k; ++j) {
      auto phase = sample_phase(params, hidden ? &*hidden : nullptr, trial);
      s = feed(alg, s, phase, trial);
      ++curve.after_phase[j].counts[s];
    }
  }
  return curve;
}

StateDistribution estimate_state_distribution(const Automaton& alg, const HardDistParams& params,
                                              Answer label, std::size_t phase, std::size_t trials,
                                              Rng& rng, const PlantedPartition& planted) {
  if (trials == 0) throw InputError("state distribution needs at least one trial");
  if (phase > params.k) throw InputError("phase index exceeds k");
  StateDistribution d = empty_table(alg, phase, std::string(to_string(label)));
  d.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.substream(i);
    const auto hidden = trial_partition(params, label, planted, trial);
    Automaton::State s = 0;
    for (std::size_t j = 0; j < phase; ++j) {
      auto edges = sample_phase(params, hidden ? &*hidden : nullptr, trial);
      s = feed(alg, s, edges, trial);
    }
    ++d.counts[s];
  }
  return d;
}

std::int64_t InformativeIndexReport::increment_counts(std::size_t j) const {
  return static_cast<std::int64_t>(l1_counts.at(j + 1)) - static_cast<std::int64_t>(l1_counts.at(j));
}

InformativeIndexReport informative_index_from_curves(const StateCurve& yes, const StateCurve& no,
                                                     std::optional<double> c_dist) {
  if (yes.after_phase.size() != no.after_phase.size() || yes.after_phase.size() < 2) {
    throw InputError("state curves must cover the same k >= 1 phases");
  }
  InformativeIndexReport r;
  r.trials = yes.trials;
  for (std::size_t j = 0; j < yes.after_phase.size(); ++j) {
    r.l1_counts.push_back(l1_count_distance(yes.after_phase[j], no.after_phase[j]));
    r.tvd.push_back(static_cast<double>(r.l1_counts.back()) / (2.0 * static_cast<double>(r.trials)));
  }
  const std::size_t k = r.phases();
  r.c_dist = c_dist.value_or(r.tvd[k]);
  std::optional<std::size_t> chosen;
  for (std::size_t j = 0; j < k && !chosen; ++j) {
    const bool hit = c_dist ? r.tvd[j + 1] * static_cast<double>(k) >= r.c_dist * static_cast<double>(j + 1)
                            : r.l1_counts[j + 1] * k >= r.l1_counts[k] * (j + 1);
    if (hit) chosen = j;
  }
  if (!chosen) {
    // Only reachable when an explicit C_dist exceeds tvd(k): fall back to
    // the largest increment.
    std::size_t best = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (r.increment_counts(j) > r.increment_counts(best)) best = j;
    }
    chosen = best;
  }
  r.index = *chosen;
  r.increment = static_cast<double>(r.increment_counts(r.index)) / (2.0 * static_cast<double>(r.trials));
  return r;
}

InformativeIndexReport find_informative_index(const Automaton& alg, const HardDistParams& params,
                                              std::size_t trials, Rng& rng,
                                              const PlantedPartition& planted,
                                              std::optional<double> c_dist) {
  Rng yes_rng = rng.named("curve-yes");
  Rng no_rng = rng.named("curve-no");
  const StateCurve yes = estimate_state_curve(alg, params, Answer::kYes, trials, yes_rng, planted);
  const StateCurve no = estimate_state_curve(alg, params, Answer::kNo, trials, no_rng, planted);
  return informative_index_from_curves(yes, no, c_dist);
}

ReferenceTables build_reference_tables(const Automaton& alg, const HardDistParams& params,
                                       std::size_t informative_index, std::size_t trials, Rng& rng,
                                       const PlantedPartition& planted) {
  if (trials == 0) throw InputError("reference tables need at least one trial");
  if (informative_index >= params.k) throw InputError("informative index must be below k");
  ReferenceTables tables{empty_table(alg, informative_index + 1, "yes"),
                         empty_table(alg, informative_index + 1, "yes^j no")};
  tables.yes.trials = trials;
  tables.no.trials = trials;
  const Rng yes_rng = rng.named("table-yes");
  const Rng no_rng = rng.named("table-no");
  for (std::size_t i = 0; i < trials; ++i) {
    for (const bool final_yes : {true, false}) {
      Rng trial = (final_yes ? yes_rng : no_rng).substream(i);
      const auto hidden = trial_partition(params, Answer::kYes, planted, trial);
      Automaton::State s = 0;
      for (std::size_t j = 0; j < informative_index; ++j) {
        auto edges = sample_phase(params, &*hidden, trial);
        s = feed(alg, s, edges, trial);
      }
      auto last = sample_phase(params, final_yes ? &*hidden : nullptr, trial);
      s = feed(alg, s, last, trial);
      ++(final_yes ? tables.yes : tables.no).counts[s];
    }
  }
  return tables;
}

Automaton::State alice_simulate(const Automaton& alg, std::size_t n, double alpha,
                                std::size_t phases, const BitVector& x, Rng& rng) {
  if (x.size() != n) throw InputError("Alice's input has the wrong dimension");
  const Bipartition side{x};
  Automaton::State s = 0;
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < phases; ++i) {
    kept.clear();
    for_each_gnp_edge(n, alpha / static_cast<double>(n), rng, [&](const Edge& e) {
      if (side.crosses(e)) kept.push_back(e);
    });
    s = feed(alg, s, kept, rng);
  }
  return s;
}

Automaton::State bob_step(const Automaton& alg, Automaton::State received, const MultiGraph& g,
                          const BitVector& w, Rng& rng) {
  if (w.size() != g.num_edges()) throw InputError("w must have one bit per edge");
  std::vector<Edge> kept;
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (w[e]) kept.push_back(edges[e]);
  }
  return feed(alg, received, kept, rng);
}

Answer bob_decide(const ReferenceTables& tables, Automaton::State s) {
  if (s >= tables.yes.num_states() || s >= tables.no.num_states()) throw InputError("state out of range");
  const double py = (static_cast<double>(tables.yes.counts[s]) + 1.0 / static_cast<double>(tables.yes.num_states())) /
                    (static_cast<double>(tables.yes.trials) + 1.0);
  const double pn = (static_cast<double>(tables.no.counts[s]) + 1.0 / static_cast<double>(tables.no.num_states())) /
                    (static_cast<double>(tables.no.trials) + 1.0);
  return py > pn ? Answer::kYes : Answer::kNo;
}

Answer dbhp_protocol_run(const Automaton& alg, std::size_t informative_index,
                         const BhpInstance& bhp, const ReferenceTables& tables, Rng& rng) {
  const Automaton::State sent = alice_simulate(alg, bhp.n, bhp.alpha, informative_index, bhp.x, rng);
  const Automaton::State final_state = bob_step(alg, sent, bhp.graph, bhp.w, rng);
  return bob_decide(tables, final_state);
}

double table_advantage(const ReferenceTables& tables) {
  const Eigen::VectorXd py = tables.yes.smoothed();
  const Eigen::VectorXd pn = tables.no.smoothed();
  double success = 0.0;
  for (Eigen::Index s = 0; s < py.size(); ++s) {
    success += bob_decide(tables, static_cast<Automaton::State>(s)) == Answer::kYes ? py[s] : pn[s];
  }
  return success / 2.0 - 0.5;
}

AdvantageEstimate make_advantage_estimate(std::uint64_t correct, std::uint64_t trials) {
  if (trials == 0) throw InputError("advantage estimate needs at least one trial");
  AdvantageEstimate a;
  a.trials = trials;
  a.correct = correct;
  a.advantage = static_cast<double>(correct) / static_cast<double>(trials) - 0.5;
  a.radius = 1.5 / std::sqrt(static_cast<double>(trials));
  return a;
}

}  // namespace cutstream
