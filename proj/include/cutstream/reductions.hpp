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

#ifndef CUTSTREAM_REDUCTIONS_HPP_
#define CUTSTREAM_REDUCTIONS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cutstream/distributions.hpp"
#include "cutstream/graph.hpp"
#include "cutstream/rng.hpp"
#include "cutstream/streaming.hpp"

namespace cutstream {

// Hypermatching gadget. Index i of the BHH input owns four vertices.
inline Vertex gadget_a(std::size_t i) { return static_cast<Vertex>(4 * i); }
inline Vertex gadget_b(std::size_t i) { return static_cast<Vertex>(4 * i + 1); }
inline Vertex gadget_c(std::size_t i) { return static_cast<Vertex>(4 * i + 2); }
inline Vertex gadget_d(std::size_t i) { return static_cast<Vertex>(4 * i + 3); }

struct GadgetGraph {
  std::size_t base_n = 0;
  std::size_t t = 0;
  std::vector<Edge> alice;  // E1, 3 per index
  std::vector<Edge> bob;    // E2, t per hyperedge

  std::size_t num_vertices() const { return 4 * base_n; }
  // E1 followed by E2 on 4n vertices; m = 4n.
  MultiGraph graph() const;
};

// Per index i: (a_i,b_i), (c_i,d_i), and (a_i,d_i) if x_i = 0 else (a_i,c_i).
std::vector<Edge> bhh_alice_edges(const BitVector& x);

// Per block j_1 < ... < j_t: chain edges (d_{j_{s-1}}, a_{j_s}) for s = 2..t,
// then the closing edge (d_{j_t}, a_{j_1}) if w_i = 0 or (d_{j_t}, b_{j_1})
// if w_i = 1. Each block yields one cycle of length 2t + w_i + sum_s x_{j_s}
// with the remaining (a,b) / (c,d) edges hanging off it. Blocks must be
// sorted ascending.
std::vector<Edge> bhh_bob_edges(std::size_t n, const std::vector<std::vector<Vertex>>& blocks,
                                const BitVector& w);

GadgetGraph bhh_build(const BhhInstance& inst);

// 2t + w_i + sum of x over block i.
std::size_t gadget_cycle_length(const BhhInstance& inst, std::size_t block);

// E1 then E2, each in construction order.
EdgeStream adversarial_stream(const GadgetGraph& g, const BhhInstance& inst, std::uint64_t seed);

// YES iff estimate > (1 - 1/(4t)) * 4n.
Answer bhh_decide(double maxcut_estimate, std::size_t n, std::size_t t);

// Empirical distribution of an automaton's state, kept as integer counts so
// that differences between tables estimated from equal trial counts are
// exact.
struct StateDistribution {
  std::size_t phase = 0;
  std::string tag;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;

  std::size_t num_states() const { return counts.size(); }
  Eigen::VectorXd probabilities() const;
  // (c_s + 1/S) / (T + 1): additive smoothing of 1/(T S) renormalized.
  Eigen::VectorXd smoothed() const;
};

// sum_s |a_s - b_s|; tvd = l1_count_distance / (2T). Needs equal trials.
std::uint64_t l1_count_distance(const StateDistribution& a, const StateDistribution& b);
double tvd(const StateDistribution& a, const StateDistribution& b);

// Where the YES phases take their bipartition from: a fresh uniform R per
// trial, or a fixed planted one.
using PlantedPartition = std::optional<Bipartition>;

// State counts after phases 0..k of canonical streams from one case:
// counts[j] is the table after j phases. One simulation per trial fills
// every column.
struct StateCurve {
  Answer label = Answer::kYes;
  std::uint64_t trials = 0;
  std::vector<StateDistribution> after_phase;  // j = 0..k
};

StateCurve estimate_state_curve(const Automaton& alg, const HardDistParams& params, Answer label,
                                std::size_t trials, Rng& rng, const PlantedPartition& planted = {});

StateDistribution estimate_state_distribution(const Automaton& alg, const HardDistParams& params,
                                              Answer label, std::size_t phase, std::size_t trials,
                                              Rng& rng, const PlantedPartition& planted = {});

struct InformativeIndexReport {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> l1_counts;  // j = 0..k; tvd(j) = l1_counts[j] / (2 trials)
  std::vector<double> tvd;
  double c_dist = 0.0;
  std::size_t index = 0;     // j*
  double increment = 0.0;    // tvd(j*+1) - tvd(j*)

  std::size_t phases() const { return tvd.empty() ? 0 : tvd.size() - 1; }
  // Signed integer increment l1_counts[j+1] - l1_counts[j].
  std::int64_t increment_counts(std::size_t j) const;
};

// j* is the smallest j with tvd(j+1) >= C_dist (j+1)/k, which exists since
// C_dist <= tvd(k) at j = k-1; then tvd(j*) < C_dist j*/k and so the
// increment at j* is at least C_dist/k. C_dist defaults to tvd(k).
InformativeIndexReport informative_index_from_curves(const StateCurve& yes, const StateCurve& no,
                                                     std::optional<double> c_dist = {});

InformativeIndexReport find_informative_index(const Automaton& alg, const HardDistParams& params,
                                              std::size_t trials, Rng& rng,
                                              const PlantedPartition& planted = {},
                                              std::optional<double> c_dist = {});

// S~Y = S^Y_{j*+1}; S~N = j* YES phases followed by one NO phase.
struct ReferenceTables {
  StateDistribution yes;
  StateDistribution no;
};

ReferenceTables build_reference_tables(const Automaton& alg, const HardDistParams& params,
                                       std::size_t informative_index, std::size_t trials, Rng& rng,
                                       const PlantedPartition& planted = {});

// Step 1. Alice sees only x: she simulates `phases` YES phases whose kept
// edges are those with (M_i x)_e = 1, each in uniform order, and returns the
// automaton state.
Automaton::State alice_simulate(const Automaton& alg, std::size_t n, double alpha,
                                std::size_t phases, const BitVector& x, Rng& rng);

// Step 2. Bob sees only (G, w) and Alice's state: one more phase on
// G' = {e : w_e = 1} in uniform order.
Automaton::State bob_step(const Automaton& alg, Automaton::State received, const MultiGraph& g,
                          const BitVector& w, Rng& rng);

// Step 3. YES iff the smoothed S~Y likelihood exceeds the S~N likelihood;
// ties (in particular states unseen in both tables) go to NO.
Answer bob_decide(const ReferenceTables& tables, Automaton::State s);

Answer dbhp_protocol_run(const Automaton& alg, std::size_t informative_index,
                         const BhpInstance& bhp, const ReferenceTables& tables, Rng& rng);

// Success probability of bob_decide when the state is drawn from the
// smoothed tables with equal priors, minus 1/2.
double table_advantage(const ReferenceTables& tables);

struct AdvantageEstimate {
  std::uint64_t trials = 0;
  std::uint64_t correct = 0;
  double advantage = 0.0;  // correct/trials - 1/2
  double radius = 0.0;     // 3 sigma at p = 1/2

  double lower() const { return advantage - radius; }
  double upper() const { return advantage + radius; }
};

AdvantageEstimate make_advantage_estimate(std::uint64_t correct, std::uint64_t trials);

// Equal-prior mixture: trial i draws its label and instance from
// substream(i), so a decider's estimate does not depend on other trials.
// sample(label, rng) -> instance; decide(instance, rng) -> Answer.
template <typename Decider, typename Sampler>
AdvantageEstimate advantage_estimate(Decider&& decide, Sampler&& sample, std::size_t trials,
                                     const Rng& rng) {
  if (trials == 0) throw InputError("advantage_estimate needs at least one trial");
  std::uint64_t correct = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.substream(i);
    const Answer label = trial.coin() ? Answer::kYes : Answer::kNo;
    const auto instance = sample(label, trial);
    correct += decide(instance, trial) == label;
  }
  return make_advantage_estimate(correct, trials);
}

}  // namespace cutstream

#endif  // CUTSTREAM_REDUCTIONS_HPP_
