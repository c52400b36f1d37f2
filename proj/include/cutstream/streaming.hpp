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

#ifndef CUTSTREAM_STREAMING_HPP_
#define CUTSTREAM_STREAMING_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cutstream/graph.hpp"
#include "cutstream/rng.hpp"

namespace cutstream {

// A max-cut estimate or a YES/NO verdict.
using StreamOutput = std::variant<double, Answer>;

std::string to_string(const StreamOutput& out);

// Single-pass algorithm over an edge stream. The state is whatever
// serialize() writes; state_bits() must equal serialize().size() and is
// what the memory accounting measures.
class StreamAlgorithm {
 public:
  virtual ~StreamAlgorithm() = default;

  virtual std::string name() const = 0;
  // Parameter echo, "key=value" pairs joined by ';'.
  virtual std::string params() const = 0;

  virtual void reset(std::size_t n) = 0;
  virtual void process(const Edge& e) = 0;
  virtual StreamOutput finish() const = 0;

  virtual BitVector serialize() const = 0;
  virtual std::size_t state_bits() const { return serialize().size(); }
};

struct RunResult {
  StreamOutput output;
  std::size_t peak_bits = 0;
  bool budget_exceeded = false;
};

// reset(n), then process every edge in order. Peak bits include the initial
// state. Exceeding the budget is recorded, not enforced.
RunResult run(StreamAlgorithm& alg, std::size_t n, std::span<const Edge> stream,
              std::optional<std::size_t> budget_bits = std::nullopt);

// Bits needed to write any value in [0, bound]; at least 1.
std::size_t bits_for(std::uint64_t bound);

// Counts m and outputs m/2.
class EdgeCount final : public StreamAlgorithm {
 public:
  std::string name() const override { return "edge-count"; }
  std::string params() const override { return ""; }
  void reset(std::size_t) override { m_ = 0; }
  void process(const Edge&) override { ++m_; }
  StreamOutput finish() const override { return static_cast<double>(m_) / 2.0; }
  BitVector serialize() const override;
  std::size_t state_bits() const override { return bits_for(m_); }

  std::uint64_t count() const { return m_; }

 private:
  std::uint64_t m_ = 0;
};

// W walkers start at uniform vertices. An arriving edge advances every
// walker (with steps left) sitting at one of its endpoints to the other
// endpoint. Each walker records the vertices it reached after an even and
// after an odd number of steps; the verdict is NO iff some walker's two sets
// meet, which requires a closed walk of odd length.
class RandomWalkTester final : public StreamAlgorithm {
 public:
  // walkers = 0 or length = 0 selects ceil(sqrt n) and ceil(ln^2 n) at reset.
  RandomWalkTester(std::size_t walkers, std::size_t length, std::uint64_t seed);

  std::string name() const override { return "random-walk"; }
  std::string params() const override;
  void reset(std::size_t n) override;
  void process(const Edge& e) override;
  StreamOutput finish() const override;
  BitVector serialize() const override;
  std::size_t state_bits() const override;

  std::size_t walkers() const { return walkers_.size(); }
  std::size_t length() const { return length_; }

 private:
  struct Walker {
    Vertex at = 0;
    std::uint32_t steps = 0;
    std::vector<Vertex> even;  // sorted
    std::vector<Vertex> odd;   // sorted
  };

  std::size_t requested_walkers_;
  std::size_t requested_length_;
  std::uint64_t seed_;
  std::size_t n_ = 0;
  std::size_t length_ = 0;
  bool odd_evidence_ = false;
  std::vector<Walker> walkers_;
};

// Algorithm R reservoir of s edges; outputs the exact max-cut of the
// reservoir scaled by m/|reservoir|.
class ReservoirMaxCut final : public StreamAlgorithm {
 public:
  // Throws InputError for s = 0.
  ReservoirMaxCut(std::size_t sample, std::uint64_t seed);

  std::string name() const override { return "reservoir"; }
  std::string params() const override;
  // Throws SizeError when a reservoir could touch more vertices than the
  // exhaustive search handles, i.e. min(n, 2s) > kMaxExactCutVertices.
  void reset(std::size_t n) override;
  void process(const Edge& e) override;
  StreamOutput finish() const override;
  BitVector serialize() const override;
  std::size_t state_bits() const override;

  std::span<const Edge> reservoir() const { return reservoir_; }

 private:
  std::size_t sample_;
  std::uint64_t seed_;
  Rng rng_;
  std::size_t n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<Edge> reservoir_;
};

inline constexpr std::size_t kMaxAutomatonStates = 4096;

// Deterministic automaton over edges with states 0..S-1 and start state 0.
class Automaton {
 public:
  using State = std::uint32_t;
  // Returns the next state, or nullopt where the transition is undefined.
  using Transition = std::function<std::optional<State>(State, const Edge&)>;
  using Table = std::map<std::pair<State, std::pair<Vertex, Vertex>>, State>;

  // output[s] is the verdict in state s. Throws SizeError above
  // kMaxAutomatonStates and InputError on an empty or mis-sized output map.
  Automaton(std::string label, std::size_t states, Transition delta, std::vector<Answer> output);

  // Explicit transition map keyed by (state, sorted pair).
  static Automaton from_table(std::string label, std::size_t states, Table table,
                              std::vector<Answer> output);

  const std::string& label() const { return label_; }
  std::size_t num_states() const { return output_.size(); }
  // Throws InputError on an undefined transition or an out-of-range target.
  State step(State s, const Edge& e) const;
  Answer output(State s) const { return output_.at(s); }

 private:
  std::string label_;
  Transition delta_;
  std::vector<Answer> output_;
};

class FiniteStateAlgorithm final : public StreamAlgorithm {
 public:
  explicit FiniteStateAlgorithm(std::shared_ptr<const Automaton> automaton);

  std::string name() const override { return "finite-state"; }
  std::string params() const override;
  void reset(std::size_t) override { state_ = 0; }
  void process(const Edge& e) override { state_ = automaton_->step(state_, e); }
  StreamOutput finish() const override { return automaton_->output(state_); }
  BitVector serialize() const override;
  std::size_t state_bits() const override { return bits_for(automaton_->num_states() - 1); }

  Automaton::State state() const { return state_; }
  const Automaton& automaton() const { return *automaton_; }

 private:
  std::shared_ptr<const Automaton> automaton_;
  Automaton::State state_ = 0;
};

// One state, answers YES.
Automaton identity_automaton();
// m mod `modulus`; YES iff the count is 0 mod modulus.
Automaton edge_count_mod_automaton(std::size_t modulus);
// min(m, cap); YES iff the count is even.
Automaton saturating_edge_count_automaton(std::size_t cap);
// Parity of the number of arriving edges that cross x; YES iff even.
Automaton crossing_parity_automaton(const Bipartition& x);
// min(#edges monochromatic under x, cap); YES iff the count is 0.
Automaton monochromatic_count_automaton(const Bipartition& x, std::size_t cap);

struct AlgorithmOptions {
  std::size_t walkers = 0;
  std::size_t length = 0;
  std::size_t sample = 12;
  std::size_t modulus = 2;
  std::uint64_t seed = 0;
};

// Names: edge-count, random-walk, reservoir, mod-counter. Throws InputError
// on an unknown name.
std::unique_ptr<StreamAlgorithm> make_algorithm(const std::string& name,
                                                const AlgorithmOptions& options);
std::vector<std::string> algorithm_names();

}  // namespace cutstream

#endif  // CUTSTREAM_STREAMING_HPP_
