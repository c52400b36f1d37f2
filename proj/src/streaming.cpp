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

#include "cutstream/streaming.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "cutstream/errors.hpp"

namespace cutstream {
namespace {

void append_bits(BitVector& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) out.push_back(((value >> i) & 1U) != 0);
}

bool insert_sorted(std::vector<Vertex>& set, Vertex v) {
  const auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it != set.end() && *it == v) return false;
  set.insert(it, v);
  return true;
}

bool contains_sorted(const std::vector<Vertex>& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

}  // namespace

std::string to_string(const StreamOutput& out) {
  if (const auto* a = std::get_if<Answer>(&out)) return std::string(to_string(*a));
  std::ostringstream s;
  s.precision(17);
  s << std::get<double>(out);
  return s.str();
}

std::size_t bits_for(std::uint64_t bound) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::bit_width(bound)));
}

RunResult run(StreamAlgorithm& alg, std::size_t n, std::span<const Edge> stream,
              std::optional<std::size_t> budget_bits) {
  alg.reset(n);
  RunResult result;
  result.peak_bits = alg.state_bits();
  for (const Edge& e : stream) {
    if (e.u >= n || e.v >= n) throw InputError("stream edge out of range for n");
    alg.process(e);
    result.peak_bits = std::max(result.peak_bits, alg.state_bits());
  }
  result.output = alg.finish();
  result.budget_exceeded = budget_bits && result.peak_bits > *budget_bits;
  return result;
}

BitVector EdgeCount::serialize() const {
  BitVector out;
  append_bits(out, m_, bits_for(m_));
  return out;
}

RandomWalkTester::RandomWalkTester(std::size_t walkers, std::size_t length, std::uint64_t seed)
    : requested_walkers_(walkers), requested_length_(length), seed_(seed) {}

std::string RandomWalkTester::params() const {
  return "W=" + std::to_string(walkers_.size()) + ";L=" + std::to_string(length_) +
         ";seed=" + std::to_string(seed_);
}

void RandomWalkTester::reset(std::size_t n) {
  n_ = n;
  odd_evidence_ = false;
  walkers_.clear();
  if (n == 0) {
    length_ = requested_length_;
    return;
  }
  const double ln_n = std::log(static_cast<double>(n));
  const std::size_t count = requested_walkers_ > 0
                                ? requested_walkers_
                                : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  length_ = requested_length_ > 0
                ? requested_length_
                : std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ln_n * ln_n)));
  Rng rng(seed_);
  walkers_.resize(count);
  for (Walker& w : walkers_) {
    w.at = static_cast<Vertex>(rng.below(n));
    w.even.push_back(w.at);
  }
}

void RandomWalkTester::process(const Edge& e) {
  for (Walker& w : walkers_) {
    if (w.steps >= length_ || !e.touches(w.at)) continue;
    w.at = e.other(w.at);
    ++w.steps;
    const bool odd = (w.steps & 1U) != 0;
    insert_sorted(odd ? w.odd : w.even, w.at);
    if (contains_sorted(odd ? w.even : w.odd, w.at)) odd_evidence_ = true;
  }
}

StreamOutput RandomWalkTester::finish() const {
  return odd_evidence_ ? Answer::kNo : Answer::kYes;
}

BitVector RandomWalkTester::serialize() const {
  const std::size_t vbits = bits_for(n_ == 0 ? 0 : n_ - 1);
  const std::size_t sbits = bits_for(length_ + 1);
  BitVector out;
  out.push_back(odd_evidence_);
  for (const Walker& w : walkers_) {
    append_bits(out, w.at, vbits);
    append_bits(out, w.steps, sbits);
    append_bits(out, w.even.size(), sbits);
    append_bits(out, w.odd.size(), sbits);
    for (Vertex v : w.even) append_bits(out, v, vbits);
    for (Vertex v : w.odd) append_bits(out, v, vbits);
  }
  return out;
}

std::size_t RandomWalkTester::state_bits() const {
  const std::size_t vbits = bits_for(n_ == 0 ? 0 : n_ - 1);
  const std::size_t sbits = bits_for(length_ + 1);
  std::size_t total = 1;
  for (const Walker& w : walkers_) total += vbits + 3 * sbits + (w.even.size() + w.odd.size()) * vbits;
  return total;
}

ReservoirMaxCut::ReservoirMaxCut(std::size_t sample, std::uint64_t seed)
    : sample_(sample), seed_(seed), rng_(seed) {
  if (sample == 0) throw InputError("reservoir size must be positive");
}

std::string ReservoirMaxCut::params() const {
  return "s=" + std::to_string(sample_) + ";seed=" + std::to_string(seed_);
}

void ReservoirMaxCut::reset(std::size_t n) {
  if (std::min(n, 2 * sample_) > kMaxExactCutVertices) {
    throw SizeError("reservoir of " + std::to_string(sample_) + " edges on " + std::to_string(n) +
                    " vertices exceeds the exact max-cut budget");
  }
  n_ = n;
  m_ = 0;
  rng_ = Rng(seed_);
  reservoir_.clear();
}

void ReservoirMaxCut::process(const Edge& e) {
  ++m_;
  if (reservoir_.size() < sample_) {
    reservoir_.push_back(e);
    return;
  }
  const std::uint64_t j = rng_.below(m_);
  if (j < sample_) reservoir_[j] = e;
}

StreamOutput ReservoirMaxCut::finish() const {
  if (reservoir_.empty()) return 0.0;
  // Relabel the touched vertices densely so the search runs on at most 2s.
  std::vector<Vertex> touched;
  for (const Edge& e : reservoir_) {
    touched.push_back(e.u);
    touched.push_back(e.v);
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  const auto index = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(touched.begin(), touched.end(), v) - touched.begin());
  };
  MultiGraph sample(touched.size());
  for (const Edge& e : reservoir_) sample.add_edge(index(e.u), index(e.v));
  const double opt = static_cast<double>(max_cut_exact(sample).value);
  return opt * static_cast<double>(m_) / static_cast<double>(reservoir_.size());
}

BitVector ReservoirMaxCut::serialize() const {
  const std::size_t vbits = bits_for(n_ == 0 ? 0 : n_ - 1);
  BitVector out;
  append_bits(out, m_, bits_for(m_));
  for (const Edge& e : reservoir_) {
    append_bits(out, e.u, vbits);
    append_bits(out, e.v, vbits);
  }
  return out;
}

std::size_t ReservoirMaxCut::state_bits() const {
  return bits_for(m_) + 2 * reservoir_.size() * bits_for(n_ == 0 ? 0 : n_ - 1);
}

Automaton::Automaton(std::string label, std::size_t states, Transition delta,
                     std::vector<Answer> output)
    : label_(std::move(label)), delta_(std::move(delta)), output_(std::move(output)) {
  if (states == 0) throw InputError("automaton needs at least one state");
  if (states > kMaxAutomatonStates) {
    throw SizeError("automaton has " + std::to_string(states) + " states; the cap is " +
                    std::to_string(kMaxAutomatonStates));
  }
  if (output_.size() != states) throw InputError("automaton output map must cover every state");
  if (!delta_) throw InputError("automaton needs a transition map");
}

Automaton Automaton::from_table(std::string label, std::size_t states, Table table,
                                std::vector<Answer> output) {
  auto shared = std::make_shared<const Table>(std::move(table));
  Transition delta = [shared](State s, const Edge& e) -> std::optional<State> {
    const auto it = shared->find({s, e.key()});
    if (it == shared->end()) return std::nullopt;
    return it->second;
  };
  return Automaton(std::move(label), states, std::move(delta), std::move(output));
}

Automaton::State Automaton::step(State s, const Edge& e) const {
  const auto next = delta_(s, e);
  if (!next) {
    throw InputError("automaton '" + label_ + "': undefined transition from state " +
                     std::to_string(s) + " on edge {" + std::to_string(e.u) + "," +
                     std::to_string(e.v) + "}");
  }
  if (*next >= output_.size()) throw InputError("automaton '" + label_ + "': target out of range");
  return *next;
}

FiniteStateAlgorithm::FiniteStateAlgorithm(std::shared_ptr<const Automaton> automaton)
    : automaton_(std::move(automaton)) {
  if (!automaton_) throw InputError("finite-state algorithm needs an automaton");
}

std::string FiniteStateAlgorithm::params() const {
  return "automaton=" + automaton_->label() + ";states=" + std::to_string(automaton_->num_states());
}

BitVector FiniteStateAlgorithm::serialize() const {
  BitVector out;
  append_bits(out, state_, bits_for(automaton_->num_states() - 1));
  return out;
}

Automaton identity_automaton() {
  return Automaton("identity", 1, [](Automaton::State s, const Edge&) { return std::optional(s); },
                   {Answer::kYes});
}

Automaton edge_count_mod_automaton(std::size_t modulus) {
  if (modulus == 0) throw InputError("modulus must be positive");
  std::vector<Answer> out(modulus, Answer::kNo);
  out[0] = Answer::kYes;
  const auto mod = static_cast<Automaton::State>(modulus);
  return Automaton("count-mod-" + std::to_string(modulus), modulus,
                   [mod](Automaton::State s, const Edge&) { return std::optional((s + 1) % mod); },
                   std::move(out));
}

Automaton saturating_edge_count_automaton(std::size_t cap) {
  std::vector<Answer> out(cap + 1);
  for (std::size_t s = 0; s <= cap; ++s) out[s] = s % 2 == 0 ? Answer::kYes : Answer::kNo;
  const auto top = static_cast<Automaton::State>(cap);
  return Automaton("count-cap-" + std::to_string(cap), cap + 1,
                   [top](Automaton::State s, const Edge&) { return std::optional(std::min(s + 1, top)); },
                   std::move(out));
}

Automaton crossing_parity_automaton(const Bipartition& x) {
  return Automaton("crossing-parity", 2,
                   [x](Automaton::State s, const Edge& e) -> std::optional<Automaton::State> {
                     if (e.u >= x.size() || e.v >= x.size()) return std::nullopt;
                     return x.crosses(e) ? s ^ 1U : s;
                   },
                   {Answer::kYes, Answer::kNo});
}

Automaton monochromatic_count_automaton(const Bipartition& x, std::size_t cap) {
  std::vector<Answer> out(cap + 1, Answer::kNo);
  out[0] = Answer::kYes;
  const auto top = static_cast<Automaton::State>(cap);
  return Automaton("monochromatic-cap-" + std::to_string(cap), cap + 1,
                   [x, top](Automaton::State s, const Edge& e) -> std::optional<Automaton::State> {
                     if (e.u >= x.size() || e.v >= x.size()) return std::nullopt;
                     return x.crosses(e) ? s : std::min(s + 1, top);
                   },
                   std::move(out));
}

std::vector<std::string> algorithm_names() {
  return {"edge-count", "random-walk", "reservoir", "mod-counter"};
}

std::unique_ptr<StreamAlgorithm> make_algorithm(const std::string& name,
                                                const AlgorithmOptions& options) {
  if (name == "edge-count") return std::make_unique<EdgeCount>();
  if (name == "random-walk") {
    return std::make_unique<RandomWalkTester>(options.walkers, options.length, options.seed);
  }
  if (name == "reservoir") return std::make_unique<ReservoirMaxCut>(options.sample, options.seed);
  if (name == "mod-counter") {
    return std::make_unique<FiniteStateAlgorithm>(
        std::make_shared<const Automaton>(edge_count_mod_automaton(options.modulus)));
  }
  throw InputError("unknown algorithm '" + name + "'");
}

}  // namespace cutstream
