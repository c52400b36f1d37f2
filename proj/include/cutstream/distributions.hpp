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

#ifndef CUTSTREAM_DISTRIBUTIONS_HPP_
#define CUTSTREAM_DISTRIBUTIONS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cutstream/errors.hpp"
#include "cutstream/graph.hpp"
#include "cutstream/rng.hpp"

namespace cutstream {

inline constexpr double kDefaultPhaseConstant = 8.0;

// Parameters of the phased hard distribution: n vertices, gap epsilon,
// per-phase density alpha (each phase is G(n, alpha/n)), and
// k = ceil(c_phase / (alpha * epsilon^2)) phases.
struct HardDistParams {
  std::size_t n = 0;
  double epsilon = 0.3;
  double alpha = 0.5;
  double c_phase = kDefaultPhaseConstant;
  std::size_t k = 1;

  // Validates and derives k. A nonzero k_override replaces the formula.
  static HardDistParams make(std::size_t n, double epsilon, double alpha,
                             double c_phase = kDefaultPhaseConstant, std::size_t k_override = 0);

  double edge_probability() const { return alpha / static_cast<double>(n); }
};

// One draw from the YES or NO hard distribution.
struct PhasedInstance {
  HardDistParams params;
  Answer label = Answer::kYes;
  std::optional<Bipartition> hidden;       // R; present iff YES
  std::vector<std::vector<Edge>> phases;   // E'_1..E'_k, each a simple graph
  MultiGraph combined;                     // E' with multiplicity
};

enum class Ordering : std::uint8_t { kCanonical, kUniform, kIid, kAdversarial };

std::string_view to_string(Ordering o);
Ordering parse_ordering(std::string_view text);

struct EdgeStream {
  std::size_t n = 0;
  Ordering ordering = Ordering::kUniform;
  std::optional<Answer> label;
  std::uint64_t seed = 0;
  std::vector<Edge> items;
};

// Geometric skipping over the C(n,2) pairs in the linear order
// (0,1), (0,2), (1,2), (0,3), ..., so the cost is proportional to the number
// of edges drawn. Edges come out as {w, v} with w < v.
template <typename Fn>
void for_each_gnp_edge(std::size_t n, double p, Rng& rng, Fn&& fn) {
  if (n < 2 || p <= 0.0) return;
  if (p >= 1.0) {
    for (Vertex v = 1; v < n; ++v) {
      for (Vertex w = 0; w < v; ++w) fn(Edge{w, v});
    }
    return;
  }
  const double log_q = std::log1p(-p);
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t index = 0;  // next candidate pair
  while (true) {
    const double skip = std::floor(std::log1p(-rng.uniform()) / log_q);
    if (skip >= static_cast<double>(pairs - index)) return;
    index += static_cast<std::uint64_t>(skip);
    // Pair index L = v(v-1)/2 + w with 0 <= w < v.
    auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
    while (v * (v - 1) / 2 > index) --v;
    while ((v + 1) * v / 2 <= index) ++v;
    fn(Edge{static_cast<Vertex>(index - v * (v - 1) / 2), static_cast<Vertex>(v)});
    if (++index == pairs) return;
  }
}

// G(n, alpha/n). Throws InputError unless 0 <= alpha/n <= 1.
MultiGraph sample_gnp(std::size_t n, double alpha, Rng& rng);

// One phase E'_i in generation order: the edges of a fresh G(n, alpha/n)
// that cross `hidden` (YES), or each kept by a fair coin when hidden is null
// (NO).
std::vector<Edge> sample_phase(const HardDistParams& params, const Bipartition* hidden, Rng& rng);

// YES: draw R uniformly, then keep the edges of each G_i ~ G(n, alpha/n)
// that cross R. NO: keep each edge of G_i independently with probability 1/2.
PhasedInstance sample_hard(const HardDistParams& params, Answer label, Rng& rng);

// Phases in order 1..k, each independently shuffled.
EdgeStream canonical_stream(const PhasedInstance& inst, Rng& rng);
// Uniform permutation of the union multiset.
EdgeStream uniform_stream(const PhasedInstance& inst, Rng& rng);

// Shape of the union multiset: how many distinct pairs occur with each
// multiplicity. Whether a uniform ordering is collision inducing depends on
// nothing else.
struct MultiplicityProfile {
  std::uint64_t edges = 0;                 // m, with multiplicity
  std::vector<std::uint64_t> histogram;    // histogram[j]: pairs of multiplicity j (j >= 1)

  std::uint64_t with_multiplicity_at_least(std::size_t j) const;
  std::uint64_t distinct() const { return with_multiplicity_at_least(1); }
};

MultiplicityProfile multiplicity_profile(const MultiGraph& g);

// Draws the profile of a hard-distribution union directly: each eligible
// pair's multiplicity is Binomial(k, q) independently (q = alpha/n on the
// |P||Q| crossing pairs for YES, q = alpha/(2n) on all pairs for NO), and
// the histogram of those multiplicities is multinomial. Costs O(1) per draw
// regardless of n, which is what makes 10^4 trials at n = 10^4 cheap.
MultiplicityProfile sample_multiplicity_profile(const HardDistParams& params, Answer label,
                                                Rng& rng);

// floor(4 alpha n).
std::size_t default_collision_window(const HardDistParams& params);

// One uniform ordering of the union: do two copies of some repeated pair
// land within `window` positions of each other?
bool random_order_collides(const MultiplicityProfile& profile, std::size_t window, Rng& rng);

double collision_fraction(const MultiplicityProfile& profile, std::size_t window,
                          std::size_t trials, Rng& rng);
double collision_fraction(const PhasedInstance& inst, std::size_t window, std::size_t trials,
                          Rng& rng);

// Per-phase sample counts for the i.i.d. construction. YES: T_i ~
// Binomial(|P||Q|, alpha/n) for a uniform R. NO: thin the complete graph by
// 1/2 per phase, then T_i ~ Binomial(|E'_i|, alpha/n).
struct IidPhasePlan {
  Answer label = Answer::kYes;
  std::optional<Bipartition> hidden;
  std::vector<std::uint64_t> phase_sizes;

  std::uint64_t total() const;
};

IidPhasePlan sample_iid_plan(const HardDistParams& params, Answer label, Rng& rng);

// Uniform draw from the underlying edge set of a plan: K_{P,Q} for YES,
// K_n for NO. Throws InputError when that set is empty.
Edge sample_underlying_edge(std::size_t n, const IidPhasePlan& plan, Rng& rng);

// `length` independent uniform draws from the underlying edge set.
EdgeStream iid_stream(const HardDistParams& params, Answer label, std::size_t length, Rng& rng);
// `length` independent uniform draws from the edges of g (with multiplicity).
EdgeStream iid_stream(const MultiGraph& g, std::size_t length, Rng& rng);
// T_i draws for each phase of the plan.
std::vector<std::vector<Edge>> iid_phases(std::size_t n, const IidPhasePlan& plan, Rng& rng);

// Boolean hidden hypermatching. n = 2kt; blocks partition [n] into n/t
// sorted t-sets; YES iff Mx xor w = 0, NO iff Mx xor w = 1.
struct BhhInstance {
  std::size_t n = 0;
  std::size_t t = 0;
  BitVector x;
  std::vector<std::vector<Vertex>> blocks;
  BitVector w;
  Answer label = Answer::kYes;
};

BhhInstance sample_bhh(std::size_t n, std::size_t t, Answer label, Rng& rng);
// Mx: parity of x over each block.
BitVector hypermatching_parity(const BitVector& x, const std::vector<std::vector<Vertex>>& blocks);

// Distributional boolean hidden partition. YES: w = Mx. NO: w uniform.
struct BhpInstance {
  std::size_t n = 0;
  double alpha = 0.0;
  BitVector x;
  MultiGraph graph;
  BitVector w;
  Answer label = Answer::kYes;
};

BhpInstance sample_bhp(std::size_t n, double alpha, Answer label, Rng& rng);
// Same distribution conditioned on Alice's input being x.
BhpInstance sample_bhp(std::size_t n, double alpha, Answer label, const BitVector& x, Rng& rng);

enum class Tail : std::uint8_t { kUpper, kLower };

// Upper: exp(-delta^2 / (2 mu + 2 delta)). Lower: exp(-delta^2 / (2 mu)).
double chernoff_tail(double mu, double delta, Tail side);

// Expected number of cycles in G(n, alpha/n):
// sum_{j=3}^{n} C(n,j) (j-1)!/2 (alpha/n)^j.
double expected_cycle_count(std::size_t n, double alpha);

// Number of connected unicyclic labeled graphs on k vertices:
// (k-1)!/2 * sum_{j=0}^{k-3} k^j / j!. Exact for k <= 16.
std::uint64_t unicyclic_graph_count(std::size_t k);

}  // namespace cutstream

#endif  // CUTSTREAM_DISTRIBUTIONS_HPP_
