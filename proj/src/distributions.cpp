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

#include "cutstream/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

namespace cutstream {
namespace {

void check_alpha_over_n(std::size_t n, double alpha) {
  if (n == 0) throw InputError("n must be positive");
  if (!(alpha >= 0.0) || alpha > static_cast<double>(n)) {
    throw InputError("edge probability alpha/n must lie in [0, 1]");
  }
}

std::uint64_t draw_binomial(std::uint64_t trials, double p, Rng& rng) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  std::binomial_distribution<std::uint64_t> dist(trials, p);
  return dist(rng);
}

std::uint64_t pairs_of(std::uint64_t n) { return n * (n - 1) / 2; }

// Sparse Fisher-Yates over [0, m): each call returns a fresh position,
// uniformly among those not yet returned.
class PositionDrawer {
 public:
  explicit PositionDrawer(std::uint64_t m) : m_(m) {}

  std::uint64_t next(Rng& rng) {
    const std::uint64_t j = drawn_ + rng.below(m_ - drawn_);
    const std::uint64_t at_j = value_at(j);
    swapped_[j] = value_at(drawn_);
    ++drawn_;
    return at_j;
  }

 private:
  std::uint64_t value_at(std::uint64_t i) const {
    const auto it = swapped_.find(i);
    return it == swapped_.end() ? i : it->second;
  }

  std::uint64_t m_;
  std::uint64_t drawn_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> swapped_;
};

}  // namespace

HardDistParams HardDistParams::make(std::size_t n, double epsilon, double alpha, double c_phase,
                                    std::size_t k_override) {
  if (n < 2) throw InputError("hard distribution needs n >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  if (alpha * static_cast<double>(n) < 1.0) throw InputError("alpha * n must be at least 1");
  if (!(c_phase > 0.0)) throw InputError("phase constant must be positive");
  HardDistParams p;
  p.n = n;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.c_phase = c_phase;
  if (k_override > 0) {
    p.k = k_override;
  } else {
    // The small slack keeps exact quotients such as 8 / (0.5 * 0.25) from
    // rounding up to the next integer.
    const double raw = c_phase / (alpha * epsilon * epsilon);
    p.k = static_cast<std::size_t>(std::ceil(raw - 1e-9 * raw));
    p.k = std::max<std::size_t>(p.k, 1);
  }
  return p;
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::kCanonical: return "canonical";
    case Ordering::kUniform: return "uniform";
    case Ordering::kIid: return "iid";
    case Ordering::kAdversarial: return "adversarial";
  }
  return "uniform";
}

Ordering parse_ordering(std::string_view text) {
  if (text == "canonical") return Ordering::kCanonical;
  if (text == "uniform") return Ordering::kUniform;
  if (text == "iid") return Ordering::kIid;
  if (text == "adversarial") return Ordering::kAdversarial;
  throw InputError("unknown ordering tag: " + std::string(text));
}

MultiGraph sample_gnp(std::size_t n, double alpha, Rng& rng) {
  check_alpha_over_n(n, alpha);
  MultiGraph g(n);
  for_each_gnp_edge(n, alpha / static_cast<double>(n), rng, [&](const Edge& e) { g.add_edge(e); });
  return g;
}

std::vector<Edge> sample_phase(const HardDistParams& params, const Bipartition* hidden, Rng& rng) {
  std::vector<Edge> phase;
  for_each_gnp_edge(params.n, params.edge_probability(), rng, [&](const Edge& e) {
    if (hidden ? hidden->crosses(e) : rng.coin()) phase.push_back(e);
  });
  return phase;
}

PhasedInstance sample_hard(const HardDistParams& params, Answer label, Rng& rng) {
  PhasedInstance inst;
  inst.params = params;
  inst.label = label;
  inst.combined = MultiGraph(params.n);
  if (label == Answer::kYes) inst.hidden = random_bipartition(params.n, rng);
  inst.phases.reserve(params.k);
  for (std::size_t i = 0; i < params.k; ++i) {
    inst.phases.push_back(sample_phase(params, inst.hidden ? &*inst.hidden : nullptr, rng));
    for (const Edge& e : inst.phases.back()) inst.combined.add_edge(e);
  }
  return inst;
}

EdgeStream canonical_stream(const PhasedInstance& inst, Rng& rng) {
  EdgeStream s;
  s.n = inst.params.n;
  s.ordering = Ordering::kCanonical;
  s.label = inst.label;
  s.seed = rng.seed();
  s.items.reserve(inst.combined.num_edges());
  for (const auto& phase : inst.phases) {
    const auto first = s.items.size();
    s.items.insert(s.items.end(), phase.begin(), phase.end());
    std::shuffle(s.items.begin() + static_cast<std::ptrdiff_t>(first), s.items.end(), rng);
  }
  return s;
}

EdgeStream uniform_stream(const PhasedInstance& inst, Rng& rng) {
  EdgeStream s;
  s.n = inst.params.n;
  s.ordering = Ordering::kUniform;
  s.label = inst.label;
  s.seed = rng.seed();
  const auto edges = inst.combined.edges();
  s.items.assign(edges.begin(), edges.end());
  std::shuffle(s.items.begin(), s.items.end(), rng);
  return s;
}

std::uint64_t MultiplicityProfile::with_multiplicity_at_least(std::size_t j) const {
  std::uint64_t total = 0;
  for (std::size_t i = std::max<std::size_t>(j, 1); i < histogram.size(); ++i) total += histogram[i];
  return total;
}

MultiplicityProfile multiplicity_profile(const MultiGraph& g) {
  MultiplicityProfile prof;
  prof.edges = g.num_edges();
  prof.histogram.assign(2, 0);
  for (const auto& [edge, count] : g.multiplicities()) {
    if (count >= prof.histogram.size()) prof.histogram.resize(count + 1, 0);
    ++prof.histogram[count];
  }
  return prof;
}

MultiplicityProfile sample_multiplicity_profile(const HardDistParams& params, Answer label,
                                                Rng& rng) {
  const auto n = static_cast<std::uint64_t>(params.n);
  std::uint64_t eligible = 0;
  double q = 0.0;
  if (label == Answer::kYes) {
    const std::uint64_t p_side = draw_binomial(n, 0.5, rng);
    eligible = p_side * (n - p_side);
    q = params.alpha / static_cast<double>(n);
  } else {
    eligible = pairs_of(n);
    q = params.alpha / (2.0 * static_cast<double>(n));
  }

  // pmf of Binomial(k, q), truncated once it is negligible past the mode.
  const auto k = static_cast<double>(params.k);
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double log_kfact = std::lgamma(k + 1.0);
  std::vector<double> pmf;
  for (std::size_t j = 0; j <= params.k; ++j) {
    const double jd = static_cast<double>(j);
    const double lp = log_kfact - std::lgamma(jd + 1.0) - std::lgamma(k - jd + 1.0) + jd * log_q +
                      (k - jd) * log_1mq;
    pmf.push_back(std::exp(lp));
    if (jd > k * q && pmf.back() < 1e-40) break;
  }
  const std::size_t top = pmf.size() - 1;
  std::vector<double> tail(pmf.size() + 1, 0.0);
  for (std::size_t j = pmf.size(); j-- > 0;) tail[j] = tail[j + 1] + pmf[j];

  MultiplicityProfile prof;
  prof.histogram.assign(std::max<std::size_t>(top + 1, 2), 0);
  // Sequential conditional binomials: among the pairs with multiplicity at
  // least j, each has multiplicity exactly j with probability pmf_j / tail_j.
  std::uint64_t remaining = draw_binomial(eligible, std::min(1.0, tail[1]), rng);
  for (std::size_t j = 1; j <= top && remaining > 0; ++j) {
    const std::uint64_t exact =
        j == top ? remaining : draw_binomial(remaining, std::min(1.0, pmf[j] / tail[j]), rng);
    prof.histogram[j] = exact;
    prof.edges += exact * j;
    remaining -= exact;
  }
  while (prof.histogram.size() > 2 && prof.histogram.back() == 0) prof.histogram.pop_back();
  return prof;
}

std::size_t default_collision_window(const HardDistParams& params) {
  return static_cast<std::size_t>(std::floor(4.0 * params.alpha * static_cast<double>(params.n)));
}

bool random_order_collides(const MultiplicityProfile& profile, std::size_t window, Rng& rng) {
  if (profile.with_multiplicity_at_least(2) == 0) return false;
  PositionDrawer drawer(profile.edges);
  std::vector<std::uint64_t> slots;
  for (std::size_t j = 2; j < profile.histogram.size(); ++j) {
    for (std::uint64_t c = 0; c < profile.histogram[j]; ++c) {
      slots.clear();
      for (std::size_t i = 0; i < j; ++i) slots.push_back(drawer.next(rng));
      std::sort(slots.begin(), slots.end());
      for (std::size_t i = 1; i < j; ++i) {
        if (slots[i] - slots[i - 1] <= window) return true;
      }
    }
  }
  return false;
}

double collision_fraction(const MultiplicityProfile& profile, std::size_t window,
                          std::size_t trials, Rng& rng) {
  if (trials == 0) throw InputError("collision_fraction needs at least one trial");
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) hits += random_order_collides(profile, window, rng);
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double collision_fraction(const PhasedInstance& inst, std::size_t window, std::size_t trials,
                          Rng& rng) {
  return collision_fraction(multiplicity_profile(inst.combined), window, trials, rng);
}

std::uint64_t IidPhasePlan::total() const {
  return std::accumulate(phase_sizes.begin(), phase_sizes.end(), std::uint64_t{0});
}

IidPhasePlan sample_iid_plan(const HardDistParams& params, Answer label, Rng& rng) {
  IidPhasePlan plan;
  plan.label = label;
  const auto n = static_cast<std::uint64_t>(params.n);
  const double p = params.edge_probability();
  plan.phase_sizes.reserve(params.k);
  if (label == Answer::kYes) {
    plan.hidden = random_bipartition(params.n, rng);
    const std::uint64_t q_side = plan.hidden->side.count();
    const std::uint64_t crossing = q_side * (n - q_side);
    for (std::size_t i = 0; i < params.k; ++i) plan.phase_sizes.push_back(draw_binomial(crossing, p, rng));
  } else {
    for (std::size_t i = 0; i < params.k; ++i) {
      const std::uint64_t kept = draw_binomial(pairs_of(n), 0.5, rng);
      plan.phase_sizes.push_back(draw_binomial(kept, p, rng));
    }
  }
  return plan;
}

Edge sample_underlying_edge(std::size_t n, const IidPhasePlan& plan, Rng& rng) {
  if (n < 2) throw InputError("empty edge set");
  if (!plan.hidden) {
    const auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    if (v >= u) ++v;
    return Edge{std::min(u, v), std::max(u, v)};
  }
  const BitVector& side = plan.hidden->side;
  const std::size_t q_count = side.count();
  if (q_count == 0 || q_count == n) throw InputError("empty edge set");
  // Rejection sampling of one endpoint per side; expected tries <= n.
  Vertex p_vertex = 0;
  Vertex q_vertex = 0;
  do { p_vertex = static_cast<Vertex>(rng.below(n)); } while (side[p_vertex]);
  do { q_vertex = static_cast<Vertex>(rng.below(n)); } while (!side[q_vertex]);
  return Edge{std::min(p_vertex, q_vertex), std::max(p_vertex, q_vertex)};
}

EdgeStream iid_stream(const HardDistParams& params, Answer label, std::size_t length, Rng& rng) {
  IidPhasePlan plan;
  plan.label = label;
  if (label == Answer::kYes) plan.hidden = random_bipartition(params.n, rng);
  EdgeStream s;
  s.n = params.n;
  s.ordering = Ordering::kIid;
  s.label = label;
  s.seed = rng.seed();
  s.items.reserve(length);
  for (std::size_t i = 0; i < length; ++i) s.items.push_back(sample_underlying_edge(params.n, plan, rng));
  return s;
}

EdgeStream iid_stream(const MultiGraph& g, std::size_t length, Rng& rng) {
  if (g.num_edges() == 0) throw InputError("empty edge set");
  EdgeStream s;
  s.n = g.num_vertices();
  s.ordering = Ordering::kIid;
  s.seed = rng.seed();
  s.items.reserve(length);
  const auto edges = g.edges();
  for (std::size_t i = 0; i < length; ++i) s.items.push_back(edges[rng.below(edges.size())]);
  return s;
}

std::vector<std::vector<Edge>> iid_phases(std::size_t n, const IidPhasePlan& plan, Rng& rng) {
  std::vector<std::vector<Edge>> phases(plan.phase_sizes.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    phases[i].reserve(plan.phase_sizes[i]);
    for (std::uint64_t j = 0; j < plan.phase_sizes[i]; ++j) {
      phases[i].push_back(sample_underlying_edge(n, plan, rng));
    }
  }
  return phases;
}

BitVector hypermatching_parity(const BitVector& x, const std::vector<std::vector<Vertex>>& blocks) {
  BitVector parity(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    bool bit = false;
    for (Vertex v : blocks[i]) {
      if (v >= x.size()) throw InputError("hypermatching vertex out of range");
      bit ^= x[v];
    }
    parity[i] = bit;
  }
  return parity;
}

BhhInstance sample_bhh(std::size_t n, std::size_t t, Answer label, Rng& rng) {
  if (t == 0 || n == 0 || n % (2 * t) != 0) throw InputError("BHH needs n = 2kt with k, t >= 1");
  BhhInstance inst;
  inst.n = n;
  inst.t = t;
  inst.label = label;
  inst.x = random_bipartition(n, rng).side;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::size_t count = n / t;
  inst.blocks.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    inst.blocks[i].assign(perm.begin() + static_cast<std::ptrdiff_t>(i * t),
                          perm.begin() + static_cast<std::ptrdiff_t>((i + 1) * t));
    std::sort(inst.blocks[i].begin(), inst.blocks[i].end());
  }
  inst.w = hypermatching_parity(inst.x, inst.blocks);
  if (label == Answer::kNo) inst.w.flip();
  return inst;
}

BhpInstance sample_bhp(std::size_t n, double alpha, Answer label, Rng& rng) {
  check_alpha_over_n(n, alpha);
  const BitVector x = random_bipartition(n, rng).side;
  return sample_bhp(n, alpha, label, x, rng);
}

BhpInstance sample_bhp(std::size_t n, double alpha, Answer label, const BitVector& x, Rng& rng) {
  check_alpha_over_n(n, alpha);
  if (x.size() != n) throw InputError("Alice's input has the wrong dimension");
  BhpInstance inst;
  inst.n = n;
  inst.alpha = alpha;
  inst.x = x;
  inst.label = label;
  inst.graph = sample_gnp(n, alpha, rng);
  if (label == Answer::kYes) {
    inst.w = gf2_apply(IncidenceMatrix(inst.graph), x);
  } else {
    inst.w = BitVector(inst.graph.num_edges());
    for (std::size_t e = 0; e < inst.w.size(); ++e) inst.w[e] = rng.coin();
  }
  return inst;
}

double chernoff_tail(double mu, double delta, Tail side) {
  if (!(mu >= 0.0) || !(delta >= 0.0)) throw InputError("chernoff_tail needs mu, delta >= 0");
  if (delta == 0.0) return 1.0;
  const double denom = side == Tail::kUpper ? 2.0 * mu + 2.0 * delta : 2.0 * mu;
  if (denom == 0.0) return 0.0;
  return std::exp(-delta * delta / denom);
}

double expected_cycle_count(std::size_t n, double alpha) {
  check_alpha_over_n(n, alpha);
  const double p = alpha / static_cast<double>(n);
  // term_j = n!/(n-j)! * p^j / (2j), built incrementally from the falling
  // factorial so that large n stays finite.
  double falling = 1.0;  // n (n-1) ... (n-j+1) p^j
  double sum = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    falling *= static_cast<double>(n - j + 1) * p;
    if (j >= 3) {
      const double term = falling / (2.0 * static_cast<double>(j));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    if (falling == 0.0) break;
  }
  return sum;
}

std::uint64_t unicyclic_graph_count(std::size_t k) {
  if (k < 3) return 0;
  if (k > 16) throw SizeError("unicyclic_graph_count is exact only for k <= 16");
  // (k-1)!/2 * sum_j k^j / j! = 1/2 * sum_j k^j (k-1)!/j!, each summand integral.
  unsigned __int128 sum = 0;
  for (std::size_t j = 0; j + 3 <= k; ++j) {
    unsigned __int128 term = 1;
    for (std::size_t i = 0; i < j; ++i) term *= k;
    for (std::size_t i = j + 1; i <= k - 1; ++i) term *= i;
    sum += term;
  }
  return static_cast<std::uint64_t>(sum / 2);
}

}  // namespace cutstream
