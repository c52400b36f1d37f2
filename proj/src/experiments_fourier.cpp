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
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <random>

#include "cutstream/errors.hpp"
#include "cutstream/experiments.hpp"
#include "cutstream/reductions.hpp"
#include "cutstream/streaming.hpp"

namespace cutstream {
namespace {

constexpr double kExactTol = 1e-10;

std::size_t uniform_between(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

// A = {x : x_0 = ... = x_{c-1} = 0}; c' = c and f^ is 2^{-c} on subsets of [c].
IndicatorSet subcube(std::size_t n, std::size_t c) {
  std::vector<std::uint64_t> points;
  const std::uint64_t low = (std::uint64_t{1} << c) - 1;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if ((x & low) == 0) points.push_back(x);
  }
  return IndicatorSet::from_points(n, points);
}

struct FourierRow {
  std::string check;
  std::size_t index = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t size = 0;
  double c_prime = 0.0;
  std::size_t ell = 0;
  double value = 0.0;
  double bound = 0.0;
  bool pass = true;
};

void emit(ExperimentReport& rep, const FourierRow& row, std::map<std::string, std::pair<std::size_t, std::size_t>>& tally) {
  rep.add_row({row.check, cell(std::uint64_t{row.index}), cell(std::uint64_t{row.n}), cell(std::uint64_t{row.r}),
               cell(std::uint64_t{row.size}), cell(row.c_prime), cell(std::uint64_t{row.ell}), cell(row.value),
               cell(row.bound), cell(row.pass)});
  auto& t = tally[row.check];
  ++t.first;
  t.second += row.pass;
}

void identity_rows(ExperimentReport& rep, std::map<std::string, std::pair<std::size_t, std::size_t>>& tally,
                   std::size_t index, const IndicatorSet& a, const IncidenceMatrix& m) {
  const FourierRow base{"", index, a.dim(), m.rows(), a.size(), a.c_prime(), 0, 0.0, kExactTol, true};
  FourierRow id = base;
  id.check = "identity";
  id.value = fourier_identity_error(a, m);
  id.pass = id.value <= kExactTol;
  emit(rep, id, tally);
  FourierRow parseval = base;
  parseval.check = "parseval";
  parseval.value = parseval_error(a);
  parseval.pass = parseval.value <= kExactTol;
  emit(rep, parseval, tally);
  const TvdChain chain = tvd_bound_chain(a, m);
  FourierRow cs = base;
  cs.check = "chain_cauchy_schwarz";
  cs.value = chain.lhs;
  cs.bound = chain.mid;
  cs.pass = chain.lhs <= chain.mid;
  emit(rep, cs, tally);
  FourierRow eq = base;
  eq.check = "chain_parseval";
  eq.value = std::abs(chain.mid - chain.rhs);
  eq.pass = eq.value <= kExactTol;
  emit(rep, eq, tally);
}

void weight_rows(ExperimentReport& rep, std::map<std::string, std::pair<std::size_t, std::size_t>>& tally,
                 std::size_t index, const IndicatorSet& a) {
  for (std::size_t ell = 1; ell <= max_weight_class(a); ++ell) {
    const WeightMass w = weight_mass_check(a, ell);
    emit(rep, {"weight_mass", index, a.dim(), 0, a.size(), a.c_prime(), ell, w.mass, w.bound, w.holds()}, tally);
  }
}

// Exhaustive pass over s in {0,1}^r, grouped by v = M^T s.
FourierRow solution_structure(std::size_t index, const IncidenceMatrix& m, Rng& rng) {
  FourierRow row{"solutions", index, m.cols(), m.rows(), 0, 0.0, 0, 0.0, 0.0, true};
  std::map<std::uint64_t, std::size_t> sizes;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << m.rows()); ++s) {
    const std::uint64_t v = gf2_apply_transpose_mask(m, s);
    ++sizes[v];
    if (std::popcount(v) % 2 == 1 || !certify_solution(m, s, v, decompose_selection(m, s))) row.pass = false;
  }
  const std::size_t expected = std::size_t{1} << cycle_space_dimension(m);
  for (const auto& [v, count] : sizes) {
    if (count != expected) row.pass = false;
  }
  // Spot checks against the structural coset and against empty classes.
  const auto probe = [&](std::uint64_t v) {
    const auto enumerated = solutions_of(m, v);
    if (!enumerated.certified || enumerated.solutions != solution_coset(m, v)) row.pass = false;
    if (enumerated.solutions.size() != (sizes.count(v) ? sizes[v] : 0)) row.pass = false;
  };
  probe(sizes.begin()->first);
  probe(std::prev(sizes.end())->first);
  probe(rng.below(std::uint64_t{1} << m.cols()));
  row.value = static_cast<double>(sizes.size());
  row.bound = static_cast<double>(expected);
  return row;
}

}  // namespace

IndicatorSet random_indicator(std::size_t n, std::size_t size, Rng& rng) {
  if (n > kMaxFourierDim) throw SizeError("indicator sets need n <= " + std::to_string(kMaxFourierDim));
  const std::uint64_t total = std::uint64_t{1} << n;
  if (size == 0 || size > total) throw InputError("indicator size must lie in [1, 2^n]");
  std::vector<std::uint64_t> all(total);
  std::iota(all.begin(), all.end(), std::uint64_t{0});
  for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(total - i)]);
  all.resize(size);
  return IndicatorSet::from_points(n, all);
}

IndicatorSet random_indicator_with_deficit(std::size_t n, double c_prime, Rng& rng) {
  if (!(c_prime >= 0.0) || c_prime > static_cast<double>(n)) throw InputError("c' must lie in [0, n]");
  const auto size = static_cast<std::size_t>(std::ceil(std::ldexp(1.0, static_cast<int>(n)) / std::exp2(c_prime) - 1e-9));
  return random_indicator(n, std::max<std::size_t>(1, size), rng);
}

IncidenceMatrix random_incidence(std::size_t n, std::size_t r, Rng& rng) {
  if (n < 2) throw InputError("random incidence needs n >= 2");
  std::vector<Edge> rows;
  rows.reserve(r);
  for (std::size_t e = 0; e < r; ++e) {
    const auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    if (v >= u) ++v;
    rows.push_back({u, v});
  }
  return IncidenceMatrix(n, std::move(rows));
}

DiscreteDistribution random_distribution(std::size_t size, Rng& rng) {
  if (size == 0) throw InputError("empty outcome space");
  std::exponential_distribution<double> exp1(1.0);
  Eigen::VectorXd p(static_cast<Eigen::Index>(size));
  const bool sparse = rng.uniform() < 0.3;
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = sparse && rng.coin() ? 0.0 : exp1(rng);
  if (p.sum() <= 0.0) p[static_cast<Eigen::Index>(rng.below(size))] = 1.0;
  return DiscreteDistribution(p / p.sum());
}

ExperimentReport cmd_fourier(const ExperimentConfig& config) {
  const std::size_t trials = config.trials > 0 ? config.trials : 200;
  const std::size_t half = std::max<std::size_t>(100, trials / 2);
  ExperimentReport rep;
  rep.columns = {"check", "index", "n_row", "r_row", "size_A", "c_prime", "ell_row", "value", "bound", "pass"};
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;
  const Rng root = Rng(config.seed).named("fourier");

  if (!config.indicator_path.empty()) {
    const IndicatorSet a = load_indicator(config.indicator_path);
    Rng rng = root.named("file");
    for (std::size_t i = 0; a.dim() >= 2 && i < std::min<std::size_t>(trials, 20); ++i) {
      identity_rows(rep, tally, i, a, random_incidence(a.dim(), uniform_between(rng, 1, 8), rng));
    }
    weight_rows(rep, tally, 0, a);
  }

  {
    Rng rng = root.named("identity");
    for (std::size_t i = 0; i < trials; ++i) {
      const std::size_t n = uniform_between(rng, 2, 12);
      const std::size_t r = uniform_between(rng, 1, 8);
      const IndicatorSet a = random_indicator(n, uniform_between(rng, 1, std::size_t{1} << n), rng);
      identity_rows(rep, tally, i, a, random_incidence(n, r, rng));
    }
    // A = {0,1}^n: p_M is uniform on the cut space and the chain is (0, 0, 0)
    // only when M has full row rank; a forest has.
    const IncidenceMatrix path(4, {{0, 1}, {1, 2}, {2, 3}});
    const TvdChain full = tvd_bound_chain(IndicatorSet::full(4), path);
    emit(rep, {"chain_full_cube", 0, 4, 3, 16, 0.0, 0, full.lhs + full.mid + full.rhs, kExactTol,
               full.lhs + full.mid + full.rhs <= kExactTol},
         tally);
  }

  {
    Rng rng = root.named("weight");
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t n = uniform_between(rng, 4, 12);
      const double target = 0.3 + 2.7 * rng.uniform();
      weight_rows(rep, tally, i, random_indicator_with_deficit(n, target, rng));
    }
    for (std::size_t c = 1; c <= 3; ++c) weight_rows(rep, tally, half + c, subcube(8, c));
  }

  {
    Rng rng = root.named("solutions");
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t n = uniform_between(rng, 3, 10);
      const std::size_t r = uniform_between(rng, 1, 14);
      emit(rep, solution_structure(i, random_incidence(n, r, rng), rng), tally);
    }
  }

  {
    Rng rng = root.named("distance");
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t size = uniform_between(rng, 1, 8);
      const auto p = random_distribution(size, rng);
      const auto q = random_distribution(size, rng);
      const LikelihoodAdvantage la = likelihood_test_advantage(p, q);
      emit(rep, {"likelihood", i, size, 0, 0, 0.0, 0, std::abs(la.advantage - la.half_tvd), kExactTol,
                 std::abs(la.advantage - la.half_tvd) <= kExactTol},
           tally);
      const double by_events = tvd_max_event(p, q);
      emit(rep, {"tvd_max_event", i, size, 0, 0, 0.0, 0, std::abs(by_events - tvd(p, q)), kExactTol,
                 std::abs(by_events - tvd(p, q)) <= kExactTol},
           tally);
    }
    for (std::size_t i = 0; i < half; ++i) {
      const auto xs = static_cast<Eigen::Index>(uniform_between(rng, 1, 4));
      const auto ys = static_cast<Eigen::Index>(uniform_between(rng, 1, 4));
      const auto marginal = random_distribution(static_cast<std::size_t>(xs), rng);
      Eigen::MatrixXd j1(xs, ys);
      Eigen::MatrixXd j2(xs, ys);
      for (Eigen::Index x = 0; x < xs; ++x) {
        j1.row(x) = marginal[static_cast<std::size_t>(x)] * random_distribution(static_cast<std::size_t>(ys), rng).table().transpose();
        j2.row(x) = marginal[static_cast<std::size_t>(x)] * random_distribution(static_cast<std::size_t>(ys), rng).table().transpose();
      }
      const ConditionalTvd c = conditional_tvd_check(j1, j2);
      emit(rep, {"conditional_tvd", i, static_cast<std::size_t>(xs), static_cast<std::size_t>(ys), 0, 0.0, 0,
                 std::abs(c.lhs - c.rhs), kExactTol, std::abs(c.lhs - c.rhs) <= kExactTol},
           tally);
    }
    for (std::size_t i = 0; i < half; ++i) {
      const std::size_t xs = uniform_between(rng, 1, 6);
      const std::size_t ws = uniform_between(rng, 1, 6);
      const std::size_t outs = uniform_between(rng, 1, 6);
      const auto x = random_distribution(xs, rng);
      const auto y = random_distribution(xs, rng);
      const auto w = random_distribution(ws, rng);
      Eigen::MatrixXi f(static_cast<Eigen::Index>(xs), static_cast<Eigen::Index>(ws));
      for (Eigen::Index a = 0; a < f.rows(); ++a) {
        for (Eigen::Index b = 0; b < f.cols(); ++b) f(a, b) = static_cast<int>(rng.below(outs));
      }
      const PostProcessing pp = postprocessing_check(x, y, w, f, outs);
      emit(rep, {"postprocessing", i, xs, ws, 0, 0.0, 0, pp.lhs, pp.rhs, pp.lhs <= pp.rhs + 1e-15}, tally);
    }
  }

  {
    // Path-type representation counts, coupled across alpha.
    Rng rng = root.named("representation");
    const std::vector<double> alphas{0.25, 0.5, 1.0};
    const CoupledCounts cc = representation_count_coupled(12, alphas, 2, std::max<std::size_t>(trials * 10, 2000), rng);
    const auto means = cc.means();
    for (std::size_t g = 0; g < alphas.size(); ++g) {
      emit(rep, {"representation_l2", g, 12, 0, 0, 0.0, 2, means[g], alphas[g] / 12.0, cc.monotone()}, tally);
    }
  }

  {
    // E_M 2^r ||p_M - U_r||^2 for M ~ G(n, alpha/n) as |A| grows; reported.
    Rng rng = root.named("trend");
    const std::size_t n = 10;
    const double alpha = std::clamp(config.alpha, 0.05, static_cast<double>(n));
    double previous = std::numeric_limits<double>::infinity();
    std::size_t step = 0;
    for (double c : {3.0, 2.0, 1.0, 0.5}) {
      double total = 0.0;
      const std::size_t reps = std::max<std::size_t>(trials, 200);
      for (std::size_t i = 0; i < reps; ++i) {
        const IndicatorSet a = random_indicator_with_deficit(n, c, rng);
        MultiGraph g = sample_gnp(n, alpha, rng);
        while (g.num_edges() > 16) g = sample_gnp(n, alpha, rng);
        total += tvd_bound_chain(a, IncidenceMatrix(g)).mid;
      }
      const double mean = total / static_cast<double>(reps);
      rep.add_row({"l2_trend", cell(std::uint64_t{step++}), cell(std::uint64_t{n}), "", "", cell(c), "", cell(mean),
                   cell(previous), cell(mean <= previous)});
      previous = mean;
    }
  }

  for (const auto& [check, t] : tally) {
    rep.check(check + ": " + std::to_string(t.second) + "/" + std::to_string(t.first) + " pass", t.first == t.second);
  }
  return rep;
}

ExperimentReport cmd_advantage(const ExperimentConfig& config) {
  const HardDistParams params = config.hard_params();
  const std::size_t protocol_trials = config.trials > 0 ? config.trials : 10000;
  const std::size_t curve_trials = 2000;
  const std::size_t table_trials = 20000;
  ExperimentReport rep;
  rep.columns = {"row_type", "automaton", "states", "planted", "phase", "value", "reference", "radius", "pass"};
  const Rng root = Rng(config.seed).named("advantage");
  Rng planted_rng = root.named("planted");
  const Bipartition x0 = random_bipartition(params.n, planted_rng);

  struct Entry {
    std::shared_ptr<const Automaton> automaton;
    bool planted = false;
  };
  const std::vector<Entry> registry{
      {std::make_shared<const Automaton>(identity_automaton()), false},
      {std::make_shared<const Automaton>(saturating_edge_count_automaton(255)), false},
      {std::make_shared<const Automaton>(crossing_parity_automaton(x0)), true},
      {std::make_shared<const Automaton>(monochromatic_count_automaton(x0, 255)), true},
  };

  for (const Entry& entry : registry) {
    const Automaton& alg = *entry.automaton;
    const std::string name = alg.label();
    const std::string states = cell(std::uint64_t{alg.num_states()});
    const std::string planted = cell(entry.planted);
    const PlantedPartition plant = entry.planted ? PlantedPartition(x0) : PlantedPartition();
    Rng curve_rng = root.named("curve-" + name);
    const InformativeIndexReport report = find_informative_index(alg, params, curve_trials, curve_rng, plant);
    for (std::size_t j = 0; j < report.tvd.size(); ++j) {
      rep.add_row({"curve", name, states, planted, cell(std::uint64_t{j}), cell(report.tvd[j]), "", "", ""});
    }
    std::int64_t telescoped = 0;
    for (std::size_t j = 0; j + 1 < report.tvd.size(); ++j) telescoped += report.increment_counts(j);
    const std::int64_t direct = static_cast<std::int64_t>(report.l1_counts.back()) - static_cast<std::int64_t>(report.l1_counts.front());
    const bool telescopes = telescoped == direct;
    rep.add_row({"telescoping", name, states, planted, "", cell(static_cast<double>(telescoped)),
                 cell(static_cast<double>(direct)), "", cell(telescopes)});
    rep.check("telescoping identity exact, " + name, telescopes);
    const double floor_inc = report.c_dist / static_cast<double>(params.k);
    rep.add_row({"informative_index", name, states, planted, cell(std::uint64_t{report.index}), cell(report.increment),
                 cell(floor_inc), "", cell(report.increment + 1e-15 >= floor_inc)});
    rep.check("increment at j* >= C_dist/k, " + name, report.increment + 1e-15 >= floor_inc);
    if (name == "identity") {
      rep.check("oblivious automaton has a zero curve",
                std::all_of(report.tvd.begin(), report.tvd.end(), [](double v) { return v == 0.0; }));
    }

    Rng table_rng = root.named("tables-" + name);
    const ReferenceTables tables = build_reference_tables(alg, params, report.index, table_trials, table_rng, plant);
    const double table_half_tvd = tvd(tables.yes, tables.no) / 2.0;
    const AdvantageEstimate measured = advantage_estimate(
        [&](const BhpInstance& bhp, Rng& rng) { return dbhp_protocol_run(alg, report.index, bhp, tables, rng); },
        [&](Answer label, Rng& rng) {
          return entry.planted ? sample_bhp(params.n, params.alpha, label, x0.side, rng)
                               : sample_bhp(params.n, params.alpha, label, rng);
        },
        protocol_trials, root.named("protocol-" + name));
    const bool meets = measured.advantage >= table_half_tvd - 0.05;
    rep.add_row({"protocol", name, states, planted, cell(std::uint64_t{report.index}), cell(measured.advantage),
                 cell(table_half_tvd), cell(measured.radius), cell(meets)});
    rep.add_row({"table_advantage", name, states, planted, cell(std::uint64_t{report.index}),
                 cell(table_advantage(tables)), cell(table_half_tvd), "", ""});
    if (entry.planted) {
      rep.check("protocol advantage >= table tvd/2 - 0.05, " + name, meets,
                cell(measured.advantage) + " vs " + cell(table_half_tvd));
    }
  }

  // Edge-count threshold decider on the hard distribution: reported only.
  {
    const double threshold = static_cast<double>(params.k) * params.alpha * static_cast<double>(params.n - 1) / 8.0;
    const AdvantageEstimate est = advantage_estimate(
        [&](const std::uint64_t& m, Rng&) {
          return static_cast<double>(m) / 2.0 >= threshold ? Answer::kYes : Answer::kNo;
        },
        [&](Answer label, Rng& rng) { return std::uint64_t{sample_hard(params, label, rng).combined.num_edges()}; },
        std::min<std::size_t>(protocol_trials, 2000), root.named("edge-count-decider"));
    rep.add_row({"edge_count_decider", "edge-count", "", "0", "", cell(est.advantage), "0", cell(est.radius), ""});
  }
  return rep;
}

}  // namespace cutstream
