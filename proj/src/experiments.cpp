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

#include "cutstream/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "cutstream/errors.hpp"
#include "cutstream/graph_io.hpp"
#include "cutstream/reductions.hpp"
#include "cutstream/stream_io.hpp"
#include "cutstream/streaming.hpp"

#ifndef CUTSTREAM_BUILD_TAG
#define CUTSTREAM_BUILD_TAG "unknown"
#endif

namespace cutstream {
namespace {

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sd_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Pr[Binomial(k, q) >= 3].
double binomial_at_least_three(std::size_t k, double q) {
  const auto kd = static_cast<double>(k);
  const double p0 = std::exp(kd * std::log1p(-q));
  const double p1 = kd * q * std::exp((kd - 1.0) * std::log1p(-q));
  const double p2 = kd * (kd - 1.0) / 2.0 * q * q * std::exp((kd - 2.0) * std::log1p(-q));
  // For tiny q the subtraction cancels; the leading term is then accurate.
  const double direct = 1.0 - p0 - p1 - p2;
  const double leading = kd * (kd - 1.0) * (kd - 2.0) / 6.0 * q * q * q;
  return leading < 1e-6 ? leading * std::exp((kd - 3.0) * std::log1p(-q)) : direct;
}

// Pr[|Binomial(n, 1/2) - n/2| >= d], summed exactly in log space.
double binomial_half_two_sided_tail(std::size_t n, double d) {
  const auto nd = static_cast<double>(n);
  double total = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    if (std::abs(jd - nd / 2.0) + 1e-12 < d) continue;
    total += std::exp(std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) - std::lgamma(nd - jd + 1.0) - nd * std::log(2.0));
  }
  return total;
}

// NO instances are solved by exhaustive search within this size.
constexpr std::size_t kGapExactLimit = 20;

std::string join_path(const std::string& prefix, const std::string& suffix) { return prefix + "." + suffix; }

}  // namespace

CaseFilter parse_case_filter(std::string_view text) {
  if (text == "yes") return CaseFilter::kYes;
  if (text == "no") return CaseFilter::kNo;
  if (text == "both") return CaseFilter::kBoth;
  throw InputError("case must be yes, no or both");
}

std::string_view to_string(CaseFilter c) {
  switch (c) {
    case CaseFilter::kYes: return "yes";
    case CaseFilter::kNo: return "no";
    case CaseFilter::kBoth: return "both";
  }
  return "both";
}

std::vector<Answer> cases_of(CaseFilter c) {
  switch (c) {
    case CaseFilter::kYes: return {Answer::kYes};
    case CaseFilter::kNo: return {Answer::kNo};
    case CaseFilter::kBoth: return {Answer::kYes, Answer::kNo};
  }
  return {};
}

void ExperimentConfig::validate() const {
  if (n == 0) throw InputError("--n must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InputError("--alpha must be a nonnegative number");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InputError("--eps must lie in (0, 1)");
  if (t == 0) throw InputError("--t must be positive");
  if (ell == 0) throw InputError("--ell must be positive");
  if (!(c_phase > 0.0)) throw InputError("--c-phase must be positive");
  for (std::size_t g : n_grid) {
    if (g == 0) throw InputError("n grid entries must be positive");
  }
  for (double a : alpha_grid) {
    if (!(a >= 0.0)) throw InputError("alpha grid entries must be nonnegative");
  }
  for (std::size_t g : t_grid) {
    if (g == 0) throw InputError("t grid entries must be positive");
  }
}

HardDistParams ExperimentConfig::hard_params() const { return hard_params(n, alpha); }

HardDistParams ExperimentConfig::hard_params(std::size_t n_row, double alpha_row) const {
  return HardDistParams::make(n_row, epsilon, alpha_row, c_phase, k_override);
}

std::string build_tag() { return CUTSTREAM_BUILD_TAG; }

void ExperimentReport::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw std::logic_error("row has " + std::to_string(cells.size()) + " cells for " +
                           std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(cells));
}

void ExperimentReport::check(std::string name, bool passed_now, std::string detail) {
  contracts.push_back({std::move(name), passed_now, std::move(detail)});
}

bool ExperimentReport::passed() const {
  return std::all_of(contracts.begin(), contracts.end(), [](const Contract& c) { return c.passed; });
}

std::vector<std::string> echo_columns() {
  return {"command", "build", "seed", "n", "alpha", "eps", "t", "ell", "k", "c_phase", "trials", "case"};
}

std::vector<std::string> echo_cells(const ExperimentConfig& c) {
  return {c.command,           build_tag(),     cell(c.seed),    cell(std::uint64_t{c.n}),
          cell(c.alpha),       cell(c.epsilon), cell(std::uint64_t{c.t}), cell(std::uint64_t{c.ell}),
          c.k_override > 0 ? cell(std::uint64_t{c.k_override}) : std::string("auto"), cell(c.c_phase), cell(std::uint64_t{c.trials}),
          std::string(to_string(c.cases))};
}

void write_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentReport& report) {
  const auto echo = echo_cells(config);
  const auto line = [&out](const std::vector<std::string>& a, const std::vector<std::string>& b) {
    bool first = true;
    for (const auto* part : {&a, &b}) {
      for (const auto& c : *part) {
        if (!first) out << ',';
        out << c;
        first = false;
      }
    }
    out << '\n';
  };
  line(echo_columns(), report.columns);
  for (const auto& row : report.rows) line(echo, row);
}

std::string cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string cell(std::uint64_t x) { return std::to_string(x); }
std::string cell(bool b) { return b ? "1" : "0"; }

double flatness(const std::vector<double>& values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

GnpCycleScanner::GnpCycleScanner(std::size_t n)
    : n_(n), seen_(n, 0), parent_(n), vertices_(n), edges_(n) {}

std::uint32_t GnpCycleScanner::find(std::uint32_t x) {
  if (seen_[x] != stamp_) {
    seen_[x] = stamp_;
    parent_[x] = x;
    vertices_[x] = 1;
    edges_[x] = 0;
    return x;
  }
  while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
  return x;
}

GnpCycleScanner::Result GnpCycleScanner::scan(double alpha, Rng& rng) {
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    stamp_ = 1;
  }
  Result r;
  for_each_gnp_edge(n_, alpha / static_cast<double>(n_), rng, [&](const Edge& e) {
    ++r.edges;
    std::uint32_t a = find(e.u);
    std::uint32_t b = find(e.v);
    if (a != b) {
      if (vertices_[a] < vertices_[b]) std::swap(a, b);
      parent_[b] = a;
      vertices_[a] += vertices_[b];
      edges_[a] += edges_[b] + 1;
    } else {
      ++edges_[a];
    }
    if (edges_[a] >= vertices_[a]) r.cycle = true;
    if (edges_[a] > vertices_[a]) r.complex = true;
  });
  return r;
}

double CycleStats::probability() const {
  return trials == 0 ? 0.0 : static_cast<double>(cycle_events) / static_cast<double>(trials);
}

double CycleStats::complex_frequency() const {
  return trials == 0 ? 0.0 : static_cast<double>(complex_events) / static_cast<double>(trials);
}

double CycleStats::complex_scale() const {
  const double ln = std::log(static_cast<double>(n));
  return alpha * alpha * std::pow(ln, 4.0) / static_cast<double>(n);
}

std::size_t cycle_trials_for(std::size_t n, double alpha, std::size_t minimum, double target) {
  const double expected = alpha > 0.0 ? expected_cycle_count(n, alpha) : 0.0;
  if (expected <= 0.0) return minimum;
  return std::max(minimum, static_cast<std::size_t>(std::ceil(target / expected)));
}

CycleStats cycle_statistics(std::size_t n, double alpha, std::size_t trials, const Rng& rng) {
  CycleStats s;
  s.n = n;
  s.alpha = alpha;
  s.trials = trials;
  s.expected_cycles = expected_cycle_count(n, alpha);
  // Blocks of trials share one substream; block b always covers the same
  // trial indices, so results do not depend on scheduling.
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (trials + kBlock - 1) / kBlock;
  const auto per_block = parallel_trials(blocks, [&](std::size_t b) {
    GnpCycleScanner scanner(n);
    Rng block_rng = rng.substream(b);
    std::pair<std::size_t, std::size_t> counts{0, 0};
    const std::size_t end = std::min(trials, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const auto r = scanner.scan(alpha, block_rng);
      counts.first += r.cycle;
      counts.second += r.complex;
    }
    return counts;
  });
  for (const auto& [c, x] : per_block) {
    s.cycle_events += c;
    s.complex_events += x;
  }
  return s;
}

std::uint64_t OrderingStats::pairs_at_least(std::size_t j) const {
  std::uint64_t total = 0;
  for (std::size_t i = j; i < histogram.size(); ++i) total += histogram[i];
  return total;
}

double OrderingStats::collision_fraction() const {
  return trials == 0 ? 0.0 : static_cast<double>(collisions) / static_cast<double>(trials);
}

double OrderingStats::scaled_collision() const {
  return collision_fraction() / (params.alpha * std::log(1.0 / params.alpha));
}

double OrderingStats::expected_triples() const {
  const auto n = static_cast<double>(params.n);
  const double pairs = label == Answer::kYes ? n * (n - 1.0) / 4.0 : n * (n - 1.0) / 2.0;
  const double q = label == Answer::kYes ? params.alpha / n : params.alpha / (2.0 * n);
  return static_cast<double>(trials) * pairs * binomial_at_least_three(params.k, q);
}

OrderingStats ordering_statistics(const HardDistParams& params, Answer label, std::size_t trials,
                                  const Rng& rng) {
  OrderingStats s;
  s.label = label;
  s.params = params;
  s.trials = trials;
  s.window = default_collision_window(params);
  s.histogram.assign(2, 0);
  struct Trial {
    MultiplicityProfile profile;
    bool collides = false;
  };
  const auto results = parallel_trials(trials, [&](std::size_t i) {
    Rng trial = rng.substream(i);
    Trial t;
    t.profile = sample_multiplicity_profile(params, label, trial);
    t.collides = random_order_collides(t.profile, s.window, trial);
    return t;
  });
  double edges = 0.0;
  for (const Trial& t : results) {
    const auto& h = t.profile.histogram;
    if (h.size() > s.histogram.size()) s.histogram.resize(h.size(), 0);
    for (std::size_t j = 1; j < h.size(); ++j) s.histogram[j] += h[j];
    s.instances_with_triple += t.profile.with_multiplicity_at_least(3) > 0;
    s.collisions += t.collides;
    edges += static_cast<double>(t.profile.edges);
  }
  s.mean_edges = trials == 0 ? 0.0 : edges / static_cast<double>(trials);
  return s;
}

GapSample gap_sample(const HardDistParams& params, Answer label, Rng& rng) {
  const PhasedInstance inst = sample_hard(params, label, rng);
  GapSample g;
  g.n = params.n;
  g.label = label;
  g.m = inst.combined.num_edges();
  if (label == Answer::kYes) {
    g.opt = g.m;
    g.certified = is_bipartite(inst.combined) && cut_value(inst.combined, *inst.hidden) == g.m;
  } else {
    g.opt = max_cut_exact(inst.combined).value;
    g.certified = true;
  }
  return g;
}

ExperimentReport cmd_gen(const ExperimentConfig& config) {
  if (config.out.empty() || config.out == "-") throw InputError("gen needs --out PATH (a file prefix)");
  ExperimentReport rep;
  rep.columns = {"kind", "case_row", "edges_file", "stream_file", "vertices", "m", "ordering", "reload_ok", "bipartite"};
  const Rng root = Rng(config.seed).named("gen");
  const Ordering ordering = parse_ordering(config.ordering);
  for (Answer label : cases_of(config.cases)) {
    Rng rng = root.substream(label == Answer::kYes ? 0 : 1);
    const std::string tag(to_string(label));
    MultiGraph graph;
    EdgeStream stream;
    if (config.kind == "hard") {
      const HardDistParams params = config.hard_params();
      const PhasedInstance inst = sample_hard(params, label, rng);
      graph = inst.combined;
      switch (ordering) {
        case Ordering::kCanonical: stream = canonical_stream(inst, rng); break;
        case Ordering::kUniform: stream = uniform_stream(inst, rng); break;
        case Ordering::kIid: stream = iid_stream(params, label, config.ell * config.n, rng); break;
        case Ordering::kAdversarial: throw InputError("adversarial order exists only for --kind bhh");
      }
    } else if (config.kind == "bhh") {
      const BhhInstance inst = sample_bhh(config.n, config.t, label, rng);
      const GadgetGraph gadget = bhh_build(inst);
      graph = gadget.graph();
      stream = adversarial_stream(gadget, inst, config.seed);
    } else if (config.kind == "gnp") {
      graph = sample_gnp(config.n, config.alpha, rng);
      stream.n = config.n;
      stream.ordering = Ordering::kUniform;
      stream.items.assign(graph.edges().begin(), graph.edges().end());
      std::shuffle(stream.items.begin(), stream.items.end(), rng);
    } else {
      throw InputError("unknown --kind '" + config.kind + "' (hard, bhh, gnp)");
    }
    stream.seed = config.seed;
    const std::string edges_file = join_path(config.out, tag + ".edges");
    const std::string stream_file = join_path(config.out, tag + ".stream");
    save_edge_list(edges_file, graph);
    save_stream(stream_file, stream);
    const MultiGraph reloaded = load_edge_list(edges_file);
    const EdgeStream restream = load_stream(stream_file);
    const bool reload_ok = reloaded == graph && restream.n == stream.n && restream.items == stream.items &&
                           restream.ordering == stream.ordering && restream.label == stream.label &&
                           restream.seed == stream.seed;
    const bool bipartite = is_bipartite(reloaded);
    rep.check("round-trip " + tag, reload_ok);
    if (config.kind != "gnp" && label == Answer::kYes) rep.check("yes instance bipartite", bipartite);
    rep.add_row({config.kind, tag, edges_file, stream_file, cell(std::uint64_t{graph.num_vertices()}),
                 cell(std::uint64_t{graph.num_edges()}), std::string(to_string(stream.ordering)), cell(reload_ok),
                 cell(bipartite)});
    if (config.kind == "gnp") break;
  }
  return rep;
}

ExperimentReport cmd_gap(const ExperimentConfig& config) {
  const std::vector<std::size_t> grid = config.n_grid.empty() ? std::vector{config.n} : config.n_grid;
  const auto cases = cases_of(config.cases);
  for (std::size_t n : grid) {
    if (n > kGapExactLimit && std::find(cases.begin(), cases.end(), Answer::kNo) != cases.end()) {
      throw SizeError("gap: NO instances need exact search, which is limited to n <= 20");
    }
  }
  const std::size_t trials = config.trials > 0 ? config.trials : 200;
  ExperimentReport rep;
  rep.columns = {"row_type", "n_row", "k_row", "case_row", "trial", "m", "opt", "ratio", "certified",
                 "mean", "ci95", "reference"};
  std::vector<double> no_means;
  for (std::size_t n : grid) {
    const HardDistParams params = config.hard_params(n, config.alpha);
    for (Answer label : cases) {
      const Rng rng = Rng(config.seed).named("gap").substream(n).substream(label == Answer::kYes ? 0 : 1);
      const auto samples = parallel_trials(trials, [&](std::size_t i) {
        Rng trial = rng.substream(i);
        return gap_sample(params, label, trial);
      });
      std::vector<double> ratios;
      std::vector<double> ms;
      bool all_certified = true;
      bool yes_exact = true;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const GapSample& g = samples[i];
        const double ratio = g.m == 0 ? 1.0 : static_cast<double>(g.opt) / static_cast<double>(g.m);
        ratios.push_back(ratio);
        ms.push_back(static_cast<double>(g.m));
        all_certified = all_certified && g.certified;
        if (label == Answer::kYes) yes_exact = yes_exact && g.opt == g.m;
        rep.add_row({"sample", cell(std::uint64_t{n}), cell(std::uint64_t{params.k}), std::string(to_string(label)),
                     cell(std::uint64_t{i}), cell(g.m), cell(g.opt), cell(ratio), cell(g.certified), "", "", ""});
      }
      const double mean = mean_of(ratios);
      const double ci = 1.96 * sd_of(ratios) / std::sqrt(static_cast<double>(trials));
      const std::string tag(to_string(label));
      rep.add_row({"summary", cell(std::uint64_t{n}), cell(std::uint64_t{params.k}), tag, "", "", "", "",
                   cell(all_certified), cell(mean), cell(ci),
                   cell(label == Answer::kYes ? 1.0 : (1.0 + params.epsilon) / 2.0)});
      // Each phase keeps an edge with probability alpha/(2n) per pair in
      // both cases, so E m = k alpha (n-1)/4.
      const double expected_m = static_cast<double>(params.k) * params.alpha * static_cast<double>(n - 1) / 4.0;
      const double m_mean = mean_of(ms);
      // YES edges are Binomial(k P(n-P), q) with P ~ Binomial(n, 1/2) shared
      // across phases, so Var m = kq(1-q) n(n-1)/4 + (kq)^2 n(n-1)/8 exactly.
      const double kq = static_cast<double>(params.k) * params.alpha / static_cast<double>(n);
      const double q = params.alpha / static_cast<double>(n);
      const double nn = static_cast<double>(n) * static_cast<double>(n - 1);
      // NO edges are Binomial(k n(n-1)/2, q/2).
      const double m_var = label == Answer::kYes
                               ? kq * (1.0 - q) * nn / 4.0 + kq * kq * nn / 8.0
                               : kq / 2.0 * (1.0 - q / 2.0) * nn / 2.0;
      const double m_se = std::sqrt(m_var / static_cast<double>(trials));
      rep.add_row({"edge_count", cell(std::uint64_t{n}), cell(std::uint64_t{params.k}), tag, "", "", "", "", "",
                   cell(m_mean), cell(1.96 * m_se), cell(expected_m)});
      rep.check("certificates n=" + std::to_string(n) + " " + tag, all_certified);
      if (label == Answer::kYes) {
        rep.check("yes opt = m at n=" + std::to_string(n), yes_exact);
        rep.check("yes m within 3 sigma of k alpha (n-1)/4 at n=" + std::to_string(n),
                  std::abs(m_mean - expected_m) <= 3.0 * m_se + 1e-9,
                  "mean " + cell(m_mean) + " vs " + cell(expected_m));
      } else {
        no_means.push_back(mean);
      }
    }
  }
  for (std::size_t i = 1; i < no_means.size(); ++i) {
    rep.check("no mean ratio nonincreasing in n", no_means[i] <= no_means[i - 1],
              cell(no_means[i - 1]) + " -> " + cell(no_means[i]));
  }
  return rep;
}

ExperimentReport cmd_cycles(const ExperimentConfig& config) {
  const std::vector<double> grid = config.alpha_grid.empty() ? std::vector{0.05, 0.1, 0.2} : config.alpha_grid;
  ExperimentReport rep;
  rep.columns = {"alpha_row", "trials_row", "cycle_events", "pr_cycle", "expected_cycles", "pr_over_expected",
                 "pr_over_alpha3", "complex_events", "complex_freq", "complex_scale", "match_30pct"};
  std::vector<double> scaled;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double alpha = grid[g];
    if (alpha > static_cast<double>(config.n)) throw InputError("alpha/n must lie in [0, 1]");
    const std::size_t trials = config.trials > 0 ? config.trials : cycle_trials_for(config.n, alpha, 10000, 120.0);
    const CycleStats s = cycle_statistics(config.n, alpha, trials, Rng(config.seed).named("cycles").substream(g));
    const double pr = s.probability();
    const double ratio = s.expected_cycles > 0.0 ? pr / s.expected_cycles : (s.cycle_events == 0 ? 1.0 : 0.0);
    const bool match = std::abs(ratio - 1.0) <= 0.3;
    rep.add_row({cell(alpha), cell(std::uint64_t{trials}), cell(std::uint64_t{s.cycle_events}), cell(pr),
                 cell(s.expected_cycles), cell(ratio), cell(alpha > 0 ? pr / std::pow(alpha, 3.0) : 0.0),
                 cell(std::uint64_t{s.complex_events}), cell(s.complex_frequency()), cell(s.complex_scale()),
                 cell(match)});
    rep.check("cycle probability within 30% of expected count, alpha=" + cell(alpha), match, cell(ratio));
    rep.check("complex frequency below alpha^2 ln^4 n / n, alpha=" + cell(alpha),
              s.complex_frequency() <= s.complex_scale() || alpha == 0.0, cell(s.complex_frequency()));
    if (alpha > 0.0) scaled.push_back(pr / std::pow(alpha, 3.0));
  }
  if (scaled.size() >= 2) rep.check("Pr[cycle]/alpha^3 flat within 3x", flatness(scaled) <= 3.0, cell(flatness(scaled)));
  return rep;
}

ExperimentReport cmd_ordering(const ExperimentConfig& config) {
  const std::vector<double> grid = config.alpha_grid.empty() ? std::vector{0.02, 0.05, 0.1} : config.alpha_grid;
  const std::size_t trials = config.trials > 0 ? config.trials : 10000;
  ExperimentReport rep;
  rep.columns = {"alpha_row", "k_row", "case_row", "window", "mean_m", "pairs_mult2", "pairs_mult3plus",
                 "instances_with_mult3", "expected_mult3", "collision_fraction", "alpha_log_inv_alpha", "scaled"};
  // Degenerate profiles: a simple union never collides; two copies of one
  // edge always do once the window is at least 1.
  {
    Rng rng = Rng(config.seed).named("ordering-sanity");
    MultiplicityProfile simple{5, {0, 5}};
    MultiplicityProfile twin{2, {0, 0, 1}};
    rep.check("simple union collision fraction 0", collision_fraction(simple, 10, 100, rng) == 0.0);
    rep.check("two-copy union collision fraction 1", collision_fraction(twin, 2, 100, rng) == 1.0);
  }
  for (Answer label : cases_of(config.cases)) {
    std::vector<double> scaled;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const HardDistParams params = config.hard_params(config.n, grid[g]);
      const OrderingStats s = ordering_statistics(
          params, label, trials, Rng(config.seed).named("ordering").substream(g).substream(label == Answer::kYes));
      const double expected = s.expected_triples();
      const auto observed = static_cast<double>(s.pairs_at_least(3));
      rep.add_row({cell(grid[g]), cell(std::uint64_t{params.k}), std::string(to_string(label)),
                   cell(std::uint64_t{s.window}), cell(s.mean_edges), cell(s.histogram.size() > 2 ? s.histogram[2] : 0),
                   cell(s.pairs_at_least(3)), cell(s.instances_with_triple), cell(expected), cell(s.collision_fraction()),
                   cell(grid[g] * std::log(1.0 / grid[g])), cell(s.scaled_collision())});
      rep.check("multiplicity>=3 count consistent with Binomial(k,q) expectation, alpha=" + cell(grid[g]) + " " +
                    std::string(to_string(label)),
                std::abs(observed - expected) <= 5.0 * std::sqrt(expected) + 5.0,
                cell(observed) + " vs " + cell(expected));
      scaled.push_back(s.scaled_collision());
    }
    if (scaled.size() >= 2) {
      rep.check("collision fraction / (alpha log 1/alpha) flat within 3x, " + std::string(to_string(label)),
                flatness(scaled) <= 3.0, cell(flatness(scaled)));
    }
  }
  return rep;
}

ExperimentReport cmd_bhh(const ExperimentConfig& config) {
  const std::vector<std::size_t> grid = config.t_grid.empty() ? std::vector{config.t} : config.t_grid;
  const std::size_t trials = config.trials > 0 ? config.trials : 1000;
  ExperimentReport rep;
  rep.columns = {"row_type", "t_row", "trial", "case_row", "m", "maxcut", "expected_maxcut", "decision",
                 "correct", "structure_ok", "gap_ratio", "gap_bound"};
  for (std::size_t ti = 0; ti < grid.size(); ++ti) {
    const std::size_t t = grid[ti];
    if (config.n % (2 * t) != 0) throw InputError("bhh: n must be a multiple of 2t");
    const std::size_t n = config.n;
    const std::size_t blocks = n / t;
    struct Outcome {
      Answer label = Answer::kYes;
      std::uint64_t m = 0;
      std::uint64_t maxcut = 0;
      std::uint64_t expected = 0;
      Answer decision = Answer::kYes;
      bool structure = false;
    };
    const Rng rng = Rng(config.seed).named("bhh").substream(t);
    const auto outcomes = parallel_trials(trials, [&](std::size_t i) {
      Rng trial = rng.substream(i);
      Outcome o;
      const auto cases = cases_of(config.cases);
      o.label = cases.size() == 1 ? cases[0] : (trial.coin() ? Answer::kYes : Answer::kNo);
      const BhhInstance inst = sample_bhh(n, t, o.label, trial);
      const MultiGraph g = bhh_build(inst).graph();
      o.m = g.num_edges();
      o.maxcut = max_cut_pseudoforest(g);
      o.expected = o.label == Answer::kYes ? 4 * n : 4 * n - blocks;
      o.decision = bhh_decide(static_cast<double>(o.maxcut), n, t);
      const ComponentCensus census = classify_components(g);
      std::size_t odd_cycles = 0;
      for (std::size_t b = 0; b < blocks; ++b) odd_cycles += gadget_cycle_length(inst, b) % 2;
      o.structure = census.unicyclic == blocks && census.trees == 0 && census.complex == 0 &&
                    census.largest == 4 * t && o.m == 4 * n && o.m - o.maxcut == odd_cycles;
      return o;
    });
    std::size_t correct = 0;
    bool formulas = true;
    bool structure = true;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const Outcome& o = outcomes[i];
      const bool ok = o.decision == o.label;
      correct += ok;
      formulas = formulas && o.maxcut == o.expected;
      structure = structure && o.structure;
      rep.add_row({"trial", cell(std::uint64_t{t}), cell(std::uint64_t{i}), std::string(to_string(o.label)), cell(o.m),
                   cell(o.maxcut), cell(o.expected), std::string(to_string(o.decision)), cell(ok), cell(o.structure),
                   "", ""});
    }
    const double ratio = static_cast<double>(4 * n) / static_cast<double>(4 * n - blocks);
    const double bound = 1.0 + 1.0 / (2.0 * static_cast<double>(t));
    const AdvantageEstimate adv = make_advantage_estimate(correct, trials);
    rep.add_row({"summary", cell(std::uint64_t{t}), "", "", "", "", "", "", cell(adv.advantage + 0.5), cell(structure),
                 cell(ratio), cell(bound)});
    const std::string tag = "t=" + std::to_string(t);
    rep.check("decision correct on every trial, " + tag, correct == trials,
              std::to_string(correct) + "/" + std::to_string(trials));
    rep.check("max-cut is 4n (YES) or 4n - n/t (NO), " + tag, formulas);
    rep.check("gadget is n/t vertex-disjoint unicyclic components with the stated parity, " + tag, structure);
    rep.check("gap ratio between 1 + 1/(4t) and 1 + 1/(2t), " + tag,
              ratio >= 1.0 + 1.0 / (4.0 * static_cast<double>(t)) - 1e-12 && ratio <= bound + 1e-12);
  }
  return rep;
}

ExperimentReport cmd_iid(const ExperimentConfig& config) {
  const std::vector<double> grid = config.alpha_grid.empty() ? std::vector{0.05, 0.1, 0.2} : config.alpha_grid;
  const std::size_t trials = config.trials > 0 ? config.trials : 200;
  ExperimentReport rep;
  rep.columns = {"row_type", "alpha_row", "k_row", "case_row", "delta", "mean_T", "target", "value", "reference",
                 "scaled"};
  const auto n = static_cast<std::uint64_t>(config.n);
  for (Answer label : cases_of(config.cases)) {
    std::vector<double> scaled;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      // Stream length l n needs k = C l / (alpha eps^2) phases.
      const HardDistParams params = HardDistParams::make(config.n, config.epsilon, grid[g],
                                                         config.c_phase * static_cast<double>(config.ell),
                                                         config.k_override);
      const Rng rng = Rng(config.seed).named("iid").substream(g).substream(label == Answer::kYes);
      struct Trial {
        std::uint64_t total = 0;
        std::uint64_t dup_phases = 0;
      };
      const auto results = parallel_trials(trials, [&](std::size_t i) {
        Rng trial = rng.substream(i);
        const IidPhasePlan plan = sample_iid_plan(params, label, trial);
        Trial t;
        t.total = plan.total();
        std::vector<std::pair<Vertex, Vertex>> keys;
        for (std::uint64_t size : plan.phase_sizes) {
          keys.clear();
          for (std::uint64_t j = 0; j < size; ++j) keys.push_back(sample_underlying_edge(config.n, plan, trial).key());
          std::sort(keys.begin(), keys.end());
          t.dup_phases += std::adjacent_find(keys.begin(), keys.end()) != keys.end();
        }
        return t;
      });
      double total_t = 0.0;
      double dups = 0.0;
      std::size_t attained = 0;
      for (const Trial& t : results) {
        total_t += static_cast<double>(t.total);
        dups += static_cast<double>(t.dup_phases);
        attained += t.total >= config.ell * n;
      }
      const double mean_t = total_t / static_cast<double>(trials);
      const double dup_mean = dups / static_cast<double>(trials);
      const double kalpha2 = static_cast<double>(params.k) * grid[g] * grid[g];
      const std::string tag(to_string(label));
      rep.add_row({"duplicates", cell(grid[g]), cell(std::uint64_t{params.k}), tag, "", cell(mean_t), "",
                   cell(dup_mean), cell(kalpha2), cell(dup_mean / kalpha2)});
      const double attained_frac = static_cast<double>(attained) / static_cast<double>(trials);
      rep.add_row({"length", cell(grid[g]), cell(std::uint64_t{params.k}), tag, "", cell(mean_t),
                   cell(std::uint64_t{config.ell * n}), cell(attained_frac), cell(1.0 - 1.0 / static_cast<double>(n)), ""});
      rep.check("stream length l n attained w.h.p., alpha=" + cell(grid[g]) + " " + tag,
                attained_frac >= 1.0 - 1.0 / static_cast<double>(n) - 3.0 / std::sqrt(static_cast<double>(trials)),
                cell(attained_frac));
      scaled.push_back(dup_mean / kalpha2);
    }
    if (scaled.size() >= 2) {
      rep.check("duplicate phases / (k alpha^2) flat within 3x, " + std::string(to_string(label)),
                flatness(scaled) <= 3.0, cell(flatness(scaled)));
    }
  }
  // n^2/4 - |P||Q| = (|P| - n/2)^2, so a deficit of delta n/4 is a deviation
  // of sqrt(delta n)/2 in |P|, with Hoeffding tail 2 exp(-delta/2).
  {
    const std::size_t draws = std::max<std::size_t>(trials * 50, 10000);
    Rng rng = Rng(config.seed).named("iid-pq");
    std::vector<std::uint64_t> sizes(draws);
    std::binomial_distribution<std::uint64_t> side(n, 0.5);
    for (auto& s : sizes) s = side(rng);
    for (double delta : {1.0, 2.0, 4.0, 8.0}) {
      const double dev = std::sqrt(delta * static_cast<double>(n)) / 2.0;
      std::size_t hits = 0;
      for (std::uint64_t s : sizes) hits += std::abs(static_cast<double>(s) - static_cast<double>(n) / 2.0) + 1e-12 >= dev;
      const double emp = static_cast<double>(hits) / static_cast<double>(draws);
      const double exact = binomial_half_two_sided_tail(config.n, dev);
      const double bound = std::min(1.0, 2.0 * std::exp(-delta / 2.0));
      rep.add_row({"pq_tail", "", "", "", cell(delta), "", "", cell(emp), cell(exact), cell(bound)});
      rep.check("|P||Q| tail matches Binomial(n,1/2), delta=" + cell(delta),
                std::abs(emp - exact) <= 5.0 * std::sqrt(exact * (1.0 - exact) / static_cast<double>(draws)) +
                                             5.0 / static_cast<double>(draws),
                cell(emp) + " vs " + cell(exact));
      rep.check("|P||Q| tail below 2 exp(-delta/2), delta=" + cell(delta), exact <= bound + 1e-12);
    }
  }
  return rep;
}

ExperimentReport cmd_run(const ExperimentConfig& config) {
  ExperimentReport rep;
  rep.columns = {"algorithm", "params", "output", "peak_bits", "stream_seed", "case_row", "ordering", "m",
                 "budget_exceeded", "opt", "in_range"};
  AlgorithmOptions options;
  options.walkers = config.walkers;
  options.length = config.length;
  options.sample = config.sample;
  options.seed = config.seed;
  std::vector<EdgeStream> streams;
  if (!config.stream_path.empty()) {
    streams.push_back(load_stream(config.stream_path));
  } else {
    const HardDistParams params = config.hard_params();
    const Ordering ordering = parse_ordering(config.ordering);
    for (Answer label : cases_of(config.cases)) {
      Rng rng = Rng(config.seed).named("run").substream(label == Answer::kYes);
      if (ordering == Ordering::kIid) {
        streams.push_back(iid_stream(params, label, config.ell * config.n, rng));
      } else {
        const PhasedInstance inst = sample_hard(params, label, rng);
        streams.push_back(ordering == Ordering::kCanonical ? canonical_stream(inst, rng) : uniform_stream(inst, rng));
      }
      streams.back().seed = config.seed;
    }
  }
  for (const EdgeStream& s : streams) {
    auto alg = make_algorithm(config.algorithm, options);
    const RunResult r = run(*alg, s.n, s.items, config.budget_bits);
    const MultiGraph g(s.n, s.items);
    std::string opt_cell;
    std::string range_cell;
    std::optional<std::uint64_t> opt;
    if (is_bipartite(g)) {
      opt = g.num_edges();
    } else if (s.n <= kMaxExactCutVertices) {
      opt = max_cut_exact(g).value;
    }
    if (opt && config.algorithm == "edge-count") {
      const double est = std::get<double>(r.output);
      const bool in_range = est >= static_cast<double>(*opt) / 2.0 && est <= static_cast<double>(*opt);
      range_cell = cell(in_range);
      rep.check("edge-count estimate within [OPT/2, OPT]", in_range);
    }
    if (opt) opt_cell = cell(*opt);
    if (config.budget_bits) rep.check("state within budget", !r.budget_exceeded, cell(std::uint64_t{r.peak_bits}));
    rep.add_row({alg->name(), alg->params(), to_string(r.output), cell(std::uint64_t{r.peak_bits}),
                 cell(s.seed), s.label ? std::string(to_string(*s.label)) : "none",
                 std::string(to_string(s.ordering)), cell(std::uint64_t{s.items.size()}), cell(r.budget_exceeded),
                 opt_cell, range_cell});
  }
  return rep;
}

std::vector<std::string> command_names() {
  return {"gen", "gap", "cycles", "ordering", "fourier", "advantage", "bhh", "iid", "run"};
}

ExperimentReport dispatch(const ExperimentConfig& config) {
  config.validate();
  const std::string& c = config.command;
  if (c == "gen") return cmd_gen(config);
  if (c == "gap") return cmd_gap(config);
  if (c == "cycles") return cmd_cycles(config);
  if (c == "ordering") return cmd_ordering(config);
  if (c == "fourier") return cmd_fourier(config);
  if (c == "advantage") return cmd_advantage(config);
  if (c == "bhh") return cmd_bhh(config);
  if (c == "iid") return cmd_iid(config);
  if (c == "run") return cmd_run(config);
  throw InputError("unknown command '" + c + "'");
}

}  // namespace cutstream
