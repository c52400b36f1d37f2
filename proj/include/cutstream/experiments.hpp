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

#ifndef CUTSTREAM_EXPERIMENTS_HPP_
#define CUTSTREAM_EXPERIMENTS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cutstream/distributions.hpp"
#include "cutstream/fourier.hpp"
#include "cutstream/graph.hpp"
#include "cutstream/rng.hpp"

namespace cutstream {

enum class CaseFilter : std::uint8_t { kYes, kNo, kBoth };

CaseFilter parse_case_filter(std::string_view text);
std::string_view to_string(CaseFilter c);
std::vector<Answer> cases_of(CaseFilter c);

// Flags shared by every subcommand. Zero trials selects the subcommand's
// default; empty grids select the subcommand's default sweep.
struct ExperimentConfig {
  std::string command;
  std::size_t n = 16;
  double alpha = 0.5;
  double epsilon = 0.3;
  std::size_t t = 2;
  std::size_t ell = 2;
  std::size_t k_override = 0;
  double c_phase = kDefaultPhaseConstant;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  CaseFilter cases = CaseFilter::kBoth;
  std::string out = "-";

  std::vector<std::size_t> n_grid;
  std::vector<double> alpha_grid;
  std::vector<std::size_t> t_grid;

  // gen
  std::string kind = "hard";
  std::string ordering = "canonical";
  // run
  std::string algorithm = "edge-count";
  std::string stream_path;
  std::size_t walkers = 0;
  std::size_t length = 0;
  std::size_t sample = 12;
  std::optional<std::size_t> budget_bits;
  // fourier
  std::string indicator_path;

  // Throws InputError when a field violates the subcommand's preconditions.
  void validate() const;
  HardDistParams hard_params() const;
  HardDistParams hard_params(std::size_t n, double alpha) const;
};

// git describe of the source tree at configure time.
std::string build_tag();

struct Contract {
  std::string name;
  bool passed = true;
  std::string detail;
};

// Rows hold only the subcommand's own columns; write_csv prepends the
// seed, build tag and parameter echo to every row.
struct ExperimentReport {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Contract> contracts;

  void add_row(std::vector<std::string> cells);
  void check(std::string name, bool passed, std::string detail = {});
  bool passed() const;
};

std::vector<std::string> echo_columns();
std::vector<std::string> echo_cells(const ExperimentConfig& config);
void write_csv(std::ostream& out, const ExperimentConfig& config, const ExperimentReport& report);

// Decimal rendering used in every CSV cell; %.10g for doubles.
std::string cell(double x);
std::string cell(std::uint64_t x);
std::string cell(bool b);

// Runs fn(i) for i in [0, trials) across hardware threads and returns the
// results in trial order, so the output is independent of scheduling.
template <typename Fn>
auto parallel_trials(std::size_t trials, Fn&& fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> results(trials);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), trials));
  if (workers <= 1) {
    for (std::size_t i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < trials; i += workers) results[i] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

// max/min of strictly positive values; infinity if some value is not positive.
double flatness(const std::vector<double>& values);

// Cycle and complex-component detection on G(n, alpha/n) without building
// the graph: a union-find whose arrays are invalidated by a trial stamp.
class GnpCycleScanner {
 public:
  explicit GnpCycleScanner(std::size_t n);

  struct Result {
    bool cycle = false;
    bool complex = false;
    std::size_t edges = 0;
  };

  Result scan(double alpha, Rng& rng);

 private:
  std::uint32_t find(std::uint32_t x);

  std::size_t n_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> vertices_;
  std::vector<std::uint32_t> edges_;
};

struct CycleStats {
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t trials = 0;
  std::size_t cycle_events = 0;
  std::size_t complex_events = 0;
  double expected_cycles = 0.0;

  double probability() const;
  double complex_frequency() const;
  // alpha^2 ln^4 n / n.
  double complex_scale() const;
};

// Trials needed so the expected number of cycle events reaches `target`,
// but never fewer than `minimum`.
std::size_t cycle_trials_for(std::size_t n, double alpha, std::size_t minimum, double target);
CycleStats cycle_statistics(std::size_t n, double alpha, std::size_t trials, const Rng& rng);

struct OrderingStats {
  Answer label = Answer::kYes;
  HardDistParams params;
  std::size_t trials = 0;
  std::size_t window = 0;
  std::vector<std::uint64_t> histogram;  // summed over trials; index = multiplicity
  std::uint64_t instances_with_triple = 0;
  std::uint64_t collisions = 0;
  double mean_edges = 0.0;

  std::uint64_t pairs_at_least(std::size_t j) const;
  double collision_fraction() const;
  // collision_fraction / (alpha ln(1/alpha)).
  double scaled_collision() const;
  // Expected total number of multiplicity >= 3 pairs over all trials.
  double expected_triples() const;
};

OrderingStats ordering_statistics(const HardDistParams& params, Answer label, std::size_t trials,
                                  const Rng& rng);

struct GapSample {
  std::size_t n = 0;
  Answer label = Answer::kYes;
  std::uint64_t m = 0;
  std::uint64_t opt = 0;
  bool certified = false;  // YES: bipartite certificate matching R; NO: exact search
};

// Exact search is used for NO instances (n <= 20); YES instances are
// certified bipartite at any n.
GapSample gap_sample(const HardDistParams& params, Answer label, Rng& rng);

// Exactly |A| = size points, uniformly among such subsets.
IndicatorSet random_indicator(std::size_t n, std::size_t size, Rng& rng);
// |A| = ceil(2^{n - c'}).
IndicatorSet random_indicator_with_deficit(std::size_t n, double c_prime, Rng& rng);
// r rows with uniform distinct endpoints (repeats allowed across rows).
IncidenceMatrix random_incidence(std::size_t n, std::size_t r, Rng& rng);

// Random probability table of the given size.
DiscreteDistribution random_distribution(std::size_t size, Rng& rng);

ExperimentReport cmd_gen(const ExperimentConfig& config);
ExperimentReport cmd_gap(const ExperimentConfig& config);
ExperimentReport cmd_cycles(const ExperimentConfig& config);
ExperimentReport cmd_ordering(const ExperimentConfig& config);
ExperimentReport cmd_fourier(const ExperimentConfig& config);
ExperimentReport cmd_advantage(const ExperimentConfig& config);
ExperimentReport cmd_bhh(const ExperimentConfig& config);
ExperimentReport cmd_iid(const ExperimentConfig& config);
ExperimentReport cmd_run(const ExperimentConfig& config);

std::vector<std::string> command_names();
// Throws InputError on an unknown command.
ExperimentReport dispatch(const ExperimentConfig& config);

}  // namespace cutstream

#endif  // CUTSTREAM_EXPERIMENTS_HPP_
