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

#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cutstream/errors.hpp"
#include "cutstream/experiments.hpp"
#include "cutstream/streaming.hpp"

namespace {

using cutstream::ExperimentConfig;

void add_shared_flags(CLI::App& sub, ExperimentConfig& c, std::string& case_text) {
  sub.add_option("--n", c.n, "vertex count");
  sub.add_option("--alpha", c.alpha, "per-phase density alpha (edge probability alpha/n)");
  sub.add_option("--eps", c.epsilon, "gap parameter epsilon");
  sub.add_option("--t", c.t, "hyperedge size");
  sub.add_option("--ell", c.ell, "stream length multiplier for i.i.d. streams");
  sub.add_option("--k", c.k_override, "phase count override (0 derives k)");
  sub.add_option("--c-phase", c.c_phase, "constant C in k = ceil(C / (alpha eps^2))");
  sub.add_option("--trials", c.trials, "trial count (0 selects the subcommand default)");
  sub.add_option("--seed", c.seed, "master seed");
  sub.add_option("--case", case_text, "yes | no | both")->check(CLI::IsMember({"yes", "no", "both"}));
  sub.add_option("--out", c.out, "CSV path, '-' for stdout (gen: output file prefix)");
  sub.add_option("--n-grid", c.n_grid, "sweep over n")->delimiter(',');
  sub.add_option("--alpha-grid", c.alpha_grid, "sweep over alpha")->delimiter(',');
  sub.add_option("--t-grid", c.t_grid, "sweep over t")->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming max-cut lower-bound experiments"};
  app.require_subcommand(1);
  ExperimentConfig config;
  std::string case_text = "both";
  std::size_t budget = 0;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"gen", "write hard-distribution, G(n,p) or BHH gadget instances and streams"},
      {"gap", "max-cut / m on YES and NO instances"},
      {"cycles", "cycle and complex-component frequency in G(n, alpha/n)"},
      {"ordering", "multiplicities and collision statistics of uniform orderings"},
      {"fourier", "exact Fourier, TVD-chain, weight-class and solution-structure checks"},
      {"advantage", "state curves, informative index and the two-party protocol"},
      {"bhh", "hypermatching gadget end to end"},
      {"iid", "i.i.d. stream construction statistics"},
      {"run", "run a streaming algorithm by name"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_shared_flags(*sub, config, case_text);
    sub->callback([&config, name = name] { config.command = name; });
    if (name == "gen") {
      sub->add_option("--kind", config.kind, "hard | bhh | gnp");
      sub->add_option("--ordering", config.ordering, "canonical | uniform | iid");
    }
    if (name == "fourier") sub->add_option("--indicator", config.indicator_path, "bitmask file for A");
    if (name == "run") {
      sub->add_option("--alg", config.algorithm, "edge-count | random-walk | reservoir | mod-counter");
      sub->add_option("--stream", config.stream_path, "stream file (otherwise generated)");
      sub->add_option("--ordering", config.ordering, "canonical | uniform | iid");
      sub->add_option("--walkers", config.walkers, "random-walk walker count (0 = ceil sqrt n)");
      sub->add_option("--length", config.length, "random-walk length (0 = ceil ln^2 n)");
      sub->add_option("--sample", config.sample, "reservoir size");
      sub->add_option("--budget", budget, "state budget in bits (0 = none)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    config.cases = cutstream::parse_case_filter(case_text);
    if (budget > 0) config.budget_bits = budget;
    const cutstream::ExperimentReport report = cutstream::dispatch(config);
    const bool to_stdout = config.out == "-" || config.command == "gen";
    if (to_stdout) {
      cutstream::write_csv(std::cout, config, report);
    } else {
      std::ofstream out(config.out);
      if (!out) throw cutstream::InputError("cannot write " + config.out);
      cutstream::write_csv(out, config, report);
    }
    for (const auto& c : report.contracts) {
      std::cerr << (c.passed ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
    }
    return report.passed() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    std::cerr << "size error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
