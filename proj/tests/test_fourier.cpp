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


#include <bit>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "cutstream/distributions.hpp"
#include "cutstream/fourier.hpp"

using namespace cutstream;

namespace {

IndicatorSet random_set(std::size_t n, double density, Rng& rng) {
  BitVector members(std::size_t{1} << n);
  while (members.none()) {
    for (std::size_t x = 0; x < members.size(); ++x) members[x] = rng.uniform() < density;
  }
  return IndicatorSet(n, members);
}

IncidenceMatrix random_incidence_matrix(std::size_t n, std::size_t r, Rng& rng) {
  std::vector<Edge> rows;
  for (std::size_t e = 0; e < r; ++e) {
    const auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n - 1));
    if (v >= u) ++v;
    rows.push_back({u, v});
  }
  return IncidenceMatrix(n, rows);
}

DiscreteDistribution random_dist(std::size_t size, Rng& rng) {
  Eigen::VectorXd p(static_cast<Eigen::Index>(size));
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
  if (p.sum() == 0.0) p[0] = 1.0;
  return DiscreteDistribution(p / p.sum());
}

// Oracle: p_M by pushing each member of A through x -> Mx edge by edge.
Eigen::VectorXd pushforward(const IndicatorSet& a, const IncidenceMatrix& m) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(Eigen::Index{1} << m.rows());
  for (std::uint64_t x : a.points()) {
    std::uint64_t z = 0;
    for (std::size_t e = 0; e < m.rows(); ++e) {
      const bool bit = ((x >> m.row(e).u) & 1U) != ((x >> m.row(e).v) & 1U);
      z |= static_cast<std::uint64_t>(bit) << e;
    }
    p[static_cast<Eigen::Index>(z)] += 1.0 / static_cast<double>(a.size());
  }
  return p;
}

// Oracle: simple a-b paths by depth-first search.
std::uint64_t simple_paths(const MultiGraph& g, Vertex from, Vertex to) {
  std::vector<bool> on_path(g.num_vertices(), false);
  std::uint64_t count = 0;
  const auto dfs = [&](auto&& self, Vertex v) -> void {
    if (v == to) {
      ++count;
      return;
    }
    on_path[v] = true;
    for (const Edge& e : g.edges()) {
      if (!e.touches(v)) continue;
      const Vertex w = e.other(v);
      if (!on_path[w]) self(self, w);
    }
    on_path[v] = false;
  };
  dfs(dfs, from);
  return count;
}

// Oracle: max over all 2^size events.
double brute_max_event(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  double best = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.size()); ++s) {
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if ((s >> i) & 1U) diff += p[i] - q[i];
    }
    best = std::max(best, std::abs(diff));
  }
  return best;
}

}  // namespace

TEST_CASE("indicator sets") {
  const IndicatorSet full = IndicatorSet::full(3);
  CHECK(full.size() == 8);
  CHECK(full.c_prime() == 0.0);
  const IndicatorSet pts = IndicatorSet::from_points(3, {1, 5, 5});
  CHECK(pts.size() == 2);
  CHECK(pts.points() == std::vector<std::uint64_t>{1, 5});
  CHECK(pts.c_prime() == doctest::Approx(2.0));
  CHECK_THROWS_AS(IndicatorSet(3, BitVector(8)), InputError);
  CHECK_THROWS_AS(IndicatorSet::full(kMaxFourierDim + 1), SizeError);
  CHECK_THROWS_AS(IndicatorSet::from_points(2, {4}), InputError);
}

TEST_CASE("indicator file formats round trip") {
  Rng rng(1);
  for (std::size_t n : {1, 2, 3, 6}) {
    const IndicatorSet a = random_set(n, 0.4, rng);
    for (bool packed : {false, true}) {
      std::stringstream buf;
      write_indicator(buf, a, packed);
      CHECK(read_indicator(buf) == a);
    }
  }
  // Points {0, 5} of {0,1}^3 packed: digit 0 holds points 0..3, digit 1 points 4..7.
  std::istringstream hex("3\n12\n");
  CHECK(read_indicator(hex).points() == std::vector<std::uint64_t>{0, 5});
  std::istringstream padding("1\n4\n");
  CHECK_THROWS_AS(read_indicator(padding), InputError);
}

TEST_CASE("Walsh-Hadamard transform of simple sets") {
  const Eigen::VectorXd full = indicator_fourier(IndicatorSet::full(4));
  CHECK(full[0] == doctest::Approx(1.0));
  CHECK(full.tail(15).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  std::vector<std::uint64_t> half;
  for (std::uint64_t x = 0; x < 16; ++x) {
    if ((x & 1U) == 0) half.push_back(x);
  }
  const Eigen::VectorXd f = indicator_fourier(IndicatorSet::from_points(4, half));
  CHECK(f[0] == doctest::Approx(0.5));
  CHECK(f[1] == doctest::Approx(0.5));
  for (Eigen::Index v = 2; v < 16; ++v) CHECK(f[v] == doctest::Approx(0.0));

  Eigen::VectorXd bad(3);
  CHECK_THROWS_AS(walsh_hadamard_inplace(bad), InputError);
}

TEST_CASE("fast transform equals the double loop") {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const IndicatorSet a = random_set(4, 0.5, rng);
    Eigen::VectorXd direct(16);
    for (std::uint64_t v = 0; v < 16; ++v) {
      double sum = 0.0;
      for (std::uint64_t x = 0; x < 16; ++x) {
        if (a.contains(x)) sum += (std::popcount(v & x) % 2 == 0) ? 1.0 : -1.0;
      }
      direct[static_cast<Eigen::Index>(v)] = sum / 16.0;
    }
    CHECK((indicator_fourier(a) - direct).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((indicator_fourier_naive(a) - direct).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(parseval_error(a) < 1e-10);
  }
}

TEST_CASE("image distribution p_M") {
  const IncidenceMatrix edge(MultiGraph(2, {{0, 1}}));
  const DiscreteDistribution u = image_distribution(IndicatorSet::full(2), edge);
  CHECK(u[0] == doctest::Approx(0.5));
  CHECK(u[1] == doctest::Approx(0.5));

  const IncidenceMatrix tri(MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  const DiscreteDistribution z = image_distribution(IndicatorSet::from_points(3, {0}), tri);
  CHECK(z[0] == 1.0);

  const DiscreteDistribution cut_space = image_distribution(IndicatorSet::full(3), tri);
  for (std::size_t s = 0; s < 8; ++s) {
    CHECK(cut_space[s] == doctest::Approx(std::popcount(s) % 2 == 0 ? 0.25 : 0.0));
  }

  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const IndicatorSet a = random_set(6, 0.3, rng);
    const IncidenceMatrix m = random_incidence_matrix(6, 1 + rng.below(7), rng);
    CHECK((image_distribution(a, m).table() - pushforward(a, m)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(image_distribution(IndicatorSet::full(2), tri), InputError);
}

TEST_CASE("Fourier identity for p_M is exact") {
  const IncidenceMatrix tri(MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(fourier_identity_error(IndicatorSet::full(3), tri) < 1e-10);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(11);
    const IndicatorSet a = random_set(n, 0.05 + 0.9 * rng.uniform(), rng);
    const IncidenceMatrix m = random_incidence_matrix(n, 1 + rng.below(8), rng);
    CHECK(fourier_identity_error(a, m) <= 1e-10);
  }
}

TEST_CASE("total variation distance") {
  Eigen::VectorXd a(2), b(2);
  a << 0.75, 0.25;
  b << 0.25, 0.75;
  const DiscreteDistribution p(a), q(b);
  CHECK(tvd(p, p) == 0.0);
  CHECK(tvd(p, q) == doctest::Approx(0.5));
  CHECK(tvd(DiscreteDistribution::point_mass(3, 0), DiscreteDistribution::point_mass(3, 2)) == 1.0);
  CHECK_THROWS_AS(DiscreteDistribution(a * 2.0), InputError);

  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t size = 2 + rng.below(8);
    const DiscreteDistribution x = random_dist(size, rng);
    const DiscreteDistribution y = random_dist(size, rng);
    const DiscreteDistribution w = random_dist(size, rng);
    CHECK(tvd(x, y) == doctest::Approx(tvd(y, x)));
    CHECK(tvd(x, w) <= tvd(x, y) + tvd(y, w) + 1e-12);
    CHECK(tvd_max_event(x, y) == doctest::Approx(brute_max_event(x, y)));
    CHECK(tvd_max_event(x, y) == doctest::Approx(tvd(x, y)));
  }
}

TEST_CASE("TVD bound chain") {
  const IncidenceMatrix path(MultiGraph(3, {{0, 1}, {1, 2}}));
  const TvdChain zero = tvd_bound_chain(IndicatorSet::full(3), path);
  CHECK(zero.lhs == doctest::Approx(0.0));
  CHECK(zero.mid == doctest::Approx(0.0));
  CHECK(zero.rhs == doctest::Approx(0.0));

  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.below(8);
    const IndicatorSet a = random_set(n, 0.1 + 0.8 * rng.uniform(), rng);
    const IncidenceMatrix m = random_incidence_matrix(n, 1 + rng.below(8), rng);
    const TvdChain c = tvd_bound_chain(a, m);
    CHECK(c.lhs <= c.mid + 1e-12);
    CHECK(std::abs(c.mid - c.rhs) <= 1e-10 * std::max(1.0, c.rhs));
  }
}

TEST_CASE("weight mass on a half cube") {
  std::vector<std::uint64_t> half;
  for (std::uint64_t x = 0; x < 32; ++x) {
    if ((x & 1U) == 0) half.push_back(x);
  }
  const IndicatorSet a = IndicatorSet::from_points(5, half);
  CHECK(max_weight_class(a) == 4);
  const WeightMass w = weight_mass_check(a, 1);
  CHECK(w.mass == doctest::Approx(1.0));
  CHECK(w.bound == doctest::Approx(4.0 * std::sqrt(2.0)));
  CHECK(w.holds());
  CHECK(max_weight_class(IndicatorSet::full(5)) == 0);
  CHECK_THROWS_AS(weight_mass_check(IndicatorSet::full(5), 1), InputError);
}

TEST_CASE("weight mass stays under the bound for dense sets") {
  Rng rng(7);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 4 + rng.below(9);
    const IndicatorSet a = random_set(n, 0.125 + 0.85 * rng.uniform(), rng);
    if (a.c_prime() > 3.0 || max_weight_class(a) == 0) continue;
    for (std::size_t ell = 1; ell <= std::min(max_weight_class(a), n); ++ell) {
      CHECK(weight_mass_check(a, ell).holds());
    }
    ++checked;
  }
}

TEST_CASE("solutions of M^T s = v") {
  const IncidenceMatrix path(MultiGraph(3, {{0, 1}, {1, 2}}));
  const SolutionSet ends = solutions_of(path, 0b101);
  CHECK(ends.solutions == std::vector<std::uint64_t>{0b11});
  CHECK(ends.certified);

  const IncidenceMatrix tri(MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}}));
  CHECK(solutions_of(tri, 0).solutions == std::vector<std::uint64_t>{0, 0b111});
  CHECK(solutions_of(tri, 0b001).solutions.empty());
  CHECK(solutions_of(tri, 0b111).solutions.empty());
  CHECK(is_path_type(tri, 0b011));
  CHECK_FALSE(is_path_type(tri, 0b111));
}

TEST_CASE("solution sets are cosets of the cycle space") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.below(6);
    const IncidenceMatrix m = random_incidence_matrix(n, 1 + rng.below(10), rng);
    MultiGraph g(n, std::vector<Edge>(m.edges().begin(), m.edges().end()));
    const std::size_t dim = m.rows() - n + connected_components(g).count;
    CHECK(cycle_space_dimension(m) == dim);
    const std::uint64_t v = rng.below(std::uint64_t{1} << n);
    const SolutionSet sols = solutions_of(m, v);
    CHECK(sols.certified);
    if (std::popcount(v) % 2 == 1) CHECK(sols.solutions.empty());
    if (!sols.solutions.empty()) {
      CHECK(sols.solutions.size() == (std::size_t{1} << dim));
      // Differences of solutions lie in the cycle space.
      for (std::uint64_t s : sols.solutions) {
        CHECK(gf2_apply_transpose_mask(m, s ^ sols.solutions.front()) == 0);
      }
    }
    CHECK(solution_coset(m, v) == sols.solutions);
  }
}

TEST_CASE("path decompositions certify each solution") {
  const IncidenceMatrix m(MultiGraph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}));
  const std::uint64_t s = 0b11111;  // triangle plus the tail 2-3-4
  const PathCycleDecomposition d = decompose_selection(m, s);
  // Odd vertices 2 and 4 bound exactly one path; the rest closes into circuits.
  CHECK(d.paths.size() == 1);
  std::size_t covered = 0;
  for (const auto& p : d.paths) covered += p.size() - 1;
  for (const auto& c : d.circuits) covered += c.size() - 1;
  CHECK(covered == 5);
  CHECK(certify_solution(m, s, gf2_apply_transpose_mask(m, s), d));
  CHECK_FALSE(certify_solution(m, s, 0, d));
}

TEST_CASE("weight-two path-type counts equal simple path counts") {
  Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 4 + rng.below(4);
    const IncidenceMatrix m = random_incidence_matrix(n, 1 + rng.below(9), rng);
    const MultiGraph g(n, std::vector<Edge>(m.edges().begin(), m.edges().end()));
    std::uint64_t count = 0;
    for (std::uint64_t s : solutions_of(m, 0b11).solutions) count += is_path_type(m, s);
    CHECK(count == simple_paths(g, 0, 1));
  }
}

TEST_CASE("representation counts") {
  Rng rng(10);
  CHECK(representation_count_mc(10, 0.0, 2, 50, rng) == 0.0);
  CHECK_THROWS_AS(representation_count_mc(10, 0.5, 3, 10, rng), InputError);
  const CoupledCounts c = representation_count_coupled(12, {0.25, 0.5, 1.0}, 2, 2000, rng);
  CHECK(c.monotone());
  const auto means = c.means();
  CHECK(means[0] <= means[1]);
  CHECK(means[1] <= means[2]);
  CHECK(means[2] > 0.0);
}

TEST_CASE("likelihood test advantage") {
  Eigen::VectorXd a(2), b(2);
  a << 0.75, 0.25;
  b << 0.25, 0.75;
  const LikelihoodAdvantage quarter = likelihood_test_advantage(DiscreteDistribution(a), DiscreteDistribution(b));
  CHECK(quarter.advantage == doctest::Approx(0.25));
  CHECK(quarter.half_tvd == doctest::Approx(0.25));
  const auto p = DiscreteDistribution::point_mass(2, 0);
  const auto q = DiscreteDistribution::point_mass(2, 1);
  CHECK(likelihood_test_advantage(p, q).advantage == doctest::Approx(0.5));
  CHECK(likelihood_test_advantage(p, p).advantage == doctest::Approx(0.0));
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto x = random_dist(5, rng);
    const auto y = random_dist(5, rng);
    const LikelihoodAdvantage l = likelihood_test_advantage(x, y);
    CHECK(l.advantage == doctest::Approx(l.half_tvd));
  }
}

TEST_CASE("conditioning on a shared marginal") {
  Eigen::MatrixXd same = Eigen::MatrixXd::Constant(3, 3, 1.0 / 9.0);
  const ConditionalTvd zero = conditional_tvd_check(same, same);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);

  Eigen::MatrixXd one(1, 3), two(1, 3);
  one << 0.5, 0.5, 0.0;
  two << 0.0, 0.5, 0.5;
  const ConditionalTvd constant_x = conditional_tvd_check(one, two);
  CHECK(constant_x.lhs == doctest::Approx(0.5));
  CHECK(constant_x.rhs == doctest::Approx(0.5));

  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd marginal(4);
    for (Eigen::Index i = 0; i < 4; ++i) marginal[i] = rng.uniform();
    marginal /= marginal.sum();
    Eigen::MatrixXd j1(4, 4), j2(4, 4);
    for (Eigen::Index x = 0; x < 4; ++x) {
      const auto c1 = random_dist(4, rng).table();
      const auto c2 = random_dist(4, rng).table();
      j1.row(x) = marginal[x] * c1.transpose();
      j2.row(x) = marginal[x] * c2.transpose();
    }
    const ConditionalTvd c = conditional_tvd_check(j1, j2);
    CHECK(std::abs(c.lhs - c.rhs) <= 1e-10);
  }
  Eigen::MatrixXd skew = same;
  skew(0, 0) += 0.1;
  skew(1, 0) -= 0.1;
  CHECK_THROWS_AS(conditional_tvd_check(same, skew), InputError);
}

TEST_CASE("post-processing never increases distance") {
  Eigen::VectorXd a(3), b(3);
  a << 0.5, 0.3, 0.2;
  b << 0.2, 0.2, 0.6;
  const DiscreteDistribution x(a), y(b);
  const DiscreteDistribution w = DiscreteDistribution::uniform(2);
  Eigen::MatrixXi project(3, 2);
  project << 0, 0, 1, 1, 2, 2;
  const PostProcessing proj = postprocessing_check(x, y, w, project, 3);
  CHECK(proj.lhs == doctest::Approx(proj.rhs));
  const PostProcessing constant = postprocessing_check(x, y, w, Eigen::MatrixXi::Zero(3, 2), 1);
  CHECK(constant.lhs == doctest::Approx(0.0));

  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t sx = 1 + rng.below(6);
    const std::size_t sw = 1 + rng.below(6);
    const std::size_t out = 1 + rng.below(6);
    Eigen::MatrixXi f(static_cast<Eigen::Index>(sx), static_cast<Eigen::Index>(sw));
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = static_cast<int>(rng.below(out));
    const PostProcessing p = postprocessing_check(random_dist(sx, rng), random_dist(sx, rng),
                                                  random_dist(sw, rng), f, out);
    CHECK(p.lhs <= p.rhs + 1e-12);
  }
}
