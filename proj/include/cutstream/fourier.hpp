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

#ifndef CUTSTREAM_FOURIER_HPP_
#define CUTSTREAM_FOURIER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "cutstream/errors.hpp"
#include "cutstream/graph.hpp"
#include "cutstream/probability.hpp"
#include "cutstream/rng.hpp"

namespace cutstream {

inline constexpr std::size_t kMaxFourierDim = 20;
inline constexpr std::size_t kMaxEnumeratedEdges = 20;

// A nonempty subset of {0,1}^n. Point x is the integer whose bit i is x_i.
class IndicatorSet {
 public:
  // members.size() must be 2^n. Throws SizeError for n > kMaxFourierDim and
  // InputError for an empty set.
  IndicatorSet(std::size_t n, BitVector members);

  static IndicatorSet full(std::size_t n);
  static IndicatorSet from_points(std::size_t n, const std::vector<std::uint64_t>& points);

  std::size_t dim() const { return n_; }
  std::size_t size() const { return size_; }
  bool contains(std::uint64_t x) const { return members_[x]; }
  const BitVector& members() const { return members_; }
  std::vector<std::uint64_t> points() const;
  // n - log2 |A|.
  double c_prime() const;

  friend bool operator==(const IndicatorSet&, const IndicatorSet&) = default;

 private:
  std::size_t n_;
  BitVector members_;
  std::size_t size_;
};

// Bitmask file: n, then the 2^n membership bits either one per line or as
// packed hex (digit i holds points 4i..4i+3, least significant bit first).
void write_indicator(std::ostream& out, const IndicatorSet& a, bool packed);
IndicatorSet read_indicator(std::istream& in);
void save_indicator(const std::filesystem::path& path, const IndicatorSet& a, bool packed);
IndicatorSet load_indicator(const std::filesystem::path& path);

// Unnormalized Walsh-Hadamard butterfly: v(s) <- sum_z v(z) (-1)^{s.z}.
template <typename Derived>
void walsh_hadamard_inplace(Eigen::MatrixBase<Derived>& v) {
  const Eigen::Index size = v.size();
  if (size == 0 || (size & (size - 1)) != 0) throw InputError("transform length must be a power of two");
  for (Eigen::Index half = 1; half < size; half *= 2) {
    for (Eigen::Index block = 0; block < size; block += 2 * half) {
      for (Eigen::Index i = block; i < block + half; ++i) {
        const auto lo = v(i);
        const auto hi = v(i + half);
        v(i) = lo + hi;
        v(i + half) = lo - hi;
      }
    }
  }
}

// f^(v) = 2^{-n} sum_x f(x) (-1)^{x.v} for f the indicator of A.
Eigen::VectorXd indicator_fourier(const IndicatorSet& a);

// O(4^n) direct evaluation of the same table.
Eigen::VectorXd indicator_fourier_naive(const IndicatorSet& a);

// Probability table over a finite outcome space.
class DiscreteDistribution {
 public:
  // Throws InputError unless entries are nonnegative and sum to 1 within tol.
  explicit DiscreteDistribution(Eigen::VectorXd p, double tol = 1e-9);

  static DiscreteDistribution uniform(std::size_t size);
  static DiscreteDistribution point_mass(std::size_t size, std::size_t at);

  std::size_t size() const { return static_cast<std::size_t>(p_.size()); }
  double operator[](std::size_t i) const { return p_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& table() const { return p_; }

 private:
  Eigen::VectorXd p_;
};

double tvd(const DiscreteDistribution& p, const DiscreteDistribution& q);

// max over events S of p(S) - q(S), by enumerating all 2^size events.
// Throws SizeError above 20 outcomes.
double tvd_max_event(const DiscreteDistribution& p, const DiscreteDistribution& q);

// p_M(z) = |{x in A : Mx = z}| / |A| over {0,1}^r.
DiscreteDistribution image_distribution(const IndicatorSet& a, const IncidenceMatrix& m);

// p^(s) = 2^{-r} sum_z p(z) (-1)^{s.z}.
Eigen::VectorXd distribution_fourier(const DiscreteDistribution& p);

// max_s |p^_M(s) - 2^n / (|A| 2^r) f^(M^T s)|.
double fourier_identity_error(const IndicatorSet& a, const IncidenceMatrix& m);

// |sum_v f^(v)^2 - 2^{-n} |A||.
double parseval_error(const IndicatorSet& a);

struct TvdChain {
  double lhs = 0.0;  // tvd(p_M, U_r)^2
  double mid = 0.0;  // 2^r ||p_M - U_r||_2^2
  double rhs = 0.0;  // 2^{2n}/|A|^2 sum_{s != 0} f^(M^T s)^2
};

TvdChain tvd_bound_chain(const IndicatorSet& a, const IncidenceMatrix& m);

struct WeightMass {
  double mass = 0.0;   // 2^{2n}/|A|^2 sum_{|v| = l} f^(v)^2
  double bound = 0.0;  // (4 sqrt(2) c' / l)^l

  bool holds() const { return mass <= bound; }
};

// Largest admissible weight: floor(4 c'); 0 when no weight is admissible.
std::size_t max_weight_class(const IndicatorSet& a);

// Throws InputError unless 1 <= ell <= 4 c'.
WeightMass weight_mass_check(const IndicatorSet& a, std::size_t ell);

// Edge-disjoint split of the subgraph selected by s into trails joining
// odd-degree vertices in pairs and closed trails.
struct PathCycleDecomposition {
  std::vector<std::vector<Vertex>> paths;     // vertex sequences, endpoints odd
  std::vector<std::vector<Vertex>> circuits;  // closed, first == last
};

PathCycleDecomposition decompose_selection(const IncidenceMatrix& m, std::uint64_t s);

// Odd-degree set of the selection is exactly supp(v), and the decomposition
// uses every selected edge once with path endpoints covering supp(v).
bool certify_solution(const IncidenceMatrix& m, std::uint64_t s, std::uint64_t v,
                      const PathCycleDecomposition& d);

struct SolutionSet {
  std::vector<std::uint64_t> solutions;  // ascending
  bool certified = true;                 // every solution passed certify_solution
};

// All s in {0,1}^r with M^T s = v, by exhaustive enumeration. Throws
// SizeError for r > kMaxEnumeratedEdges.
SolutionSet solutions_of(const IncidenceMatrix& m, std::uint64_t v);

// r - n + (number of connected components).
std::size_t cycle_space_dimension(const IncidenceMatrix& m);

// The same set built structurally: a spanning-forest particular solution
// plus the span of the fundamental cycles. Ascending. Throws SizeError when
// the cycle space dimension exceeds kMaxEnumeratedEdges.
std::vector<std::uint64_t> solution_coset(const IncidenceMatrix& m, std::uint64_t v);

// The selected subgraph is a forest (parallel edges count as a cycle).
bool is_path_type(const IncidenceMatrix& m, std::uint64_t s);

// Mean over G ~ G(n, alpha/n) of the number of path-type solutions of
// M^T s = e_0 + ... + e_{ell-1}. Needs even ell >= 2 and ell <= n.
double representation_count_mc(std::size_t n, double alpha, std::size_t ell, std::size_t trials,
                               Rng& rng);

// Same statistic on a grid of alphas with one uniform label per pair shared
// by all grid points, so graph(alpha) grows with alpha. counts[i][g] is trial
// i at grid point g.
struct CoupledCounts {
  std::vector<double> alphas;
  std::vector<std::vector<std::uint64_t>> counts;

  std::vector<double> means() const;
  // Every trial's counts are nondecreasing along the grid.
  bool monotone() const;
};

CoupledCounts representation_count_coupled(std::size_t n, std::vector<double> alphas,
                                           std::size_t ell, std::size_t trials, Rng& rng);

struct LikelihoodAdvantage {
  double advantage = 0.0;  // Pr[correct] - 1/2 for "YES iff p > q", equal priors
  double half_tvd = 0.0;
};

LikelihoodAdvantage likelihood_test_advantage(const DiscreteDistribution& p,
                                              const DiscreteDistribution& q);

struct ConditionalTvd {
  double lhs = 0.0;  // tvd of the joints
  double rhs = 0.0;  // E_x tvd of the conditionals
};

// Rows index X, columns Y. Throws InputError when the X-marginals differ.
ConditionalTvd conditional_tvd_check(const Eigen::MatrixXd& joint1, const Eigen::MatrixXd& joint2);

struct PostProcessing {
  double lhs = 0.0;  // tvd(f(X, W), f(Y, W))
  double rhs = 0.0;  // tvd(X, Y)
};

// f(a, b) is an outcome index in [0, outcomes) for a in supp X, b in supp W.
PostProcessing postprocessing_check(const DiscreteDistribution& x, const DiscreteDistribution& y,
                                    const DiscreteDistribution& w, const Eigen::MatrixXi& f,
                                    std::size_t outcomes);

}  // namespace cutstream

#endif  // CUTSTREAM_FOURIER_HPP_
