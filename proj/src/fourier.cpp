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

#include "cutstream/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "cutstream/distributions.hpp"

namespace cutstream {
namespace {

std::uint64_t pow2(std::size_t k) { return std::uint64_t{1} << k; }

void check_enumerable(const IncidenceMatrix& m) {
  if (m.rows() > kMaxEnumeratedEdges) {
    throw SizeError("enumeration needs r <= " + std::to_string(kMaxEnumeratedEdges) + ", got r=" +
                    std::to_string(m.rows()));
  }
  if (m.cols() > 64) throw SizeError("enumeration needs n <= 64");
}

void check_pair(const IndicatorSet& a, const IncidenceMatrix& m) {
  if (m.cols() != a.dim()) throw InputError("indicator dimension differs from the vertex count");
  check_enumerable(m);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Union-find over vertices; unite() reports whether the sets were distinct.
class Forest {
 public:
  explicit Forest(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0U); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

std::uint64_t path_type_count(const IncidenceMatrix& m, std::uint64_t v) {
  std::uint64_t count = 0;
  for (std::uint64_t s : solution_coset(m, v)) count += is_path_type(m, s);
  return count;
}

std::uint64_t first_points_mask(std::size_t ell) { return ell >= 64 ? ~std::uint64_t{0} : pow2(ell) - 1; }

void check_representation_args(std::size_t n, std::size_t ell) {
  if (ell < 2 || ell % 2 != 0 || ell > n) throw InputError("ell must be even with 2 <= ell <= n");
  if (n > 64) throw SizeError("representation counts need n <= 64");
}

}  // namespace

IndicatorSet::IndicatorSet(std::size_t n, BitVector members) : n_(n), members_(std::move(members)) {
  if (n > kMaxFourierDim) {
    throw SizeError("indicator sets need n <= " + std::to_string(kMaxFourierDim) + ", got n=" + std::to_string(n));
  }
  if (members_.size() != pow2(n)) throw InputError("membership table must have 2^n entries");
  size_ = members_.count();
  if (size_ == 0) throw InputError("indicator set must be nonempty");
}

IndicatorSet IndicatorSet::full(std::size_t n) {
  if (n > kMaxFourierDim) throw SizeError("indicator sets need n <= " + std::to_string(kMaxFourierDim));
  BitVector all(pow2(n));
  all.set();
  return IndicatorSet(n, std::move(all));
}

IndicatorSet IndicatorSet::from_points(std::size_t n, const std::vector<std::uint64_t>& points) {
  if (n > kMaxFourierDim) throw SizeError("indicator sets need n <= " + std::to_string(kMaxFourierDim));
  BitVector members(pow2(n));
  for (std::uint64_t x : points) {
    if (x >= pow2(n)) throw InputError("point outside {0,1}^n");
    members.set(x);
  }
  return IndicatorSet(n, std::move(members));
}

std::vector<std::uint64_t> IndicatorSet::points() const {
  std::vector<std::uint64_t> out;
  out.reserve(size_);
  for (auto x = members_.find_first(); x != BitVector::npos; x = members_.find_next(x)) out.push_back(x);
  return out;
}

double IndicatorSet::c_prime() const {
  return static_cast<double>(n_) - std::log2(static_cast<double>(size_));
}

void write_indicator(std::ostream& out, const IndicatorSet& a, bool packed) {
  out << a.dim() << '\n';
  const BitVector& bits = a.members();
  if (!packed) {
    for (std::size_t x = 0; x < bits.size(); ++x) out << (bits[x] ? '1' : '0') << '\n';
    return;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  for (std::size_t base = 0; base < bits.size(); base += 4) {
    int digit = 0;
    for (std::size_t j = 0; j < 4 && base + j < bits.size(); ++j) digit |= bits[base + j] ? 1 << j : 0;
    out << kDigits[digit];
  }
  out << '\n';
}

IndicatorSet read_indicator(std::istream& in) {
  long long n = -1;
  if (!(in >> n) || n < 0) throw InputError("indicator file: bad header");
  if (static_cast<std::size_t>(n) > kMaxFourierDim) {
    throw SizeError("indicator file: n=" + std::to_string(n) + " exceeds " + std::to_string(kMaxFourierDim));
  }
  const std::size_t total = pow2(static_cast<std::size_t>(n));
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  BitVector bits(total);
  const bool per_line = tokens.size() == total &&
                        std::all_of(tokens.begin(), tokens.end(), [](const std::string& t) { return t == "0" || t == "1"; });
  if (per_line) {
    for (std::size_t x = 0; x < total; ++x) bits[x] = tokens[x] == "1";
    return IndicatorSet(static_cast<std::size_t>(n), std::move(bits));
  }
  std::string hex;
  for (const auto& t : tokens) hex += t;
  if (hex.size() != (total + 3) / 4) {
    throw InputError("indicator file: expected " + std::to_string(total) + " bits or " +
                     std::to_string((total + 3) / 4) + " hex digits");
  }
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const int digit = hex_value(hex[i]);
    if (digit < 0) throw InputError("indicator file: bad hex digit '" + std::string(1, hex[i]) + "'");
    for (std::size_t j = 0; j < 4; ++j) {
      const bool bit = ((digit >> j) & 1) != 0;
      if (4 * i + j < total) {
        bits[4 * i + j] = bit;
      } else if (bit) {
        throw InputError("indicator file: nonzero padding bit");
      }
    }
  }
  return IndicatorSet(static_cast<std::size_t>(n), std::move(bits));
}

void save_indicator(const std::filesystem::path& path, const IndicatorSet& a, bool packed) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_indicator(out, a, packed);
}

IndicatorSet load_indicator(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  return read_indicator(in);
}

Eigen::VectorXd indicator_fourier(const IndicatorSet& a) {
  const auto size = static_cast<Eigen::Index>(pow2(a.dim()));
  Eigen::VectorXd f(size);
  for (Eigen::Index x = 0; x < size; ++x) f[x] = a.contains(static_cast<std::uint64_t>(x)) ? 1.0 : 0.0;
  walsh_hadamard_inplace(f);
  return f / static_cast<double>(size);
}

Eigen::VectorXd indicator_fourier_naive(const IndicatorSet& a) {
  const std::uint64_t size = pow2(a.dim());
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  for (std::uint64_t v = 0; v < size; ++v) {
    double sum = 0.0;
    for (std::uint64_t x = 0; x < size; ++x) {
      if (a.contains(x)) sum += (std::popcount(x & v) % 2 == 0) ? 1.0 : -1.0;
    }
    f[static_cast<Eigen::Index>(v)] = sum / static_cast<double>(size);
  }
  return f;
}

DiscreteDistribution::DiscreteDistribution(Eigen::VectorXd p, double tol) : p_(std::move(p)) {
  if (!is_distribution(p_, tol)) throw InputError("not a probability table");
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t size) {
  if (size == 0) throw InputError("empty outcome space");
  return DiscreteDistribution(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(size), 1.0 / static_cast<double>(size)));
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t size, std::size_t at) {
  if (at >= size) throw InputError("point mass outside the outcome space");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size));
  p[static_cast<Eigen::Index>(at)] = 1.0;
  return DiscreteDistribution(std::move(p));
}

double tvd(const DiscreteDistribution& p, const DiscreteDistribution& q) { return tvd(p.table(), q.table()); }

double tvd_max_event(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.size() != q.size()) throw InputError("tvd: outcome spaces differ in size");
  if (p.size() > 20) throw SizeError("event enumeration needs at most 20 outcomes");
  double best = 0.0;
  for (std::uint64_t event = 0; event < pow2(p.size()); ++event) {
    double gap = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if ((event >> i) & 1U) gap += p[i] - q[i];
    }
    best = std::max(best, gap);
  }
  return best;
}

DiscreteDistribution image_distribution(const IndicatorSet& a, const IncidenceMatrix& m) {
  check_pair(a, m);
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow2(m.rows())));
  const double weight = 1.0 / static_cast<double>(a.size());
  for (std::uint64_t x : a.points()) p[static_cast<Eigen::Index>(gf2_apply_mask(m, x))] += weight;
  return DiscreteDistribution(std::move(p));
}

Eigen::VectorXd distribution_fourier(const DiscreteDistribution& p) {
  Eigen::VectorXd hat = p.table();
  walsh_hadamard_inplace(hat);
  return hat / static_cast<double>(hat.size());
}

double fourier_identity_error(const IndicatorSet& a, const IncidenceMatrix& m) {
  const Eigen::VectorXd f_hat = indicator_fourier(a);
  const Eigen::VectorXd p_hat = distribution_fourier(image_distribution(a, m));
  const double scale = std::ldexp(1.0, static_cast<int>(a.dim()) - static_cast<int>(m.rows())) /
                       static_cast<double>(a.size());
  double worst = 0.0;
  for (std::uint64_t s = 0; s < pow2(m.rows()); ++s) {
    const double rhs = scale * f_hat[static_cast<Eigen::Index>(gf2_apply_transpose_mask(m, s))];
    worst = std::max(worst, std::abs(p_hat[static_cast<Eigen::Index>(s)] - rhs));
  }
  return worst;
}

double parseval_error(const IndicatorSet& a) {
  const Eigen::VectorXd f_hat = indicator_fourier(a);
  return std::abs(f_hat.squaredNorm() - static_cast<double>(a.size()) / static_cast<double>(f_hat.size()));
}

TvdChain tvd_bound_chain(const IndicatorSet& a, const IncidenceMatrix& m) {
  const DiscreteDistribution p = image_distribution(a, m);
  const auto uniform = DiscreteDistribution::uniform(p.size());
  const Eigen::VectorXd f_hat = indicator_fourier(a);
  TvdChain c;
  const double d = tvd(p, uniform);
  c.lhs = d * d;
  c.mid = static_cast<double>(p.size()) * (p.table() - uniform.table()).squaredNorm();
  double sum = 0.0;
  for (std::uint64_t s = 1; s < pow2(m.rows()); ++s) {
    const double coeff = f_hat[static_cast<Eigen::Index>(gf2_apply_transpose_mask(m, s))];
    sum += coeff * coeff;
  }
  const double ratio = static_cast<double>(f_hat.size()) / static_cast<double>(a.size());
  c.rhs = ratio * ratio * sum;
  return c;
}

std::size_t max_weight_class(const IndicatorSet& a) {
  return static_cast<std::size_t>(std::floor(4.0 * a.c_prime() + 1e-12));
}

WeightMass weight_mass_check(const IndicatorSet& a, std::size_t ell) {
  if (ell < 1 || ell > max_weight_class(a)) {
    throw InputError("weight class " + std::to_string(ell) + " outside [1, 4c'] for c'=" + std::to_string(a.c_prime()));
  }
  const Eigen::VectorXd f_hat = indicator_fourier(a);
  double sum = 0.0;
  for (Eigen::Index v = 0; v < f_hat.size(); ++v) {
    if (static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(v))) == ell) sum += f_hat[v] * f_hat[v];
  }
  const double ratio = static_cast<double>(f_hat.size()) / static_cast<double>(a.size());
  WeightMass w;
  w.mass = ratio * ratio * sum;
  const double l = static_cast<double>(ell);
  w.bound = std::pow(4.0 * std::sqrt(2.0) * a.c_prime() / l, l);
  return w;
}

PathCycleDecomposition decompose_selection(const IncidenceMatrix& m, std::uint64_t s) {
  if (m.rows() > 64) throw SizeError("selection masks need r <= 64");
  std::vector<std::vector<std::size_t>> incident(m.cols());
  for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
    const auto e = static_cast<std::size_t>(std::countr_zero(rest));
    incident[m.row(e).u].push_back(e);
    incident[m.row(e).v].push_back(e);
  }
  std::vector<bool> used(m.rows(), false);
  std::vector<std::size_t> cursor(m.cols(), 0);
  std::vector<std::size_t> remaining(m.cols());
  for (std::size_t u = 0; u < m.cols(); ++u) remaining[u] = incident[u].size();

  // Follow unused edges from `start` until stuck.
  const auto walk = [&](Vertex start) {
    std::vector<Vertex> trail{start};
    Vertex at = start;
    while (true) {
      auto& c = cursor[at];
      while (c < incident[at].size() && used[incident[at][c]]) ++c;
      if (c == incident[at].size()) break;
      const std::size_t e = incident[at][c];
      used[e] = true;
      --remaining[m.row(e).u];
      --remaining[m.row(e).v];
      at = m.row(e).other(at);
      trail.push_back(at);
    }
    return trail;
  };

  PathCycleDecomposition d;
  // A trail from an odd vertex can only stop at another odd vertex.
  for (Vertex u = 0; u < m.cols(); ++u) {
    if (remaining[u] % 2 == 1) d.paths.push_back(walk(u));
  }
  for (Vertex u = 0; u < m.cols(); ++u) {
    while (remaining[u] > 0) d.circuits.push_back(walk(u));
  }
  return d;
}

bool certify_solution(const IncidenceMatrix& m, std::uint64_t s, std::uint64_t v,
                      const PathCycleDecomposition& d) {
  std::vector<std::size_t> degree(m.cols(), 0);
  std::map<std::pair<Vertex, Vertex>, std::int64_t> pending;
  for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
    const Edge& e = m.row(static_cast<std::size_t>(std::countr_zero(rest)));
    ++degree[e.u];
    ++degree[e.v];
    ++pending[e.key()];
  }
  std::uint64_t odd = 0;
  for (std::size_t u = 0; u < m.cols(); ++u) {
    if (degree[u] % 2 == 1) odd |= pow2(u);
  }
  if (odd != v) return false;

  const auto consume = [&](const std::vector<Vertex>& trail) {
    for (std::size_t i = 1; i < trail.size(); ++i) {
      if (--pending[Edge{trail[i - 1], trail[i]}.key()] < 0) return false;
    }
    return true;
  };
  std::uint64_t endpoints = 0;
  for (const auto& p : d.paths) {
    if (p.size() < 2 || p.front() == p.back() || !consume(p)) return false;
    for (Vertex end : {p.front(), p.back()}) {
      if ((endpoints >> end) & 1U) return false;
      endpoints |= pow2(end);
    }
  }
  if (endpoints != v) return false;
  for (const auto& c : d.circuits) {
    if (c.size() < 2 || c.front() != c.back() || !consume(c)) return false;
  }
  return std::all_of(pending.begin(), pending.end(), [](const auto& kv) { return kv.second == 0; });
}

SolutionSet solutions_of(const IncidenceMatrix& m, std::uint64_t v) {
  check_enumerable(m);
  SolutionSet out;
  if (std::popcount(v) % 2 == 1) return out;
  for (std::uint64_t s = 0; s < pow2(m.rows()); ++s) {
    if (gf2_apply_transpose_mask(m, s) != v) continue;
    out.solutions.push_back(s);
    out.certified = out.certified && certify_solution(m, s, v, decompose_selection(m, s));
  }
  return out;
}

std::size_t cycle_space_dimension(const IncidenceMatrix& m) {
  Forest f(m.cols());
  std::size_t components = m.cols();
  for (const Edge& e : m.edges()) components -= f.unite(e.u, e.v);
  return m.rows() - m.cols() + components;
}

std::vector<std::uint64_t> solution_coset(const IncidenceMatrix& m, std::uint64_t v) {
  if (m.rows() > 64 || m.cols() > 64) throw SizeError("coset construction needs r, n <= 64");
  const std::size_t n = m.cols();
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < m.rows(); ++e) {
    incident[m.row(e).u].push_back(e);
    incident[m.row(e).v].push_back(e);
  }
  // BFS spanning forest: parent edge and root-path mask per vertex.
  constexpr std::size_t kNone = ~std::size_t{0};
  std::vector<std::size_t> parent_edge(n, kNone);
  std::vector<std::uint64_t> path_mask(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree(m.rows(), false);
  std::vector<Vertex> order;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    const std::size_t head = order.size();
    order.push_back(root);
    for (std::size_t i = head; i < order.size(); ++i) {
      const Vertex u = order[i];
      for (std::size_t e : incident[u]) {
        const Vertex w = m.row(e).other(u);
        if (seen[w]) continue;
        seen[w] = true;
        tree[e] = true;
        parent_edge[w] = e;
        path_mask[w] = path_mask[u] | pow2(e);
        order.push_back(w);
      }
    }
  }
  std::vector<std::uint64_t> basis;
  for (std::size_t e = 0; e < m.rows(); ++e) {
    if (!tree[e]) basis.push_back(pow2(e) ^ path_mask[m.row(e).u] ^ path_mask[m.row(e).v]);
  }
  if (basis.size() > kMaxEnumeratedEdges) throw SizeError("cycle space too large to enumerate");

  // Leaves first: select the parent edge of every vertex whose demand is odd.
  std::vector<bool> need(n);
  for (std::size_t u = 0; u < n; ++u) need[u] = ((v >> u) & 1U) != 0;
  std::uint64_t particular = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex u = *it;
    if (!need[u]) continue;
    if (parent_edge[u] == kNone) return {};
    particular |= pow2(parent_edge[u]);
    need[m.row(parent_edge[u]).other(u)] = !need[m.row(parent_edge[u]).other(u)];
  }
  std::vector<std::uint64_t> coset{particular};
  coset.reserve(pow2(basis.size()));
  for (std::uint64_t b : basis) {
    const std::size_t size = coset.size();
    for (std::size_t i = 0; i < size; ++i) coset.push_back(coset[i] ^ b);
  }
  std::sort(coset.begin(), coset.end());
  return coset;
}

bool is_path_type(const IncidenceMatrix& m, std::uint64_t s) {
  Forest f(m.cols());
  for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
    const Edge& e = m.row(static_cast<std::size_t>(std::countr_zero(rest)));
    if (!f.unite(e.u, e.v)) return false;
  }
  return true;
}

double representation_count_mc(std::size_t n, double alpha, std::size_t ell, std::size_t trials,
                               Rng& rng) {
  check_representation_args(n, ell);
  if (trials == 0) throw InputError("representation count needs at least one trial");
  const std::uint64_t v = first_points_mask(ell);
  double total = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.substream(i);
    const IncidenceMatrix m(sample_gnp(n, alpha, trial));
    total += static_cast<double>(path_type_count(m, v));
  }
  return total / static_cast<double>(trials);
}

std::vector<double> CoupledCounts::means() const {
  std::vector<double> out(alphas.size(), 0.0);
  for (const auto& row : counts) {
    for (std::size_t g = 0; g < row.size(); ++g) out[g] += static_cast<double>(row[g]);
  }
  for (double& x : out) x /= counts.empty() ? 1.0 : static_cast<double>(counts.size());
  return out;
}

bool CoupledCounts::monotone() const {
  return std::all_of(counts.begin(), counts.end(), [](const auto& row) { return std::is_sorted(row.begin(), row.end()); });
}

CoupledCounts representation_count_coupled(std::size_t n, std::vector<double> alphas,
                                           std::size_t ell, std::size_t trials, Rng& rng) {
  check_representation_args(n, ell);
  if (!std::is_sorted(alphas.begin(), alphas.end())) throw InputError("alpha grid must be ascending");
  for (double a : alphas) {
    if (!(a >= 0.0) || a > static_cast<double>(n)) throw InputError("alpha/n must lie in [0, 1]");
  }
  const std::uint64_t v = first_points_mask(ell);
  CoupledCounts out;
  out.alphas = std::move(alphas);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng trial = rng.substream(i);
    std::vector<std::pair<double, Edge>> labelled;
    for (Vertex b = 1; b < n; ++b) {
      for (Vertex a = 0; a < b; ++a) labelled.push_back({trial.uniform(), Edge{a, b}});
    }
    std::vector<std::uint64_t> row;
    for (double alpha : out.alphas) {
      const double p = alpha / static_cast<double>(n);
      std::vector<Edge> kept;
      for (const auto& [u, e] : labelled) {
        if (u < p) kept.push_back(e);
      }
      row.push_back(path_type_count(IncidenceMatrix(n, std::move(kept)), v));
    }
    out.counts.push_back(std::move(row));
  }
  return out;
}

LikelihoodAdvantage likelihood_test_advantage(const DiscreteDistribution& p,
                                              const DiscreteDistribution& q) {
  if (p.size() != q.size()) throw InputError("likelihood test: outcome spaces differ in size");
  double success = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) success += (p[i] > q[i] ? p[i] : q[i]) / 2.0;
  return {success - 0.5, tvd(p, q) / 2.0};
}

ConditionalTvd conditional_tvd_check(const Eigen::MatrixXd& joint1, const Eigen::MatrixXd& joint2) {
  if (joint1.rows() != joint2.rows() || joint1.cols() != joint2.cols()) {
    throw InputError("joint tables differ in shape");
  }
  const Eigen::VectorXd marginal = joint1.rowwise().sum();
  if ((marginal - joint2.rowwise().sum()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InputError("joint tables must share the X-marginal");
  }
  ConditionalTvd c;
  c.lhs = (joint1 - joint2).cwiseAbs().sum() / 2.0;
  for (Eigen::Index x = 0; x < joint1.rows(); ++x) {
    if (marginal[x] <= 0.0) continue;
    c.rhs += marginal[x] * tvd(joint1.row(x) / marginal[x], joint2.row(x) / marginal[x]);
  }
  return c;
}

PostProcessing postprocessing_check(const DiscreteDistribution& x, const DiscreteDistribution& y,
                                    const DiscreteDistribution& w, const Eigen::MatrixXi& f,
                                    std::size_t outcomes) {
  if (x.size() != y.size()) throw InputError("X and Y must share an outcome space");
  if (static_cast<std::size_t>(f.rows()) != x.size() || static_cast<std::size_t>(f.cols()) != w.size()) {
    throw InputError("f must be tabulated on supp X by supp W");
  }
  Eigen::VectorXd fx = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(outcomes));
  Eigen::VectorXd fy = fx;
  for (Eigen::Index a = 0; a < f.rows(); ++a) {
    for (Eigen::Index b = 0; b < f.cols(); ++b) {
      const int o = f(a, b);
      if (o < 0 || static_cast<std::size_t>(o) >= outcomes) throw InputError("f value outside the outcome space");
      fx[o] += x[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
      fy[o] += y[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)];
    }
  }
  return {tvd(fx, fy), tvd(x, y)};
}

}  // namespace cutstream
