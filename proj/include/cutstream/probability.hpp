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

#ifndef CUTSTREAM_PROBABILITY_HPP_
#define CUTSTREAM_PROBABILITY_HPP_

#include <cmath>

#include <Eigen/Core>

#include "cutstream/errors.hpp"

namespace cutstream {

// Half the l1 distance between two tables over the same outcome space.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar tvd(const Eigen::MatrixBase<DerivedA>& p,
                              const Eigen::MatrixBase<DerivedB>& q) {
  if (p.size() != q.size()) throw InputError("tvd: outcome spaces differ in size");
  return (p - q).cwiseAbs().sum() / typename DerivedA::Scalar(2);
}

// Nonnegative entries summing to 1 within tol.
template <typename Derived>
bool is_distribution(const Eigen::MatrixBase<Derived>& p, double tol = 1e-9) {
  return p.size() > 0 && (p.array() >= 0).all() && std::abs(p.sum() - 1.0) <= tol;
}

}  // namespace cutstream

#endif  // CUTSTREAM_PROBABILITY_HPP_
