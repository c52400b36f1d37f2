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

#ifndef CUTSTREAM_RNG_HPP_
#define CUTSTREAM_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace cutstream {

// Seedable, splittable generator. Every sampler takes an Rng by reference;
// independent trials draw from substream(trial_index), and independent
// experiments from named(namespace). Substreams are derived from the seed
// alone, never from the parent's consumed state, so a trial's draws do not
// depend on how many other trials ran before it.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  Rng substream(std::uint64_t index) const;
  Rng named(std::string_view name) const;

  std::uint64_t seed() const { return seed_; }

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1).
  double uniform();
  bool bernoulli(double p);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace cutstream

#endif  // CUTSTREAM_RNG_HPP_
