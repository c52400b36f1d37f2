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

#ifndef CUTSTREAM_ERRORS_HPP_
#define CUTSTREAM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cutstream {

// Malformed arguments: dimension mismatches, out-of-range parameters,
// unparsable files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request that exceeds an enumeration budget (exhaustive max-cut,
// Fourier tables, solution enumeration, automaton state spaces).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace cutstream

#endif  // CUTSTREAM_ERRORS_HPP_
