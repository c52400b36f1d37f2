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

#ifndef CUTSTREAM_STREAM_IO_HPP_
#define CUTSTREAM_STREAM_IO_HPP_

#include <filesystem>
#include <iosfwd>

#include "cutstream/distributions.hpp"

namespace cutstream {

// Stream file:
//
//   n length ordering_tag case_label seed
//   u v        (length lines, 1-based, in arrival order)
//
// ordering_tag is canonical | uniform | iid | adversarial; case_label is
// yes | no | none.
void write_stream(std::ostream& out, const EdgeStream& s);
EdgeStream read_stream(std::istream& in);

void save_stream(const std::filesystem::path& path, const EdgeStream& s);
EdgeStream load_stream(const std::filesystem::path& path);

}  // namespace cutstream

#endif  // CUTSTREAM_STREAM_IO_HPP_
