// Copyright 2026 The archbench Authors
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

#ifndef ARCHBENCH__HASHING_HPP_
#define ARCHBENCH__HASHING_HPP_

#include <cstdint>
#include <string>
#include <string_view>

namespace archbench
{

/// Lower-case hex SHA-256 digest of `data`.
std::string sha256_hex(std::string_view data);

/// Derives an independent seed for a named pipeline stage from the run seed.
/// Stable across platforms: the first 8 digest bytes of "<stage>:<seed>", big-endian.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stage);

}  // namespace archbench

#endif  // ARCHBENCH__HASHING_HPP_
