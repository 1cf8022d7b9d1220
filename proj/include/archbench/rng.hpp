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

#ifndef ARCHBENCH__RNG_HPP_
#define ARCHBENCH__RNG_HPP_

#include <cstdint>
#include <limits>
#include <random>

namespace archbench
{

/// Seeded generator whose draws are identical on every standard library.
///
/// std::mt19937_64 output is fully specified by the standard, but the
/// distribution classes are not, so bounded draws are done here by rejection.
class SeededRng
{
public:
  explicit SeededRng(std::uint64_t seed)
  : engine_(seed) {}

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound)
  {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = kMax - (kMax % bound);
    std::uint64_t draw = engine_();
    while (draw >= limit) {
      draw = engine_();
    }
    return draw % bound;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace archbench

#endif  // ARCHBENCH__RNG_HPP_
