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


#ifndef ARCHBENCH_TEST_SUPPORT__REFERENCE_COUNTS_HPP_
#define ARCHBENCH_TEST_SUPPORT__REFERENCE_COUNTS_HPP_

#include <array>
#include <cstddef>
#include <string_view>

namespace archbench::test
{

/// Reference generation and sample counts per stratum, in stratum order:
/// ENTITY BOOL, ENTITY MCQ, PUBLISH BOOL, PUBLISH OPEN, SUBSCRIBE BOOL,
/// SUBSCRIBE OPEN, SERVICE BOOL, SERVICE OPEN, CLIENT BOOL, CLIENT OPEN,
/// MESSAGE BOOL, SERVICE_TYPE OPEN, TOPIC_TYPE OPEN.
struct SystemCounts
{
  std::string_view name;
  std::size_t nodes;
  std::size_t services;
  std::size_t topics;
  std::array<std::size_t, 13> generated;
  std::array<std::size_t, 13> sampled;
  std::size_t generated_total;
  std::size_t sampled_total;
};

// turtlebot MESSAGE is 8 * 7 = 56, one question per ordered node pair; the
// strata then sum to 1,472.
inline constexpr std::array<SystemCounts, 3> kSystems = {{
  {"pubsub", 2, 12, 3,
    {34, 17, 6, 2, 6, 2, 24, 2, 24, 2, 2, 12, 3},
    {30, 17, 6, 2, 6, 2, 24, 2, 24, 2, 2, 12, 3}, 136, 132},
  {"turtlebot", 8, 53, 15,
    {152, 76, 120, 8, 120, 8, 424, 8, 424, 8, 56, 53, 15},
    {30, 30, 30, 8, 30, 8, 43, 8, 43, 8, 30, 30, 15}, 1472, 313},
  {"panda", 40, 276, 33,
    {698, 349, 1320, 40, 1320, 40, 11040, 40, 11040, 40, 1560, 276, 33},
    {70, 35, 100, 30, 100, 30, 100, 30, 100, 30, 100, 30, 30}, 27796, 785},
}};

inline constexpr std::size_t kSampledGrandTotal = 1230;

}  // namespace archbench::test

#endif  // ARCHBENCH_TEST_SUPPORT__REFERENCE_COUNTS_HPP_
