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

#ifndef ARCHBENCH__SAMPLER_HPP_
#define ARCHBENCH__SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "archbench/questgen.hpp"

namespace archbench
{

/// Questions to draw from a stratum of `population` questions:
/// ten percent rounded up, at least 30 (or everything when fewer exist), at most 100.
std::size_t sample_size(std::size_t population);

struct StratumSample
{
  Stratum stratum;
  std::size_t population = 0;
  std::size_t sample = 0;
  std::vector<std::string> question_ids;  ///< in generation order

  bool operator==(const StratumSample &) const = default;
};

struct SamplePlan
{
  std::string system_name;
  std::uint64_t seed = 0;
  std::vector<StratumSample> strata;  ///< one entry per stratum, reporting order

  std::size_t total() const;
  bool operator==(const SamplePlan &) const = default;
};

/// Uniform sampling without replacement inside every stratum, driven by one seeded generator.
SamplePlan build_sample_plan(const QuestionSet & questions, std::uint64_t seed);

nlohmann::ordered_json to_json(const SamplePlan & plan);
SamplePlan sample_plan_from_json(const nlohmann::json & j);

void save_sample_plan(const SamplePlan & plan, const std::filesystem::path & path);
SamplePlan load_sample_plan(const std::filesystem::path & path);

}  // namespace archbench

#endif  // ARCHBENCH__SAMPLER_HPP_
