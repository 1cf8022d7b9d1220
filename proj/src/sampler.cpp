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

#include "archbench/sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "archbench/errors.hpp"
#include "archbench/io.hpp"
#include "archbench/rng.hpp"

namespace archbench
{

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t sample_size(std::size_t population)
{
  constexpr std::size_t kMinimum = 30;
  constexpr std::size_t kMaximum = 100;
  const std::size_t tenth = (population + 9) / 10;  // ceil(0.1 * G)
  if (tenth < kMinimum) {
    return std::min(population, kMinimum);
  }
  return std::min(tenth, kMaximum);
}

std::size_t SamplePlan::total() const
{
  std::size_t sum = 0;
  for (const auto & s : strata) {
    sum += s.question_ids.size();
  }
  return sum;
}

SamplePlan build_sample_plan(const QuestionSet & questions, std::uint64_t seed)
{
  std::map<Stratum, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < questions.questions.size(); ++i) {
    members[questions.questions[i].stratum()].push_back(i);
  }

  SamplePlan plan;
  plan.system_name = questions.system_name;
  plan.seed = seed;
  SeededRng rng(seed);
  for (const auto & stratum : question_strata()) {
    std::vector<std::size_t> pool = members[stratum];
    StratumSample entry;
    entry.stratum = stratum;
    entry.population = pool.size();
    entry.sample = sample_size(pool.size());

    // Partial Fisher-Yates: the first `sample` slots become the draw.
    for (std::size_t i = 0; i < entry.sample; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(entry.sample);
    std::sort(pool.begin(), pool.end());
    for (std::size_t index : pool) {
      entry.question_ids.push_back(questions.questions[index].id);
    }
    plan.strata.push_back(std::move(entry));
  }
  return plan;
}

ordered_json to_json(const SamplePlan & plan)
{
  ordered_json doc;
  doc["system_name"] = plan.system_name;
  doc["seed"] = plan.seed;
  doc["total"] = plan.total();
  doc["strata"] = ordered_json::array();
  for (const auto & s : plan.strata) {
    ordered_json entry;
    entry["category"] = to_string(s.stratum.category);
    entry["qtype"] = to_string(s.stratum.qtype);
    entry["population"] = s.population;
    entry["sample"] = s.sample;
    entry["question_ids"] = s.question_ids;
    doc["strata"].push_back(std::move(entry));
  }
  return doc;
}

SamplePlan sample_plan_from_json(const json & j)
{
  try {
    SamplePlan plan;
    plan.system_name = j.at("system_name").get<std::string>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    for (const auto & entry : j.at("strata")) {
      StratumSample s;
      s.stratum = {
        parse_category(entry.at("category").get<std::string>()),
        parse_question_type(entry.at("qtype").get<std::string>())};
      s.population = entry.at("population").get<std::size_t>();
      s.sample = entry.at("sample").get<std::size_t>();
      s.question_ids = entry.at("question_ids").get<std::vector<std::string>>();
      if (s.question_ids.size() != std::min(s.population, s.sample) ||
        s.sample != sample_size(s.population))
      {
        throw Error(
                fmt::format(
                  "plan stratum {} is inconsistent (population {}, sample {}, {} ids)",
                  stratum_label(s.stratum), s.population, s.sample, s.question_ids.size()));
      }
      plan.strata.push_back(std::move(s));
    }
    return plan;
  } catch (const json::exception & e) {
    throw Error(fmt::format("malformed sample plan: {}", e.what()));
  }
}

void save_sample_plan(const SamplePlan & plan, const std::filesystem::path & path)
{
  write_text_file(path, to_json(plan).dump(2) + "\n");
}

SamplePlan load_sample_plan(const std::filesystem::path & path)
{
  try {
    return sample_plan_from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error & e) {
    throw Error(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

}  // namespace archbench
