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

#include <gtest/gtest.h>

#include <set>

#include "archbench/errors.hpp"
#include "archbench/sampler.hpp"
#include "random_topology.hpp"
#include "reference_counts.hpp"

namespace archbench
{
namespace
{

TEST(Sampler, SampleSizeSpotValues)
{
  EXPECT_EQ(sample_size(424), 43u);
  EXPECT_EQ(sample_size(698), 70u);
  EXPECT_EQ(sample_size(349), 35u);
  EXPECT_EQ(sample_size(1320), 100u);
  EXPECT_EQ(sample_size(34), 30u);
  EXPECT_EQ(sample_size(6), 6u);
  EXPECT_EQ(sample_size(8), 8u);
  EXPECT_EQ(sample_size(33), 30u);
  EXPECT_EQ(sample_size(0), 0u);
}

TEST(Sampler, SampleSizeMatchesEveryReferenceCell)
{
  for (const auto & row : test::kSystems) {
    for (std::size_t i = 0; i < row.generated.size(); ++i) {
      EXPECT_EQ(sample_size(row.generated[i]), row.sampled[i]) << row.name << " column " << i;
    }
  }
}

TEST(Sampler, SampleSizeBounds)
{
  for (std::size_t g = 0; g < 3000; ++g) {
    const std::size_t k = sample_size(g);
    EXPECT_LE(k, g);
    EXPECT_LE(k, 100u);
    EXPECT_GE(k, std::min<std::size_t>(g, 30));
  }
}

TEST(Sampler, PlanTotalsMatchReference)
{
  std::size_t grand = 0;
  for (const auto & row : test::kSystems) {
    const Topology topo = test::shaped_topology(row.nodes, row.services, row.topics, 3);
    const SamplePlan plan = build_sample_plan(generate_questions(topo, 42), 42);
    EXPECT_EQ(plan.total(), row.sampled_total) << row.name;
    ASSERT_EQ(plan.strata.size(), 13u);
    for (std::size_t i = 0; i < 13; ++i) {
      EXPECT_EQ(plan.strata[i].sample, row.sampled[i]);
      EXPECT_EQ(plan.strata[i].question_ids.size(), row.sampled[i]);
      EXPECT_EQ(plan.strata[i].population, row.generated[i]);
    }
    grand += plan.total();
  }
  EXPECT_EQ(grand, test::kSampledGrandTotal);
}

TEST(Sampler, SelectionsBelongToTheirStratum)
{
  const Topology topo = test::shaped_topology(8, 53, 15, 3);
  const QuestionSet set = generate_questions(topo, 1);
  const SamplePlan plan = build_sample_plan(set, 9);
  std::map<std::string, Stratum> strata;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < set.questions.size(); ++i) {
    strata[set.questions[i].id] = set.questions[i].stratum();
    position[set.questions[i].id] = i;
  }
  for (const auto & s : plan.strata) {
    std::set<std::string> unique(s.question_ids.begin(), s.question_ids.end());
    EXPECT_EQ(unique.size(), s.question_ids.size());
    for (std::size_t i = 0; i < s.question_ids.size(); ++i) {
      EXPECT_EQ(strata.at(s.question_ids[i]), s.stratum);
      if (i > 0) {
        EXPECT_LT(position.at(s.question_ids[i - 1]), position.at(s.question_ids[i]));
      }
    }
  }
}

TEST(Sampler, DeterministicPerSeed)
{
  const Topology topo = test::shaped_topology(8, 53, 15, 3);
  const QuestionSet set = generate_questions(topo, 1);
  EXPECT_EQ(build_sample_plan(set, 5), build_sample_plan(set, 5));
  EXPECT_NE(build_sample_plan(set, 5), build_sample_plan(set, 6));
}

TEST(Sampler, SamplingIsRoughlyUniform)
{
  // 424 SERVICE BOOL questions, 43 drawn: each should be chosen ~10% of the time.
  const Topology topo = test::shaped_topology(8, 53, 15, 3);
  const QuestionSet set = generate_questions(topo, 1);
  std::map<std::string, int> hits;
  const int rounds = 400;
  for (int seed = 0; seed < rounds; ++seed) {
    const SamplePlan plan = build_sample_plan(set, static_cast<std::uint64_t>(seed));
    for (const auto & id : plan.strata[6].question_ids) {
      ++hits[id];
    }
  }
  EXPECT_EQ(hits.size(), 424u);
  for (const auto & [id, n] : hits) {
    EXPECT_NEAR(n, rounds * 43 / 424.0, 25) << id;
  }
}

TEST(Sampler, JsonRoundTripAndValidation)
{
  const Topology topo = test::shaped_topology(3, 4, 5, 3);
  const SamplePlan plan = build_sample_plan(generate_questions(topo, 1), 1);
  EXPECT_EQ(sample_plan_from_json(nlohmann::json::parse(to_json(plan).dump())), plan);
  auto broken = nlohmann::json::parse(to_json(plan).dump());
  broken["strata"][0]["sample"] = 999;
  EXPECT_THROW(sample_plan_from_json(broken), Error);
}

}  // namespace
}  // namespace archbench
