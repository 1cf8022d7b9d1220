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

#include <map>
#include <set>
#include <string>

#include "archbench/errors.hpp"
#include "archbench/questgen.hpp"
#include "random_topology.hpp"
#include "reference_counts.hpp"

namespace archbench
{
namespace
{

const std::filesystem::path kFixtures = ARCHBENCH_SOURCE_DIR "/fixtures";

std::map<Stratum, std::size_t> stratum_counts(const QuestionSet & set)
{
  std::map<Stratum, std::size_t> out;
  for (const auto & q : set.questions) {
    ++out[q.stratum()];
  }
  return out;
}

void expect_reference_row(const QuestionSet & set, const test::SystemCounts & row)
{
  const auto counts = stratum_counts(set);
  const auto & strata = question_strata();
  for (std::size_t i = 0; i < strata.size(); ++i) {
    auto it = counts.find(strata[i]);
    const std::size_t got = it == counts.end() ? 0 : it->second;
    EXPECT_EQ(got, row.generated[i]) << row.name << " " << stratum_label(strata[i]);
  }
  EXPECT_EQ(set.questions.size(), row.generated_total);
}

TEST(Questgen, PubsubFixtureMatchesReferenceRow)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  expect_reference_row(generate_questions(topo, 42), test::kSystems[0]);
}

TEST(Questgen, SystemShapesMatchReferenceRows)
{
  for (const auto & row : test::kSystems) {
    const Topology topo = test::shaped_topology(row.nodes, row.services, row.topics, 5);
    expect_reference_row(generate_questions(topo, 42), row);
  }
}

TEST(Questgen, ExpectedCountOnReferenceShapes)
{
  EXPECT_EQ(expected_count(2, 12, 3), 136u);
  EXPECT_EQ(expected_count(8, 53, 15), 1472u);
  EXPECT_EQ(expected_count(40, 276, 33), 27796u);
  EXPECT_EQ(expected_count(0, 0, 0), 0u);
}

TEST(Questgen, ExpectedCountMatchesGeneration)
{
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t s = 0; s <= 5; s += 2) {
      for (std::size_t t = 0; t <= 5; t += 2) {
        const Topology topo = test::shaped_topology(n, s, t, n * 100 + s * 10 + t);
        EXPECT_EQ(generate_questions(topo, 1).questions.size(), expected_count(n, s, t))
          << n << "," << s << "," << t;
      }
    }
  }
}

TEST(Questgen, EmptyTopologyYieldsNothing)
{
  const Topology topo("empty", {});
  EXPECT_TRUE(generate_questions(topo, 1).questions.empty());
  EXPECT_THROW(generate_fake_entities(topo, 1), GenerationError);
}

TEST(Questgen, FakeEntitiesAreNewAndDistinct)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  const auto fakes = generate_fake_entities(topo, 42);
  ASSERT_EQ(fakes.size(), 17u);
  std::set<std::string> seen;
  for (const auto & name : fakes) {
    EXPECT_FALSE(topo.kind_of(name).has_value()) << name;
    EXPECT_FALSE(topo.kind_of(name.substr(1)).has_value()) << name;
    EXPECT_TRUE(seen.insert(name).second) << name;
    EXPECT_EQ(name.front(), '/');
  }
  EXPECT_EQ(fakes, generate_fake_entities(topo, 42));
  EXPECT_NE(fakes, generate_fake_entities(topo, 43));
}

TEST(Questgen, FakeEntitiesOnRandomGraphs)
{
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Topology topo = test::random_topology(seed);
    const auto fakes = generate_fake_entities(topo, seed);
    EXPECT_EQ(fakes.size(), topo.entity_count());
    for (const auto & name : fakes) {
      EXPECT_FALSE(topo.kind_of(name).has_value());
    }
  }
}

TEST(Questgen, QuestionInvariants)
{
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Topology topo = test::random_topology(seed);
    const QuestionSet set = generate_questions(topo, seed);
    std::set<std::string> ids;
    for (const auto & q : set.questions) {
      EXPECT_TRUE(ids.insert(q.id).second);
      EXPECT_TRUE(is_valid_stratum(q.category, q.qtype));
      for (const auto & s : q.subjects) {
        EXPECT_NE(q.text.find(s), std::string::npos) << q.text;
      }
      switch (q.qtype) {
        case QuestionType::Bool:
          EXPECT_TRUE(std::holds_alternative<BoolAnswer>(q.ground_truth));
          break;
        case QuestionType::Mcq:
          EXPECT_TRUE(std::holds_alternative<OptionAnswer>(q.ground_truth));
          break;
        case QuestionType::Open:
          EXPECT_TRUE(
            std::holds_alternative<NameSetAnswer>(q.ground_truth) ||
            std::holds_alternative<TypeSetAnswer>(q.ground_truth));
          break;
      }
      const int level = q.category == Category::Entity ? 0 :
        q.category == Category::Message ? 2 : 1;
      EXPECT_EQ(q.level, level);
    }
  }
}

TEST(Questgen, GroundTruthAgreesWithRawRecords)
{
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    const auto records = test::random_node_records(seed);
    const Topology topo("r", records);
    std::map<std::string, const NodeRecord *> by_name;
    for (const auto & r : records) {
      by_name[r.name] = &r;
    }
    auto has = [](const std::vector<Endpoint> & list, const std::string & name) {
        return std::any_of(
          list.begin(), list.end(), [&](const Endpoint & e) {return e.interface_name == name;});
      };
    for (const auto & q : generate_questions(topo, seed).questions) {
      if (q.qtype != QuestionType::Bool || q.subjects.size() != 2) {
        continue;
      }
      const NodeRecord & node = *by_name.at(q.subjects[0]);
      const bool truth = std::get<BoolAnswer>(q.ground_truth).value;
      switch (q.category) {
        case Category::Publish:
          EXPECT_EQ(truth, has(node.publishers, q.subjects[1]));
          break;
        case Category::Subscribe:
          EXPECT_EQ(truth, has(node.subscribers, q.subjects[1]));
          break;
        case Category::Service:
          EXPECT_EQ(truth, has(node.service_servers, q.subjects[1]));
          break;
        case Category::Client:
          EXPECT_EQ(truth, has(node.clients, q.subjects[1]));
          break;
        case Category::Message:
          EXPECT_EQ(truth, test::brute_force_path(records, q.subjects[0], q.subjects[1]));
          break;
        default:
          ADD_FAILURE() << "unexpected two-subject question " << q.text;
      }
    }
  }
}

TEST(Questgen, TextsFollowTemplates)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  const QuestionSet set = generate_questions(topo, 42);
  std::set<std::string> texts;
  for (const auto & q : set.questions) {
    texts.insert(q.text);
  }
  EXPECT_TRUE(texts.contains("Is there a ROS2 entity called /rosout?"));
  EXPECT_TRUE(texts.contains(
      "What kind of ROS2 entity is /topic? Possible answers: 1- a ROS topic, "
      "2- a ROS service, 3- a ROS node."));
  EXPECT_TRUE(texts.contains("Does node minimal_publisher publish to topic /topic?"));
  EXPECT_TRUE(texts.contains("To which topics is node minimal_subscriber subscribed?"));
  EXPECT_TRUE(texts.contains(
      "Is there a communication path from node minimal_subscriber to node minimal_publisher "
      "via a topic or service?"));
  EXPECT_TRUE(texts.contains("What is the type of topic /parameter_events?"));
}

TEST(Questgen, IdIsContentHash)
{
  // sha256("pubsub\x1fPUBLISH\x1fBOOL\x1fminimal_publisher\x1f/topic"), first 16 hex digits.
  const std::vector<std::string> subjects = {"minimal_publisher", "/topic"};
  EXPECT_EQ(
    question_id("pubsub", Category::Publish, QuestionType::Bool, subjects), "00e720bf1cb89500");
}

TEST(Questgen, RealQuestionsDoNotDependOnSeed)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  const QuestionSet a = generate_questions(topo, 1);
  const QuestionSet b = generate_questions(topo, 2);
  ASSERT_EQ(a.questions.size(), b.questions.size());
  for (std::size_t i = 17; i < a.questions.size(); ++i) {
    EXPECT_EQ(a.questions[i], b.questions[i]);
  }
}

TEST(Questgen, JsonRoundTrip)
{
  const Topology topo = test::random_topology(77);
  const QuestionSet set = generate_questions(topo, 77);
  const QuestionSet again = question_set_from_json(nlohmann::json::parse(to_json(set).dump()));
  EXPECT_EQ(again, set);
}

TEST(Questgen, FindAnswerValidatesArguments)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  const std::vector<std::string> one = {"minimal_publisher"};
  EXPECT_THROW(find_answer(topo, Category::Message, QuestionType::Open, one), Error);
  EXPECT_THROW(find_answer(topo, Category::Publish, QuestionType::Bool, one), Error);
  EXPECT_THROW(parse_category("NOPE"), Error);
}

}  // namespace
}  // namespace archbench
