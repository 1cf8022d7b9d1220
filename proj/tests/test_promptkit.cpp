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

#include <string>

#include "archbench/errors.hpp"
#include "archbench/hashing.hpp"
#include "archbench/promptkit.hpp"
#include "archbench/questgen.hpp"

namespace archbench
{
namespace
{

const std::filesystem::path kFixtures = ARCHBENCH_SOURCE_DIR "/fixtures";
const std::filesystem::path kConfig = ARCHBENCH_SOURCE_DIR "/config";

const std::string kExpectedSystem =
  "# System Prompt\n\n"
  "The Robot Operating System (ROS) is a set of software libraries and tools for building "
  "robot applications. ROS2 is a middleware framework built on the Data Distribution Service "
  "(DDS) protocol.\n\n"
  "You are an AI assistant specialising in ROS2 robotic systems.\n"
  "You can analyse and reason about robotic systems.\n"
  "You aid ROS2 architects by answering questions about a given ROS2 system.\n\n"
  "ROS2 robotic systems are presented as system topologies in JSON format, including "
  "references to the ROS2 entities: nodes, topics, and services.\n"
  "Communication between nodes is achieved through the anonymous publish/subscribe system or "
  "through the request/response mechanism between clients and service servers.\n\n"
  "Answer questions solely based on the explicit content of the input.\n"
  "Do not infer, guess, or assume any information that is not present in the data.\n"
  "If the question lacks sufficient context, state what additional information is required to "
  "answer the question effectively.\n"
  "Respond by providing the direct answer to the question and a reference to where this can be "
  "found in the context provided.\n\n"
  "Be honest about the limitations of the data. Clarify uncertainty respectfully and avoid "
  "misleading conclusions.";

std::string expected_user(
  const std::string & json, const std::string & instruction, const std::string & question)
{
  return "# Preamble\n\n"
         "The following is a JSON topology of a ROS2 robotic system.\n"
         "It lists the nodes, their publishers, subscribers, clients and service servers.\n\n"
         "# Instruction\n\n"
         "Analyse the <json> topology and answer the <question> strictly based on the provided "
         "<json> topology.\n\n"
         "<json>" + json + "<json>\n\n"
         "Please provide your answer between the <answer></answer> tags and the explanation "
         "between the <explanation></explanation> tags.\n"
         "Your output must include " + instruction +
         ", and must not exceed the limit of 100 words.\n\n"
         "<question>" + question + "<question>\n\n"
         "Let's think step by step to be sure we have the right answer.\n";
}

Question sample_question(QuestionType qtype, Category category, std::string text)
{
  Question q;
  q.id = "q1";
  q.category = category;
  q.qtype = qtype;
  q.text = std::move(text);
  q.ground_truth = BoolAnswer{true};
  return q;
}

TEST(Promptkit, RendersTemplateVerbatim)
{
  const Question q = sample_question(
    QuestionType::Bool, Category::Publish, "Does node a publish to topic /t?");
  const std::string json = "{\"system_name\": \"s\"}";
  const PromptRecord p = render_prompt(q, "s", json);
  EXPECT_EQ(p.system_prompt, kExpectedSystem);
  EXPECT_EQ(p.user_content, expected_user(json, "a Yes or No answer", q.text));
  EXPECT_EQ(p.rendered_text, kExpectedSystem + "\n\n" + p.user_content);
  EXPECT_EQ(p.content_hash, sha256_hex(p.rendered_text));
  EXPECT_EQ(p.question_id, "q1");
  EXPECT_EQ(p.system_name, "s");
}

TEST(Promptkit, TemplateHasThreePlaceholders)
{
  const std::string_view t = prompt_template();
  EXPECT_NE(t.find("<json>{json}<json>"), std::string_view::npos);
  EXPECT_NE(t.find("include {answer instruction},"), std::string_view::npos);
  EXPECT_NE(t.find("<question>{question}<question>"), std::string_view::npos);
}

TEST(Promptkit, InstructionPerQuestionKind)
{
  EXPECT_EQ(answer_instruction(QuestionType::Bool, Category::Message), "a Yes or No answer");
  EXPECT_EQ(
    answer_instruction(QuestionType::Mcq, Category::Entity), "the number of the correct option");
  EXPECT_EQ(answer_instruction(QuestionType::Open, Category::Publish), "a list of the names");
  EXPECT_EQ(answer_instruction(QuestionType::Open, Category::TopicType), "the type name");
  EXPECT_EQ(answer_instruction(QuestionType::Open, Category::ServiceType), "the type name");
}

TEST(Promptkit, ConfigFileMatchesDefaults)
{
  EXPECT_EQ(PromptConfig::load(kConfig / "prompt.json"), PromptConfig{});
  const PromptConfig custom = PromptConfig::from_json(nlohmann::json::parse(R"({"bool":"yes/no"})"));
  EXPECT_EQ(custom.bool_instruction, "yes/no");
  EXPECT_EQ(custom.mcq_instruction, PromptConfig{}.mcq_instruction);
  EXPECT_THROW(PromptConfig::from_json(nlohmann::json::parse(R"({"bool":1})")), ConfigError);
}

TEST(Promptkit, RejectsReservedTags)
{
  const Question bad = sample_question(
    QuestionType::Bool, Category::Entity, "Is there an entity called <answer>?");
  EXPECT_THROW(render_prompt(bad, "s", "{}"), PromptError);
  const Question ok = sample_question(QuestionType::Bool, Category::Entity, "Is there x?");
  EXPECT_THROW(render_prompt(ok, "s", "{\"name\": \"<question>\"}"), PromptError);
  PromptConfig config;
  config.bool_instruction = "an <explanation>";
  EXPECT_THROW(render_prompt(ok, "s", "{}", config), PromptError);
}

TEST(Promptkit, PlaceholderTextInValuesIsNotExpanded)
{
  const Question q = sample_question(QuestionType::Bool, Category::Entity, "Is {json} an entity?");
  const PromptRecord p = render_prompt(q, "s", "{\"x\": \"{question}\"}");
  EXPECT_NE(p.user_content.find("<question>Is {json} an entity?<question>"), std::string::npos);
  EXPECT_NE(p.user_content.find("<json>{\"x\": \"{question}\"}<json>"), std::string::npos);
}

TEST(Promptkit, JsonlRoundTripKeepsBytes)
{
  const Topology topo = load_topology(kFixtures / "pubsub.json");
  const std::string json = serialize_topology(topo);
  const QuestionSet set = generate_questions(topo, 42);
  const Timestamp when = std::chrono::system_clock::time_point{std::chrono::seconds{1700000000}};
  std::vector<PromptRecord> prompts;
  for (const auto & q : set.questions) {
    prompts.push_back(render_prompt(q, "pubsub", json, {}, when));
  }
  const std::string text = prompts_to_jsonl(prompts);
  const auto back = prompts_from_jsonl(text, when);
  EXPECT_EQ(back, prompts);
  EXPECT_EQ(prompts_to_jsonl(back), text);
}

TEST(Promptkit, JsonlDetectsTampering)
{
  const Question q = sample_question(QuestionType::Bool, Category::Entity, "Is there x?");
  const PromptRecord p = render_prompt(q, "s", "{}");
  std::string text = prompts_to_jsonl(std::vector<PromptRecord>{p});
  text.replace(text.find("Is there x?"), 11, "Is there y?");
  EXPECT_THROW(prompts_from_jsonl(text), Error);
}

}  // namespace
}  // namespace archbench
