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

#include "archbench/promptkit.hpp"

#include <array>
#include <sstream>

#include <fmt/format.h>

#include "archbench/errors.hpp"
#include "archbench/hashing.hpp"
#include "archbench/io.hpp"

namespace archbench
{

namespace
{

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kSystemPrompt =
  "# System Prompt\n"
  "\n"
  "The Robot Operating System (ROS) is a set of software libraries and tools for building "
  "robot applications. ROS2 is a middleware framework built on the Data Distribution Service "
  "(DDS) protocol.\n"
  "\n"
  "You are an AI assistant specialising in ROS2 robotic systems.\n"
  "You can analyse and reason about robotic systems.\n"
  "You aid ROS2 architects by answering questions about a given ROS2 system.\n"
  "\n"
  "ROS2 robotic systems are presented as system topologies in JSON format, including "
  "references to the ROS2 entities: nodes, topics, and services.\n"
  "Communication between nodes is achieved through the anonymous publish/subscribe system or "
  "through the request/response mechanism between clients and service servers.\n"
  "\n"
  "Answer questions solely based on the explicit content of the input.\n"
  "Do not infer, guess, or assume any information that is not present in the data.\n"
  "If the question lacks sufficient context, state what additional information is required "
  "to answer the question effectively.\n"
  "Respond by providing the direct answer to the question and a reference to where this can "
  "be found in the context provided.\n"
  "\n"
  "Be honest about the limitations of the data. Clarify uncertainty respectfully and avoid "
  "misleading conclusions.";

// User content is split at its placeholders: head {json} middle {answer instruction} tail {question} closer.
constexpr std::string_view kUserHead =
  "# Preamble\n"
  "\n"
  "The following is a JSON topology of a ROS2 robotic system.\n"
  "It lists the nodes, their publishers, subscribers, clients and service servers.\n"
  "\n"
  "# Instruction\n"
  "\n"
  "Analyse the <json> topology and answer the <question> strictly based on the provided "
  "<json> topology.\n"
  "\n"
  "<json>";

constexpr std::string_view kUserMiddle =
  "<json>\n"
  "\n"
  "Please provide your answer between the <answer></answer> tags and the explanation between "
  "the <explanation></explanation> tags.\n"
  "Your output must include ";

constexpr std::string_view kUserTail =
  ", and must not exceed the limit of 100 words.\n"
  "\n"
  "<question>";

constexpr std::string_view kUserCloser =
  "<question>\n"
  "\n"
  "Let's think step by step to be sure we have the right answer.\n";

constexpr std::array<std::string_view, 6> kReservedTags = {
  "<json>", "<question>", "<answer>", "</answer>", "<explanation>", "</explanation>"};

void check_reserved(std::string_view what, std::string_view text)
{
  for (auto tag : kReservedTags) {
    if (text.find(tag) != std::string_view::npos) {
      throw PromptError(fmt::format("{} contains reserved tag {}", what, tag));
    }
  }
}

std::string get_or(const json & j, const char * key, const std::string & fallback)
{
  auto it = j.find(key);
  if (it == j.end()) {
    return fallback;
  }
  if (!it->is_string()) {
    throw ConfigError(fmt::format("prompt config: '{}' must be a string", key));
  }
  return it->get<std::string>();
}

}  // namespace

PromptConfig PromptConfig::from_json(const json & j)
{
  if (!j.is_object()) {
    throw ConfigError("prompt config must be a JSON object");
  }
  PromptConfig defaults;
  PromptConfig out;
  out.bool_instruction = get_or(j, "bool", defaults.bool_instruction);
  out.mcq_instruction = get_or(j, "mcq", defaults.mcq_instruction);
  out.name_list_instruction = get_or(j, "open_names", defaults.name_list_instruction);
  out.type_name_instruction = get_or(j, "open_types", defaults.type_name_instruction);
  return out;
}

PromptConfig PromptConfig::load(const std::filesystem::path & path)
{
  try {
    return from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error & e) {
    throw ConfigError(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

std::string answer_instruction(QuestionType qtype, Category category, const PromptConfig & config)
{
  if (!is_valid_stratum(category, qtype)) {
    throw PromptError(
            fmt::format("no {} questions in category {}", to_string(qtype), to_string(category)));
  }
  switch (qtype) {
    case QuestionType::Bool: return config.bool_instruction;
    case QuestionType::Mcq: return config.mcq_instruction;
    case QuestionType::Open:
      if (category == Category::ServiceType || category == Category::TopicType) {
        return config.type_name_instruction;
      }
      return config.name_list_instruction;
  }
  throw PromptError("unreachable question type");
}

std::string_view prompt_template()
{
  static const std::string text = fmt::format(
    "{}\n\n{}{{json}}{}{{answer instruction}}{}{{question}}{}",
    kSystemPrompt, kUserHead, kUserMiddle, kUserTail, kUserCloser);
  return text;
}

PromptRecord render_prompt(
  const Question & question, std::string_view system_name, std::string_view topology_json,
  const PromptConfig & config, Timestamp created_at)
{
  check_reserved("question text", question.text);
  check_reserved("topology JSON", topology_json);
  const std::string instruction = answer_instruction(question.qtype, question.category, config);
  check_reserved("answer instruction", instruction);

  PromptRecord record;
  record.question_id = question.id;
  record.system_name = std::string(system_name);
  record.system_prompt = std::string(kSystemPrompt);
  record.user_content.reserve(
    kUserHead.size() + topology_json.size() + kUserMiddle.size() + instruction.size() +
    kUserTail.size() + question.text.size() + kUserCloser.size());
  record.user_content.append(kUserHead)
  .append(topology_json)
  .append(kUserMiddle)
  .append(instruction)
  .append(kUserTail)
  .append(question.text)
  .append(kUserCloser);
  record.rendered_text = record.system_prompt + "\n\n" + record.user_content;
  record.content_hash = sha256_hex(record.rendered_text);
  record.created_at = created_at;
  return record;
}

std::string prompts_to_jsonl(std::span<const PromptRecord> prompts)
{
  std::string out;
  for (const auto & p : prompts) {
    ordered_json line;
    line["question_id"] = p.question_id;
    line["system_name"] = p.system_name;
    line["content_hash"] = p.content_hash;
    line["system_prompt"] = p.system_prompt;
    line["user_content"] = p.user_content;
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<PromptRecord> prompts_from_jsonl(std::string_view text, Timestamp created_at)
{
  std::vector<PromptRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    try {
      const json j = json::parse(line);
      PromptRecord p;
      p.question_id = j.at("question_id").get<std::string>();
      p.system_name = j.at("system_name").get<std::string>();
      p.system_prompt = j.at("system_prompt").get<std::string>();
      p.user_content = j.at("user_content").get<std::string>();
      p.rendered_text = p.system_prompt + "\n\n" + p.user_content;
      p.content_hash = sha256_hex(p.rendered_text);
      p.created_at = created_at;
      if (p.content_hash != j.at("content_hash").get<std::string>()) {
        throw PromptError(fmt::format("prompt line {}: content hash mismatch", line_no));
      }
      out.push_back(std::move(p));
    } catch (const json::exception & e) {
      throw PromptError(fmt::format("prompt line {}: {}", line_no, e.what()));
    }
  }
  return out;
}

}  // namespace archbench
