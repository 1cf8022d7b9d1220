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

#ifndef ARCHBENCH__PROMPTKIT_HPP_
#define ARCHBENCH__PROMPTKIT_HPP_

#include <chrono>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "archbench/questgen.hpp"

namespace archbench
{

/// Wording inserted for the "{answer instruction}" placeholder.
struct PromptConfig
{
  std::string bool_instruction = "a Yes or No answer";
  std::string mcq_instruction = "the number of the correct option";
  std::string name_list_instruction = "a list of the names";
  std::string type_name_instruction = "the type name";

  /// Reads the four strings from a JSON object; absent keys keep their defaults.
  static PromptConfig from_json(const nlohmann::json & j);
  static PromptConfig load(const std::filesystem::path & path);
  bool operator==(const PromptConfig &) const = default;
};

std::string answer_instruction(
  QuestionType qtype, Category category, const PromptConfig & config = {});

using Timestamp = std::chrono::system_clock::time_point;

struct PromptRecord
{
  std::string question_id;
  std::string system_name;
  std::string system_prompt;   ///< the "# System Prompt" section
  std::string user_content;    ///< preamble, instruction and question
  std::string rendered_text;   ///< system_prompt + blank line + user_content
  std::string content_hash;    ///< SHA-256 of rendered_text
  Timestamp created_at{};

  bool operator==(const PromptRecord &) const = default;
};

/// The template with its three placeholders "{json}", "{answer instruction}" and "{question}".
std::string_view prompt_template();

/// Fills the template for one question. Throws PromptError when the question
/// text or topology JSON contains one of the template's tags.
PromptRecord render_prompt(
  const Question & question, std::string_view system_name, std::string_view topology_json,
  const PromptConfig & config = {}, Timestamp created_at = std::chrono::system_clock::now());

/// One JSON object per line. created_at is not written: all records of a
/// prompts stage share the stage timestamp kept in the run manifest.
std::string prompts_to_jsonl(std::span<const PromptRecord> prompts);
std::vector<PromptRecord> prompts_from_jsonl(std::string_view text, Timestamp created_at = {});

}  // namespace archbench

#endif  // ARCHBENCH__PROMPTKIT_HPP_
