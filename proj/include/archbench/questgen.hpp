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

#ifndef ARCHBENCH__QUESTGEN_HPP_
#define ARCHBENCH__QUESTGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "archbench/graph_oracle.hpp"
#include "archbench/topology.hpp"

namespace archbench
{

enum class Category
{
  Entity,
  Publish,
  Subscribe,
  Service,
  Client,
  Message,
  ServiceType,
  TopicType,
};

enum class QuestionType
{
  Bool,
  Mcq,
  Open,
};

std::string_view to_string(Category category);
std::string_view to_string(QuestionType qtype);
Category parse_category(std::string_view text);
QuestionType parse_question_type(std::string_view text);

/// A (category, question type) cell. Questions are counted and sampled per stratum.
struct Stratum
{
  Category category;
  QuestionType qtype;

  auto operator<=>(const Stratum &) const = default;
};

/// "PUBLISH_BOOL" style label.
std::string stratum_label(const Stratum & stratum);

/// The 13 valid strata in reporting order: ENTITY BOOL, ENTITY MCQ, PUBLISH
/// BOOL, PUBLISH OPEN, ... MESSAGE BOOL, SERVICE_TYPE OPEN, TOPIC_TYPE OPEN.
const std::array<Stratum, 13> & question_strata();

bool is_valid_stratum(Category category, QuestionType qtype);

struct Question
{
  std::string id;
  int level = 0;
  Category category = Category::Entity;
  QuestionType qtype = QuestionType::Bool;
  std::string text;
  Answer ground_truth;
  std::vector<std::string> subjects;

  Stratum stratum() const {return {category, qtype};}
  bool operator==(const Question &) const = default;
};

struct QuestionSet
{
  std::string system_name;
  std::uint64_t seed = 0;
  std::vector<Question> questions;

  bool operator==(const QuestionSet &) const = default;
};

/// Stable id: truncated SHA-256 over system, category, type and subjects.
std::string question_id(
  std::string_view system_name, Category category, QuestionType qtype,
  std::span<const std::string> subjects);

/// Plausible names that are not entities of `topo`, one per real entity.
///
/// Real names are split on '/' and '_' into a segment pool; each fake name
/// draws a segment count from the real names' segment-count distribution,
/// joins that many pooled segments with '_' and prefixes '/'. Candidates
/// equal to a real or earlier fake name (ignoring a leading '/') are
/// rejected. After repeated rejections one extra segment is allowed.
/// Throws GenerationError when no unique name can be found.
std::vector<std::string> generate_fake_entities(const Topology & topo, std::uint64_t seed);

/// Ground truth for a question about `subjects`.
Answer find_answer(
  const Topology & topo, Category category, QuestionType qtype,
  std::span<const std::string> subjects, const OracleOptions & options = {});

/// The full question set, in generation order:
/// fake-entity existence, real-entity existence and kind, per-node
/// publish/subscribe, service/client and communication-path questions, then
/// service and topic types.
QuestionSet generate_questions(
  const Topology & topo, std::uint64_t seed, const OracleOptions & options = {});

/// Number of questions generate_questions emits for a graph with the given counts:
/// N(N + 2S + 2T + 5) + 3S + 3T + (N + S + T).
std::uint64_t expected_count(std::uint64_t n_nodes, std::uint64_t n_services, std::uint64_t n_topics);

nlohmann::json answer_to_json(const Answer & answer);
Answer answer_from_json(const nlohmann::json & j);

nlohmann::ordered_json to_json(const QuestionSet & set);
QuestionSet question_set_from_json(const nlohmann::json & j);

void save_question_set(const QuestionSet & set, const std::filesystem::path & path);
QuestionSet load_question_set(const std::filesystem::path & path);

}  // namespace archbench

#endif  // ARCHBENCH__QUESTGEN_HPP_
