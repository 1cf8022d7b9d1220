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

#include "archbench/questgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

#include "archbench/errors.hpp"
#include "archbench/hashing.hpp"
#include "archbench/io.hpp"
#include "archbench/rng.hpp"

namespace archbench
{

namespace
{

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<Stratum, 13> kStrata = {{
  {Category::Entity, QuestionType::Bool},
  {Category::Entity, QuestionType::Mcq},
  {Category::Publish, QuestionType::Bool},
  {Category::Publish, QuestionType::Open},
  {Category::Subscribe, QuestionType::Bool},
  {Category::Subscribe, QuestionType::Open},
  {Category::Service, QuestionType::Bool},
  {Category::Service, QuestionType::Open},
  {Category::Client, QuestionType::Bool},
  {Category::Client, QuestionType::Open},
  {Category::Message, QuestionType::Bool},
  {Category::ServiceType, QuestionType::Open},
  {Category::TopicType, QuestionType::Open},
}};

constexpr std::size_t kAttemptsPerWidth = 128;

std::vector<std::string> split_segments(std::string_view name)
{
  std::vector<std::string> out;
  std::string current;
  for (char c : name) {
    if (c == '/' || c == '_') {
      if (!current.empty()) {
        out.push_back(std::move(current));
        current.clear();
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) {
    out.push_back(std::move(current));
  }
  return out;
}

std::string_view strip_root(std::string_view name)
{
  return (!name.empty() && name.front() == '/') ? name.substr(1) : name;
}

std::string substitute(std::string_view pattern, std::span<const std::string> subjects)
{
  // Patterns use {0}, {1} for subjects.
  if (subjects.size() == 1) {
    return fmt::format(fmt::runtime(pattern), subjects[0]);
  }
  return fmt::format(fmt::runtime(pattern), subjects[0], subjects[1]);
}

std::string_view text_pattern(Category category, QuestionType qtype)
{
  switch (category) {
    case Category::Entity:
      return qtype == QuestionType::Bool ?
             "Is there a ROS2 entity called {0}?" :
             "What kind of ROS2 entity is {0}? Possible answers: 1- a ROS topic, "
             "2- a ROS service, 3- a ROS node.";
    case Category::Publish:
      return qtype == QuestionType::Bool ?
             "Does node {0} publish to topic {1}?" :
             "To which topics can node {0} publish?";
    case Category::Subscribe:
      return qtype == QuestionType::Bool ?
             "Is node {0} subscribed to topic {1}?" :
             "To which topics is node {0} subscribed?";
    case Category::Service:
      return qtype == QuestionType::Bool ?
             "Does node {0} provide service {1}?" :
             "Which services does node {0} provide?";
    case Category::Client:
      return qtype == QuestionType::Bool ?
             "Does node {0} use service {1} as a client?" :
             "Which services does node {0} use as a client?";
    case Category::Message:
      return "Is there a communication path from node {0} to node {1} via a topic or service?";
    case Category::ServiceType:
      return "What is the type of service {0}?";
    case Category::TopicType:
      return "What is the type of topic {0}?";
  }
  return {};
}

int level_of(Category category)
{
  switch (category) {
    case Category::Entity: return 0;
    case Category::Message: return 2;
    default: return 1;
  }
}

std::size_t subject_count(Category category, QuestionType qtype)
{
  if (qtype != QuestionType::Bool || category == Category::Entity) {
    return 1;
  }
  return 2;
}

class Builder
{
public:
  Builder(const Topology & topo, const OracleOptions & options, QuestionSet & out)
  : topo_(topo), options_(options), out_(out) {}

  void add(Category category, QuestionType qtype, std::vector<std::string> subjects)
  {
    Question q;
    q.category = category;
    q.qtype = qtype;
    q.level = level_of(category);
    q.text = substitute(text_pattern(category, qtype), subjects);
    q.ground_truth = find_answer(topo_, category, qtype, subjects, options_);
    q.id = question_id(topo_.system_name(), category, qtype, subjects);
    q.subjects = std::move(subjects);
    if (!ids_.insert(q.id).second) {
      throw GenerationError(fmt::format("question id collision on '{}'", q.text));
    }
    out_.questions.push_back(std::move(q));
  }

private:
  const Topology & topo_;
  const OracleOptions & options_;
  QuestionSet & out_;
  std::unordered_set<std::string> ids_;
};

}  // namespace

std::string_view to_string(Category category)
{
  switch (category) {
    case Category::Entity: return "ENTITY";
    case Category::Publish: return "PUBLISH";
    case Category::Subscribe: return "SUBSCRIBE";
    case Category::Service: return "SERVICE";
    case Category::Client: return "CLIENT";
    case Category::Message: return "MESSAGE";
    case Category::ServiceType: return "SERVICE_TYPE";
    case Category::TopicType: return "TOPIC_TYPE";
  }
  return "UNKNOWN";
}

std::string_view to_string(QuestionType qtype)
{
  switch (qtype) {
    case QuestionType::Bool: return "BOOL";
    case QuestionType::Mcq: return "MCQ";
    case QuestionType::Open: return "OPEN";
  }
  return "UNKNOWN";
}

Category parse_category(std::string_view text)
{
  for (const auto & s : kStrata) {
    if (to_string(s.category) == text) {
      return s.category;
    }
  }
  throw Error(fmt::format("unknown question category '{}'", text));
}

QuestionType parse_question_type(std::string_view text)
{
  for (auto qtype : {QuestionType::Bool, QuestionType::Mcq, QuestionType::Open}) {
    if (to_string(qtype) == text) {
      return qtype;
    }
  }
  throw Error(fmt::format("unknown question type '{}'", text));
}

std::string stratum_label(const Stratum & stratum)
{
  return fmt::format("{}_{}", to_string(stratum.category), to_string(stratum.qtype));
}

const std::array<Stratum, 13> & question_strata()
{
  return kStrata;
}

bool is_valid_stratum(Category category, QuestionType qtype)
{
  return std::find(kStrata.begin(), kStrata.end(), Stratum{category, qtype}) != kStrata.end();
}

std::string question_id(
  std::string_view system_name, Category category, QuestionType qtype,
  std::span<const std::string> subjects)
{
  std::string key = fmt::format("{}\x1f{}\x1f{}", system_name, to_string(category), to_string(qtype));
  for (const auto & s : subjects) {
    key.push_back('\x1f');
    key += s;
  }
  return sha256_hex(key).substr(0, 16);
}

std::vector<std::string> generate_fake_entities(const Topology & topo, std::uint64_t seed)
{
  const auto real = entities(topo);
  if (real.empty()) {
    throw GenerationError("cannot synthesize fake entities for an empty topology");
  }

  std::set<std::string> pool_set;
  std::vector<std::size_t> segment_counts;
  std::set<std::string, std::less<>> taken;
  for (const auto & e : real) {
    auto segments = split_segments(e.name);
    if (!segments.empty()) {
      segment_counts.push_back(segments.size());
    }
    pool_set.insert(segments.begin(), segments.end());
    taken.insert(std::string(strip_root(e.name)));
  }
  if (pool_set.empty()) {
    throw GenerationError("entity names contain no segments to recombine");
  }
  const std::vector<std::string> pool(pool_set.begin(), pool_set.end());

  SeededRng rng(seed);
  std::vector<std::string> fakes;
  fakes.reserve(real.size());
  while (fakes.size() < real.size()) {
    bool found = false;
    for (std::size_t attempt = 0; attempt < 2 * kAttemptsPerWidth && !found; ++attempt) {
      std::size_t width = segment_counts[rng.below(segment_counts.size())];
      if (attempt >= kAttemptsPerWidth) {
        ++width;
      }
      std::string candidate;
      for (std::size_t i = 0; i < width; ++i) {
        candidate += (i == 0) ? "" : "_";
        candidate += pool[rng.below(pool.size())];
      }
      if (taken.insert(candidate).second) {
        fakes.push_back("/" + candidate);
        found = true;
      }
    }
    if (!found) {
      throw GenerationError(
              fmt::format(
                "could only synthesize {} of {} non-colliding fake names for '{}'",
                fakes.size(), real.size(), topo.system_name()));
    }
  }
  return fakes;
}

Answer find_answer(
  const Topology & topo, Category category, QuestionType qtype,
  std::span<const std::string> subjects, const OracleOptions & options)
{
  if (!is_valid_stratum(category, qtype)) {
    throw GenerationError(
            fmt::format("no {} questions in category {}", to_string(qtype), to_string(category)));
  }
  if (subjects.size() != subject_count(category, qtype)) {
    throw GenerationError(
            fmt::format(
              "{} expects {} subject(s), got {}", stratum_label({category, qtype}),
              subject_count(category, qtype), subjects.size()));
  }
  const bool is_bool = qtype == QuestionType::Bool;
  switch (category) {
    case Category::Entity:
      if (is_bool) {
        return oracle::entity_exists(topo, subjects[0]);
      }
      return oracle::entity_kind(topo, subjects[0]);
    case Category::Publish:
      if (is_bool) {
        return oracle::publishes(topo, subjects[0], subjects[1]);
      }
      return oracle::topics_published(topo, subjects[0]);
    case Category::Subscribe:
      if (is_bool) {
        return oracle::subscribed(topo, subjects[0], subjects[1]);
      }
      return oracle::topics_subscribed(topo, subjects[0]);
    case Category::Service:
      if (is_bool) {
        return oracle::provides(topo, subjects[0], subjects[1]);
      }
      return oracle::services_provided(topo, subjects[0]);
    case Category::Client:
      if (is_bool) {
        return oracle::is_client(topo, subjects[0], subjects[1]);
      }
      return oracle::services_client(topo, subjects[0]);
    case Category::Message:
      return oracle::has_comm_path(topo, subjects[0], subjects[1], options);
    case Category::ServiceType:
      return oracle::service_type(topo, subjects[0]);
    case Category::TopicType:
      return oracle::topic_type(topo, subjects[0]);
  }
  throw GenerationError("unreachable question category");
}

QuestionSet generate_questions(
  const Topology & topo, std::uint64_t seed, const OracleOptions & options)
{
  QuestionSet out;
  out.system_name = topo.system_name();
  out.seed = seed;
  out.questions.reserve(
    expected_count(topo.node_count(), topo.service_count(), topo.topic_count()));
  Builder b(topo, options, out);

  const auto real = entities(topo);
  if (!real.empty()) {
    for (auto & fake : generate_fake_entities(topo, seed)) {
      b.add(Category::Entity, QuestionType::Bool, {std::move(fake)});
    }
  }
  for (const auto & e : real) {
    b.add(Category::Entity, QuestionType::Bool, {e.name});
    b.add(Category::Entity, QuestionType::Mcq, {e.name});
  }

  for (const auto & node : topo.nodes()) {
    const std::string & n = node.name;
    for (const auto & [topic, info] : topo.topics()) {
      b.add(Category::Publish, QuestionType::Bool, {n, topic});
      b.add(Category::Subscribe, QuestionType::Bool, {n, topic});
    }
    b.add(Category::Publish, QuestionType::Open, {n});
    b.add(Category::Subscribe, QuestionType::Open, {n});
    for (const auto & [service, info] : topo.services()) {
      b.add(Category::Service, QuestionType::Bool, {n, service});
      b.add(Category::Client, QuestionType::Bool, {n, service});
    }
    b.add(Category::Service, QuestionType::Open, {n});
    b.add(Category::Client, QuestionType::Open, {n});
    for (const auto & other : topo.nodes()) {
      if (other.name != n) {
        b.add(Category::Message, QuestionType::Bool, {n, other.name});
      }
    }
  }

  for (const auto & [service, info] : topo.services()) {
    b.add(Category::ServiceType, QuestionType::Open, {service});
  }
  for (const auto & [topic, info] : topo.topics()) {
    b.add(Category::TopicType, QuestionType::Open, {topic});
  }
  return out;
}

std::uint64_t expected_count(std::uint64_t n_nodes, std::uint64_t n_services, std::uint64_t n_topics)
{
  const std::uint64_t n = n_nodes;
  const std::uint64_t s = n_services;
  const std::uint64_t t = n_topics;
  const std::uint64_t fake_entities = n + s + t;
  return n * (n + 2 * s + 2 * t + 5) + 3 * s + 3 * t + fake_entities;
}

json answer_to_json(const Answer & answer)
{
  struct Visitor
  {
    json operator()(const BoolAnswer & a) const {return {{"kind", "bool"}, {"value", a.value}};}
    json operator()(const OptionAnswer & a) const {return {{"kind", "option"}, {"index", a.index}};}
    json operator()(const NameSetAnswer & a) const {return {{"kind", "names"}, {"values", a.names}};}
    json operator()(const TypeSetAnswer & a) const {return {{"kind", "types"}, {"values", a.types}};}
  };
  return std::visit(Visitor{}, answer);
}

Answer answer_from_json(const json & j)
{
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "bool") {
    return BoolAnswer{j.at("value").get<bool>()};
  }
  if (kind == "option") {
    const int index = j.at("index").get<int>();
    option_kind(index);  // range check
    return OptionAnswer{index};
  }
  if (kind == "names") {
    return NameSetAnswer{j.at("values").get<std::set<std::string>>()};
  }
  if (kind == "types") {
    return TypeSetAnswer{j.at("values").get<std::set<std::string>>()};
  }
  throw Error(fmt::format("unknown answer kind '{}'", kind));
}

ordered_json to_json(const QuestionSet & set)
{
  ordered_json doc;
  doc["system_name"] = set.system_name;
  doc["seed"] = set.seed;
  doc["questions"] = ordered_json::array();
  for (const auto & q : set.questions) {
    ordered_json entry;
    entry["id"] = q.id;
    entry["level"] = q.level;
    entry["category"] = to_string(q.category);
    entry["qtype"] = to_string(q.qtype);
    entry["text"] = q.text;
    entry["ground_truth"] = answer_to_json(q.ground_truth);
    entry["subjects"] = q.subjects;
    doc["questions"].push_back(std::move(entry));
  }
  return doc;
}

QuestionSet question_set_from_json(const json & j)
{
  try {
    QuestionSet set;
    set.system_name = j.at("system_name").get<std::string>();
    set.seed = j.at("seed").get<std::uint64_t>();
    std::unordered_set<std::string> ids;
    for (const auto & entry : j.at("questions")) {
      Question q;
      q.id = entry.at("id").get<std::string>();
      q.level = entry.at("level").get<int>();
      q.category = parse_category(entry.at("category").get<std::string>());
      q.qtype = parse_question_type(entry.at("qtype").get<std::string>());
      q.text = entry.at("text").get<std::string>();
      q.ground_truth = answer_from_json(entry.at("ground_truth"));
      q.subjects = entry.at("subjects").get<std::vector<std::string>>();
      if (!is_valid_stratum(q.category, q.qtype)) {
        throw Error(fmt::format("question {} has invalid stratum", q.id));
      }
      if (!ids.insert(q.id).second) {
        throw Error(fmt::format("duplicate question id {}", q.id));
      }
      set.questions.push_back(std::move(q));
    }
    return set;
  } catch (const json::exception & e) {
    throw Error(fmt::format("malformed question set: {}", e.what()));
  }
}

void save_question_set(const QuestionSet & set, const std::filesystem::path & path)
{
  write_text_file(path, to_json(set).dump(2) + "\n");
}

QuestionSet load_question_set(const std::filesystem::path & path)
{
  try {
    return question_set_from_json(json::parse(read_text_file(path)));
  } catch (const json::parse_error & e) {
    throw Error(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

}  // namespace archbench
