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

#include "archbench/evaluator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "archbench/csv.hpp"
#include "archbench/errors.hpp"
#include "archbench/io.hpp"

namespace archbench
{

namespace
{

using nlohmann::json;
using nlohmann::ordered_json;

std::string ascii_lower(std::string_view text)
{
  std::string out(text);
  std::transform(
    out.begin(), out.end(), out.begin(),
    [](unsigned char c) {return static_cast<char>(std::tolower(c));});
  return out;
}

bool is_space(char c)
{
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_alnum(char c)
{
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string_view trim(std::string_view text)
{
  while (!text.empty() && is_space(text.front())) {
    text.remove_prefix(1);
  }
  while (!text.empty() && is_space(text.back())) {
    text.remove_suffix(1);
  }
  return text;
}

/// Drops leading characters that cannot start a word: markdown, quotes, brackets.
std::string_view drop_leading_punct(std::string_view text)
{
  while (!text.empty() && !is_alnum(text.front())) {
    text.remove_prefix(1);
  }
  return text;
}

/// Reads the text after `open` up to `close`, or up to the next '<' when `close` is missing.
struct TagMatch
{
  std::optional<std::string> text;
  bool closed = false;
};

TagMatch find_tag(std::string_view raw, std::string_view lowered, std::string_view name)
{
  const std::string open = fmt::format("<{}>", name);
  const std::string close = fmt::format("</{}>", name);
  const auto open_pos = lowered.find(open);
  if (open_pos == std::string_view::npos) {
    return {};
  }
  const auto start = open_pos + open.size();
  const auto close_pos = lowered.find(close, start);
  if (close_pos != std::string_view::npos) {
    return {std::string(trim(raw.substr(start, close_pos - start))), true};
  }
  const auto next_tag = lowered.find('<', start);
  const auto end = next_tag == std::string_view::npos ? raw.size() : next_tag;
  return {std::string(trim(raw.substr(start, end - start))), false};
}

constexpr std::string_view kItemDecoration = "*`'\"";

/// Strips bullets, numbering, emphasis, quotes, trailing punctuation and a
/// trailing parenthetical from one list item.
std::string clean_item(std::string_view item)
{
  item = trim(item);
  if (item.size() >= 2 && (item[0] == '-' || item[0] == '*') && is_space(item[1])) {
    item.remove_prefix(2);
  } else if (item.starts_with("•")) {
    item.remove_prefix(std::string_view("•").size());
  } else {
    std::size_t digits = 0;
    while (digits < item.size() && std::isdigit(static_cast<unsigned char>(item[digits]))) {
      ++digits;
    }
    if (digits > 0 && digits < item.size() && (item[digits] == '.' || item[digits] == ')')) {
      item.remove_prefix(digits + 1);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    item = trim(item);
    if (!item.empty() && kItemDecoration.find(item.front()) != std::string_view::npos) {
      item.remove_prefix(1);
      changed = true;
    }
    if (!item.empty() && kItemDecoration.find(item.back()) != std::string_view::npos) {
      item.remove_suffix(1);
      changed = true;
    }
    if (!item.empty() && (item.back() == '.' || item.back() == ':')) {
      item.remove_suffix(1);
      changed = true;
    }
    if (!item.empty() && item.back() == ')') {
      const auto open = item.rfind('(');
      if (open != std::string_view::npos && open > 0) {
        item = item.substr(0, open);
        changed = true;
      }
    }
  }
  return std::string(item);
}

struct ParsedList
{
  std::set<std::string> items;
  bool says_none = false;
  bool readable = true;
};

ParsedList parse_list(std::string_view answer)
{
  static const std::set<std::string, std::less<>> kNoneMarkers = {
    "none", "n/a", "empty", "nothing", "no topics", "no services", "[]", "{}"};
  ParsedList out;
  std::string_view text = trim(answer);
  std::string marker = ascii_lower(text);
  while (!marker.empty() && (marker.back() == '.' || marker.back() == '*')) {
    marker.pop_back();
  }
  while (!marker.empty() && marker.front() == '*') {
    marker.erase(marker.begin());
  }
  if (kNoneMarkers.contains(marker)) {
    out.says_none = true;
    return out;
  }
  if (text.size() >= 2 && text.front() == '[' && text.back() == ']') {
    text = text.substr(1, text.size() - 2);
  }
  std::string current;
  auto flush = [&]() {
      std::string item = clean_item(current);
      current.clear();
      if (item.empty()) {
        return;
      }
      if (std::any_of(item.begin(), item.end(), is_space)) {
        out.readable = false;
      }
      out.items.insert(std::move(item));
    };
  for (char c : text) {
    if (c == ',' || c == ';' || c == '\n') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  if (out.items.empty()) {
    out.readable = false;
  }
  return out;
}

Verdict make_verdict(
  const Question & q, const Extraction & e, std::string_view model, Outcome outcome,
  std::string rule)
{
  return {q.id, std::string(model), outcome, std::move(rule), e};
}

std::regex compile(const std::string & pattern, bool icase, std::string_view name)
{
  try {
    auto flags = std::regex::ECMAScript;
    if (icase) {
      flags |= std::regex::icase;
    }
    return std::regex(pattern, flags);
  } catch (const std::regex_error & e) {
    throw ConfigError(fmt::format("pattern '{}' ({}): {}", name, pattern, e.what()));
  }
}

bool any_line_matches(std::string_view text, const std::regex & re)
{
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string line(text.substr(start, end - start));
    if (std::regex_search(line, re)) {
      return true;
    }
    start = end + 1;
  }
  return false;
}

double quantile(const std::vector<double> & sorted, double p)
{
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - static_cast<double>(lo));
}

ordered_json tally_json(const OutcomeTally & t)
{
  ordered_json j;
  j["correct"] = t.correct;
  j["incorrect"] = t.incorrect;
  j["needs_review"] = t.needs_review;
  j["total"] = t.total;
  j["accuracy"] = t.accuracy;
  return j;
}

OutcomeTally tally_from_json(const json & j)
{
  OutcomeTally t;
  t.correct = j.at("correct").get<std::size_t>();
  t.incorrect = j.at("incorrect").get<std::size_t>();
  t.needs_review = j.at("needs_review").get<std::size_t>();
  t.total = j.at("total").get<std::size_t>();
  t.accuracy = j.at("accuracy").get<double>();
  return t;
}

ordered_json stats_json(const SummaryStats & s)
{
  ordered_json j;
  j["count"] = s.count;
  j["mean"] = s.mean;
  j["sd"] = s.sd;
  j["min"] = s.min;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["max"] = s.max;
  return j;
}

SummaryStats stats_from_json(const json & j)
{
  SummaryStats s;
  s.count = j.at("count").get<std::size_t>();
  s.mean = j.at("mean").get<double>();
  s.sd = j.at("sd").get<double>();
  s.min = j.at("min").get<double>();
  s.q1 = j.at("q1").get<double>();
  s.median = j.at("median").get<double>();
  s.q3 = j.at("q3").get<double>();
  s.max = j.at("max").get<double>();
  return s;
}

ordered_json patterns_json(const PatternCounts & p)
{
  ordered_json j;
  j["responses"] = p.responses;
  j["numbered_list"] = p.numbered_list;
  j["bullet_list"] = p.bullet_list;
  j["need_to_check"] = p.need_to_check;
  j["type_reference"] = p.type_reference;
  return j;
}

PatternCounts patterns_from_json(const json & j)
{
  PatternCounts p;
  p.responses = j.at("responses").get<std::size_t>();
  p.numbered_list = j.at("numbered_list").get<std::size_t>();
  p.bullet_list = j.at("bullet_list").get<std::size_t>();
  p.need_to_check = j.at("need_to_check").get<std::size_t>();
  p.type_reference = j.at("type_reference").get<std::size_t>();
  return p;
}

Stratum stratum_from_json(const json & j)
{
  return {
    parse_category(j.at("category").get<std::string>()),
    parse_question_type(j.at("qtype").get<std::string>())};
}

double mean_of(const std::vector<double> & values)
{
  if (values.empty()) {
    return 0.0;
  }
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

}  // namespace

std::string_view to_string(ExtractionStatus status)
{
  switch (status) {
    case ExtractionStatus::Clean: return "CLEAN";
    case ExtractionStatus::MissingCloseTagRecovered: return "MISSING_CLOSE_TAG_RECOVERED";
    case ExtractionStatus::NoAnswerTag: return "NO_ANSWER_TAG";
  }
  return "UNKNOWN";
}

ExtractionStatus parse_extraction_status(std::string_view text)
{
  for (auto s : {ExtractionStatus::Clean, ExtractionStatus::MissingCloseTagRecovered,
      ExtractionStatus::NoAnswerTag})
  {
    if (to_string(s) == text) {
      return s;
    }
  }
  throw EvaluationError(fmt::format("unknown extraction status '{}'", text));
}

std::string_view to_string(Outcome outcome)
{
  switch (outcome) {
    case Outcome::Correct: return "CORRECT";
    case Outcome::Incorrect: return "INCORRECT";
    case Outcome::NeedsReview: return "NEEDS_REVIEW";
  }
  return "UNKNOWN";
}

Outcome parse_outcome(std::string_view text)
{
  for (auto o : {Outcome::Correct, Outcome::Incorrect, Outcome::NeedsReview}) {
    if (to_string(o) == text) {
      return o;
    }
  }
  throw EvaluationError(fmt::format("unknown outcome '{}'", text));
}

Extraction extract(std::string_view raw_text)
{
  const std::string lowered = ascii_lower(raw_text);
  Extraction out;
  const TagMatch answer = find_tag(raw_text, lowered, "answer");
  const TagMatch explanation = find_tag(raw_text, lowered, "explanation");
  out.answer_text = answer.text;
  out.explanation_text = explanation.text;
  if (!answer.text) {
    out.status = ExtractionStatus::NoAnswerTag;
  } else if (answer.closed) {
    out.status = ExtractionStatus::Clean;
  } else {
    out.status = ExtractionStatus::MissingCloseTagRecovered;
  }
  return out;
}

Verdict judge(const Question & question, const Extraction & extraction, std::string_view model)
{
  if (extraction.status == ExtractionStatus::NoAnswerTag || !extraction.answer_text) {
    return make_verdict(question, extraction, model, Outcome::NeedsReview, "no_answer_tag");
  }
  const std::string_view answer = trim(*extraction.answer_text);

  if (const auto * expected = std::get_if<BoolAnswer>(&question.ground_truth)) {
    const std::string head = ascii_lower(drop_leading_punct(answer).substr(0, 4));
    std::optional<bool> said;
    if (head.starts_with("yes") && (head.size() == 3 || !is_alnum(head[3]))) {
      said = true;
    } else if (head.starts_with("no") && (head.size() == 2 || !is_alnum(head[2]))) {
      said = false;
    }
    if (!said) {
      return make_verdict(question, extraction, model, Outcome::NeedsReview, "bool_unreadable");
    }
    return make_verdict(
      question, extraction, model,
      *said == expected->value ? Outcome::Correct : Outcome::Incorrect, "bool_leading_word");
  }

  if (const auto * expected = std::get_if<OptionAnswer>(&question.ground_truth)) {
    static const std::regex kDigit(R"(^(option\s*)?([1-3])([^0-9]|$))", std::regex::icase);
    const std::string head(drop_leading_punct(answer));
    std::smatch m;
    if (std::regex_search(head, m, kDigit)) {
      const int chosen = m[2].str()[0] - '0';
      return make_verdict(
        question, extraction, model,
        chosen == expected->index ? Outcome::Correct : Outcome::Incorrect, "mcq_digit");
    }
    std::string text = ascii_lower(head);
    while (!text.empty() && (text.back() == '.' || text.back() == '*' || is_space(text.back()))) {
      text.pop_back();
    }
    for (int option = 1; option <= 3; ++option) {
      if (text == ascii_lower(option_text(option))) {
        return make_verdict(
          question, extraction, model,
          option == expected->index ? Outcome::Correct : Outcome::Incorrect, "mcq_option_text");
      }
    }
    return make_verdict(question, extraction, model, Outcome::NeedsReview, "mcq_unreadable");
  }

  if (const auto * expected = std::get_if<NameSetAnswer>(&question.ground_truth)) {
    const ParsedList parsed = parse_list(answer);
    if (parsed.says_none) {
      return make_verdict(
        question, extraction, model,
        expected->names.empty() ? Outcome::Correct : Outcome::Incorrect, "set_none");
    }
    if (!parsed.readable) {
      return make_verdict(question, extraction, model, Outcome::NeedsReview, "set_unreadable");
    }
    return make_verdict(
      question, extraction, model,
      parsed.items == expected->names ? Outcome::Correct : Outcome::Incorrect, "set_exact");
  }

  const auto & expected = std::get<TypeSetAnswer>(question.ground_truth);
  const ParsedList parsed = parse_list(answer);
  if (parsed.says_none || !parsed.readable) {
    return make_verdict(question, extraction, model, Outcome::NeedsReview, "type_unreadable");
  }
  const bool all_known = std::all_of(
    parsed.items.begin(), parsed.items.end(),
    [&](const std::string & t) {return expected.types.contains(t);});
  return make_verdict(
    question, extraction, model, all_known ? Outcome::Correct : Outcome::Incorrect,
    "type_member");
}

PatternConfig PatternConfig::from_json(const json & j)
{
  if (!j.is_object()) {
    throw ConfigError("pattern config must be a JSON object");
  }
  PatternConfig out;
  out.numbered_list = j.value("numbered_list", out.numbered_list);
  out.bullet_list = j.value("bullet_list", out.bullet_list);
  out.need_to_check = j.value("need_to_check", out.need_to_check);
  out.type_reference = j.value("type_reference", out.type_reference);
  // Fail on bad expressions at load time rather than mid-report.
  compile(out.numbered_list, false, "numbered_list");
  compile(out.bullet_list, false, "bullet_list");
  compile(out.need_to_check, true, "need_to_check");
  compile(out.type_reference, false, "type_reference");
  return out;
}

PatternConfig PatternConfig::load(const std::filesystem::path & path)
{
  try {
    return from_json(json::parse(read_text_file(path)));
  } catch (const json::exception & e) {
    throw ConfigError(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

PatternCounts & PatternCounts::operator+=(const PatternCounts & other)
{
  responses += other.responses;
  numbered_list += other.numbered_list;
  bullet_list += other.bullet_list;
  need_to_check += other.need_to_check;
  type_reference += other.type_reference;
  return *this;
}

PatternCounts scan_patterns(std::string_view text, const PatternConfig & config)
{
  const std::regex numbered = compile(config.numbered_list, false, "numbered_list");
  const std::regex bullet = compile(config.bullet_list, false, "bullet_list");
  const std::regex cue = compile(config.need_to_check, true, "need_to_check");
  const std::regex type_ref = compile(config.type_reference, false, "type_reference");
  PatternCounts out;
  out.responses = 1;
  out.numbered_list = any_line_matches(text, numbered) ? 1 : 0;
  out.bullet_list = any_line_matches(text, bullet) ? 1 : 0;
  out.need_to_check = any_line_matches(text, cue) ? 1 : 0;
  out.type_reference = any_line_matches(text, type_ref) ? 1 : 0;
  return out;
}

SummaryStats describe(std::vector<double> values)
{
  SummaryStats s;
  s.count = values.size();
  if (values.empty()) {
    return s;
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q3 = quantile(values, 0.75);
  return s;
}

void OutcomeTally::add(Outcome outcome)
{
  switch (outcome) {
    case Outcome::Correct: ++correct; break;
    case Outcome::Incorrect: ++incorrect; break;
    case Outcome::NeedsReview: ++needs_review; break;
  }
  ++total;
  accuracy = static_cast<double>(correct) / static_cast<double>(total);
}

const AccuracyCell * AccuracyReport::find(std::string_view model, std::string_view system) const
{
  for (const auto & cell : accuracy) {
    if (cell.model == model && cell.system == system) {
      return &cell;
    }
  }
  return nullptr;
}

QuestionIndex::QuestionIndex(std::span<const QuestionSet> sets)
{
  for (const auto & set : sets) {
    add(set);
  }
}

void QuestionIndex::add(const QuestionSet & set)
{
  for (const auto & q : set.questions) {
    if (!entries_.emplace(q.id, Entry{set.system_name, q}).second) {
      throw EvaluationError(fmt::format("question id '{}' appears twice", q.id));
    }
  }
}

const QuestionIndex::Entry * QuestionIndex::find(std::string_view question_id) const
{
  auto it = entries_.find(question_id);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Verdict> score_responses(
  std::span<const LlmResponse> responses, const QuestionIndex & questions)
{
  std::vector<Verdict> out;
  out.reserve(responses.size());
  for (const auto & r : responses) {
    const auto * entry = questions.find(r.question_id);
    if (entry == nullptr) {
      throw EvaluationError(
              fmt::format("response from '{}' to unknown question '{}'", r.model_label,
        r.question_id));
    }
    out.push_back(judge(entry->question, extract(r.raw_text), r.model_label));
  }
  return out;
}

AccuracyReport aggregate(
  std::span<const Verdict> verdicts, std::span<const LlmResponse> responses,
  const QuestionIndex & questions, const PatternConfig & patterns)
{
  using Key = std::pair<std::string, std::string>;
  std::map<Key, const LlmResponse *> by_key;
  for (const auto & r : responses) {
    if (!by_key.emplace(Key{r.question_id, r.model_label}, &r).second) {
      throw EvaluationError(
              fmt::format("duplicate response for question '{}' model '{}'", r.question_id,
        r.model_label));
    }
  }
  if (verdicts.size() != responses.size()) {
    throw EvaluationError(
            fmt::format("{} verdicts for {} responses", verdicts.size(), responses.size()));
  }

  std::map<Key, OutcomeTally> tallies;
  std::map<std::tuple<std::string, std::string, Stratum>, OutcomeTally> breakdown;
  std::map<Key, std::pair<std::vector<double>, std::vector<double>>> token_values;
  std::map<Key, double> costs;
  std::map<std::pair<std::string, Stratum>, std::vector<double>> stratum_values;
  std::map<std::string, PatternCounts> pattern_counts;
  std::set<std::string> models;
  std::set<std::string> systems;

  AccuracyReport report;
  std::set<Key> seen;
  for (const auto & v : verdicts) {
    const Key key{v.question_id, v.model_label};
    auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw EvaluationError(
              fmt::format("orphan verdict for question '{}' model '{}'", v.question_id,
        v.model_label));
    }
    if (!seen.insert(key).second) {
      throw EvaluationError(
              fmt::format("duplicate verdict for question '{}' model '{}'", v.question_id,
        v.model_label));
    }
    const LlmResponse & r = *it->second;
    const auto * entry = questions.find(v.question_id);
    if (entry == nullptr) {
      throw EvaluationError(fmt::format("verdict for unknown question '{}'", v.question_id));
    }
    const std::string & system = entry->system;
    const Stratum stratum = entry->question.stratum();
    models.insert(v.model_label);
    systems.insert(system);

    const Key cell{v.model_label, system};
    tallies[cell].add(v.outcome);
    breakdown[{v.model_label, system, stratum}].add(v.outcome);
    token_values[cell].first.push_back(static_cast<double>(r.input_tokens));
    token_values[cell].second.push_back(static_cast<double>(r.output_tokens));
    costs[cell] += r.cost;
    report.total_cost += r.cost;
    stratum_values[{system, stratum}].push_back(static_cast<double>(r.output_tokens));

    const std::string_view scanned =
      (v.extraction.explanation_text && !v.extraction.explanation_text->empty()) ?
      std::string_view(*v.extraction.explanation_text) : std::string_view(r.raw_text);
    PatternCounts counts = scan_patterns(scanned, patterns);
    // Type names are the expected content of type questions, not a habit.
    if (stratum.category == Category::ServiceType || stratum.category == Category::TopicType) {
      counts.type_reference = 0;
    }
    pattern_counts[v.model_label] += counts;
    report.pattern_total += counts;

    report.points.push_back(
      {v.question_id, v.model_label, system, stratum, r.output_tokens, r.cost, v.outcome});
  }

  report.models.assign(models.begin(), models.end());
  report.systems.assign(systems.begin(), systems.end());
  std::map<std::string, std::vector<double>> per_model;
  std::map<std::string, std::vector<double>> per_system;
  std::vector<double> all;
  for (const auto & [key, tally] : tallies) {
    report.accuracy.push_back({key.first, key.second, tally});
    per_model[key.first].push_back(tally.accuracy);
    per_system[key.second].push_back(tally.accuracy);
    all.push_back(tally.accuracy);
  }
  for (const auto & [model, values] : per_model) {
    report.model_mean[model] = mean_of(values);
  }
  for (const auto & [system, values] : per_system) {
    report.system_mean[system] = mean_of(values);
  }
  report.overall_mean = mean_of(all);

  for (const auto & [key, tally] : breakdown) {
    report.breakdown.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), tally});
  }
  for (auto & [key, values] : token_values) {
    report.tokens.push_back(
      {key.first, key.second, describe(values.first), describe(values.second), costs[key]});
  }
  for (auto & [key, values] : stratum_values) {
    report.stratum_tokens.push_back({key.first, key.second, describe(values)});
  }
  for (const auto & [model, counts] : pattern_counts) {
    report.patterns.push_back({model, counts});
  }
  std::sort(
    report.points.begin(), report.points.end(),
    [](const ResponsePoint & a, const ResponsePoint & b) {
      return std::tie(a.model, a.system, a.question_id) <
      std::tie(b.model, b.system, b.question_id);
    });
  return report;
}

const std::vector<std::string> & review_queue_header()
{
  static const std::vector<std::string> header = {
    "question_id", "model", "system", "category", "qtype", "outcome", "matched_rule",
    "ground_truth", "answer_text", "raw_text", "override"};
  return header;
}

std::string review_queue_csv(
  std::span<const Verdict> verdicts, std::span<const LlmResponse> responses,
  const QuestionIndex & questions)
{
  std::map<std::pair<std::string, std::string>, const LlmResponse *> by_key;
  for (const auto & r : responses) {
    by_key[{r.question_id, r.model_label}] = &r;
  }
  std::string out = csv::format_row(review_queue_header());
  for (const auto & v : verdicts) {
    if (v.outcome == Outcome::Correct) {
      continue;
    }
    const auto * entry = questions.find(v.question_id);
    auto it = by_key.find({v.question_id, v.model_label});
    if (entry == nullptr || it == by_key.end()) {
      throw EvaluationError(
              fmt::format("orphan verdict for question '{}' model '{}'", v.question_id,
        v.model_label));
    }
    const std::vector<std::string> row = {
      v.question_id,
      v.model_label,
      entry->system,
      std::string(to_string(entry->question.category)),
      std::string(to_string(entry->question.qtype)),
      std::string(to_string(v.outcome)),
      v.matched_rule,
      canonical_text(entry->question.ground_truth),
      v.extraction.answer_text.value_or(""),
      it->second->raw_text,
      "",
    };
    out += csv::format_row(row);
  }
  return out;
}

std::vector<ReviewOverride> parse_review_overrides(std::string_view csv_text)
{
  std::vector<csv::Row> rows;
  try {
    rows = csv::parse_with_header(csv_text, review_queue_header());
  } catch (const Error & e) {
    throw EvaluationError(fmt::format("review file: {}", e.what()));
  }
  std::vector<ReviewOverride> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string value = ascii_lower(trim(rows[i].back()));
    if (value.empty()) {
      continue;
    }
    Outcome outcome;
    if (value == "correct") {
      outcome = Outcome::Correct;
    } else if (value == "incorrect") {
      outcome = Outcome::Incorrect;
    } else {
      throw EvaluationError(
              fmt::format(
                "review file row {}: override must be CORRECT or INCORRECT, got '{}'", i + 2,
                rows[i].back()));
    }
    out.push_back({rows[i][0], rows[i][1], outcome});
  }
  return out;
}

std::vector<Verdict> apply_overrides(
  std::vector<Verdict> verdicts, std::span<const ReviewOverride> overrides)
{
  std::map<std::pair<std::string, std::string>, std::size_t> position;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    position[{verdicts[i].question_id, verdicts[i].model_label}] = i;
  }
  for (const auto & o : overrides) {
    auto it = position.find({o.question_id, o.model_label});
    if (it == position.end()) {
      throw EvaluationError(
              fmt::format(
                "override for unknown question '{}' model '{}'", o.question_id, o.model_label));
    }
    Verdict & v = verdicts[it->second];
    v.outcome = o.outcome;
    v.matched_rule = "manual_override";
  }
  return verdicts;
}

namespace
{

const std::vector<std::string> & verdict_header()
{
  static const std::vector<std::string> header = {
    "question_id", "model", "outcome", "matched_rule", "extraction_status", "answer_text",
    "explanation_text"};
  return header;
}

}  // namespace

std::string verdicts_to_csv(std::span<const Verdict> verdicts)
{
  std::string out = csv::format_row(verdict_header());
  for (const auto & v : verdicts) {
    const std::vector<std::string> row = {
      v.question_id,
      v.model_label,
      std::string(to_string(v.outcome)),
      v.matched_rule,
      std::string(to_string(v.extraction.status)),
      v.extraction.answer_text.value_or(""),
      v.extraction.explanation_text.value_or(""),
    };
    out += csv::format_row(row);
  }
  return out;
}

std::vector<Verdict> verdicts_from_csv(std::string_view text)
{
  std::vector<Verdict> out;
  for (const auto & row : csv::parse_with_header(text, verdict_header())) {
    Verdict v;
    v.question_id = row[0];
    v.model_label = row[1];
    v.outcome = parse_outcome(row[2]);
    v.matched_rule = row[3];
    v.extraction.status = parse_extraction_status(row[4]);
    if (v.extraction.status != ExtractionStatus::NoAnswerTag) {
      v.extraction.answer_text = row[5];
    }
    if (!row[6].empty()) {
      v.extraction.explanation_text = row[6];
    }
    out.push_back(std::move(v));
  }
  return out;
}

ordered_json to_json(const AccuracyReport & report)
{
  ordered_json doc;
  doc["models"] = report.models;
  doc["systems"] = report.systems;
  doc["accuracy"] = ordered_json::array();
  for (const auto & c : report.accuracy) {
    ordered_json j;
    j["model"] = c.model;
    j["system"] = c.system;
    j["tally"] = tally_json(c.tally);
    doc["accuracy"].push_back(std::move(j));
  }
  doc["model_mean"] = report.model_mean;
  doc["system_mean"] = report.system_mean;
  doc["overall_mean"] = report.overall_mean;
  doc["breakdown"] = ordered_json::array();
  for (const auto & c : report.breakdown) {
    ordered_json j;
    j["model"] = c.model;
    j["system"] = c.system;
    j["category"] = to_string(c.stratum.category);
    j["qtype"] = to_string(c.stratum.qtype);
    j["tally"] = tally_json(c.tally);
    doc["breakdown"].push_back(std::move(j));
  }
  doc["tokens"] = ordered_json::array();
  for (const auto & c : report.tokens) {
    ordered_json j;
    j["model"] = c.model;
    j["system"] = c.system;
    j["input_tokens"] = stats_json(c.input_tokens);
    j["output_tokens"] = stats_json(c.output_tokens);
    j["cost"] = c.cost;
    doc["tokens"].push_back(std::move(j));
  }
  doc["stratum_tokens"] = ordered_json::array();
  for (const auto & c : report.stratum_tokens) {
    ordered_json j;
    j["system"] = c.system;
    j["category"] = to_string(c.stratum.category);
    j["qtype"] = to_string(c.stratum.qtype);
    j["output_tokens"] = stats_json(c.output_tokens);
    doc["stratum_tokens"].push_back(std::move(j));
  }
  doc["patterns"] = ordered_json::array();
  for (const auto & c : report.patterns) {
    ordered_json j;
    j["model"] = c.model;
    j["counts"] = patterns_json(c.counts);
    doc["patterns"].push_back(std::move(j));
  }
  doc["pattern_total"] = patterns_json(report.pattern_total);
  doc["total_cost"] = report.total_cost;
  doc["points"] = ordered_json::array();
  for (const auto & p : report.points) {
    ordered_json j;
    j["question_id"] = p.question_id;
    j["model"] = p.model;
    j["system"] = p.system;
    j["category"] = to_string(p.stratum.category);
    j["qtype"] = to_string(p.stratum.qtype);
    j["output_tokens"] = p.output_tokens;
    j["cost"] = p.cost;
    j["outcome"] = to_string(p.outcome);
    doc["points"].push_back(std::move(j));
  }
  return doc;
}

AccuracyReport accuracy_report_from_json(const json & doc)
{
  try {
    AccuracyReport report;
    report.models = doc.at("models").get<std::vector<std::string>>();
    report.systems = doc.at("systems").get<std::vector<std::string>>();
    for (const auto & j : doc.at("accuracy")) {
      report.accuracy.push_back(
        {j.at("model").get<std::string>(), j.at("system").get<std::string>(),
          tally_from_json(j.at("tally"))});
    }
    report.model_mean = doc.at("model_mean").get<std::map<std::string, double>>();
    report.system_mean = doc.at("system_mean").get<std::map<std::string, double>>();
    report.overall_mean = doc.at("overall_mean").get<double>();
    for (const auto & j : doc.at("breakdown")) {
      report.breakdown.push_back(
        {j.at("model").get<std::string>(), j.at("system").get<std::string>(),
          stratum_from_json(j), tally_from_json(j.at("tally"))});
    }
    for (const auto & j : doc.at("tokens")) {
      report.tokens.push_back(
        {j.at("model").get<std::string>(), j.at("system").get<std::string>(),
          stats_from_json(j.at("input_tokens")), stats_from_json(j.at("output_tokens")),
          j.at("cost").get<double>()});
    }
    for (const auto & j : doc.at("stratum_tokens")) {
      report.stratum_tokens.push_back(
        {j.at("system").get<std::string>(), stratum_from_json(j),
          stats_from_json(j.at("output_tokens"))});
    }
    for (const auto & j : doc.at("patterns")) {
      report.patterns.push_back(
        {j.at("model").get<std::string>(), patterns_from_json(j.at("counts"))});
    }
    report.pattern_total = patterns_from_json(doc.at("pattern_total"));
    report.total_cost = doc.at("total_cost").get<double>();
    for (const auto & j : doc.at("points")) {
      report.points.push_back(
        {j.at("question_id").get<std::string>(), j.at("model").get<std::string>(),
          j.at("system").get<std::string>(), stratum_from_json(j),
          j.at("output_tokens").get<std::uint64_t>(), j.at("cost").get<double>(),
          parse_outcome(j.at("outcome").get<std::string>())});
    }
    return report;
  } catch (const json::exception & e) {
    throw EvaluationError(fmt::format("malformed report: {}", e.what()));
  }
}

}  // namespace archbench
