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

#ifndef ARCHBENCH__EVALUATOR_HPP_
#define ARCHBENCH__EVALUATOR_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "archbench/llm_gateway.hpp"
#include "archbench/questgen.hpp"

namespace archbench
{

enum class ExtractionStatus
{
  Clean,
  MissingCloseTagRecovered,
  NoAnswerTag,
};

std::string_view to_string(ExtractionStatus status);
ExtractionStatus parse_extraction_status(std::string_view text);

struct Extraction
{
  std::optional<std::string> answer_text;
  std::optional<std::string> explanation_text;
  ExtractionStatus status = ExtractionStatus::NoAnswerTag;

  bool operator==(const Extraction &) const = default;
};

/// Pulls the <answer> and <explanation> contents out of a raw response.
/// Tags match case-insensitively. An <answer> with no closing tag is read up
/// to the next '<' or the end of the text and flagged as recovered.
Extraction extract(std::string_view raw_text);

enum class Outcome
{
  Correct,
  Incorrect,
  NeedsReview,
};

std::string_view to_string(Outcome outcome);
Outcome parse_outcome(std::string_view text);

struct Verdict
{
  std::string question_id;
  std::string model_label;
  Outcome outcome = Outcome::NeedsReview;
  std::string matched_rule;
  Extraction extraction;

  bool operator==(const Verdict &) const = default;
};

/// Scores one extracted answer against the question's ground truth.
///
///  - BOOL: leading "yes"/"no", case-insensitive, after dropping leading punctuation.
///  - MCQ: the option digit ("3", "3-", "Option 3") or the option text ("a ROS node").
///  - OPEN names: a comma/semicolon/newline/bullet separated list compared as
///    an exact, case-sensitive set; "None" means the empty set.
///  - OPEN types: every listed type must belong to the ground-truth type set.
///
/// Anything that cannot be read this way is NEEDS_REVIEW, never INCORRECT.
Verdict judge(
  const Question & question, const Extraction & extraction, std::string_view model_label = {});

/// Regular expressions for the response pattern analysis. Line-anchored
/// patterns are applied per line.
struct PatternConfig
{
  std::string numbered_list = R"(^\s*\d+[.)-])";
  std::string bullet_list = R"(^\s*(-|\*|•))";
  std::string need_to_check = "need to check";  ///< matched case-insensitively
  std::string type_reference = R"(\w+/(msg|srv)/\w+)";

  static PatternConfig from_json(const nlohmann::json & j);
  static PatternConfig load(const std::filesystem::path & path);
  bool operator==(const PatternConfig &) const = default;
};

/// Number of responses showing each pattern (each response counts at most once per pattern).
struct PatternCounts
{
  std::size_t responses = 0;
  std::size_t numbered_list = 0;
  std::size_t bullet_list = 0;
  std::size_t need_to_check = 0;
  std::size_t type_reference = 0;

  PatternCounts & operator+=(const PatternCounts & other);
  bool operator==(const PatternCounts &) const = default;
};

/// Scans one response text; every counter in the result is 0 or 1.
PatternCounts scan_patterns(std::string_view text, const PatternConfig & config = {});

struct SummaryStats
{
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;

  bool operator==(const SummaryStats &) const = default;
};

/// Descriptive statistics; quartiles by linear interpolation between order statistics.
SummaryStats describe(std::vector<double> values);

struct OutcomeTally
{
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t needs_review = 0;
  std::size_t total = 0;
  double accuracy = 0.0;  ///< correct / total

  void add(Outcome outcome);
  bool operator==(const OutcomeTally &) const = default;
};

struct AccuracyCell
{
  std::string model;
  std::string system;
  OutcomeTally tally;
  bool operator==(const AccuracyCell &) const = default;
};

struct BreakdownCell
{
  std::string model;
  std::string system;
  Stratum stratum;
  OutcomeTally tally;
  bool operator==(const BreakdownCell &) const = default;
};

struct TokenCell
{
  std::string model;
  std::string system;
  SummaryStats input_tokens;
  SummaryStats output_tokens;
  double cost = 0.0;
  bool operator==(const TokenCell &) const = default;
};

struct StratumTokenCell
{
  std::string system;
  Stratum stratum;
  SummaryStats output_tokens;
  bool operator==(const StratumTokenCell &) const = default;
};

struct PatternCell
{
  std::string model;
  PatternCounts counts;
  bool operator==(const PatternCell &) const = default;
};

/// One scored response, for cost-versus-tokens plots.
struct ResponsePoint
{
  std::string question_id;
  std::string model;
  std::string system;
  Stratum stratum;
  std::uint64_t output_tokens = 0;
  double cost = 0.0;
  Outcome outcome = Outcome::NeedsReview;
  bool operator==(const ResponsePoint &) const = default;
};

struct AccuracyReport
{
  std::vector<std::string> models;   ///< sorted
  std::vector<std::string> systems;  ///< sorted
  std::vector<AccuracyCell> accuracy;
  std::map<std::string, double> model_mean;   ///< mean accuracy over systems
  std::map<std::string, double> system_mean;  ///< mean accuracy over models
  double overall_mean = 0.0;                  ///< mean over all (model, system) cells
  std::vector<BreakdownCell> breakdown;
  std::vector<TokenCell> tokens;
  std::vector<StratumTokenCell> stratum_tokens;
  std::vector<PatternCell> patterns;
  PatternCounts pattern_total;
  std::vector<ResponsePoint> points;
  double total_cost = 0.0;

  bool empty() const {return accuracy.empty();}
  const AccuracyCell * find(std::string_view model, std::string_view system) const;
  bool operator==(const AccuracyReport &) const = default;
};

/// Questions of several systems, looked up by id.
class QuestionIndex
{
public:
  struct Entry
  {
    std::string system;
    Question question;
  };

  QuestionIndex() = default;
  explicit QuestionIndex(std::span<const QuestionSet> sets);

  /// Throws EvaluationError on an id already present.
  void add(const QuestionSet & set);
  const Entry * find(std::string_view question_id) const;
  std::size_t size() const {return entries_.size();}

private:
  std::map<std::string, Entry, std::less<>> entries_;
};

/// Extracts and judges every response. Throws EvaluationError for a response to an unknown question.
std::vector<Verdict> score_responses(
  std::span<const LlmResponse> responses, const QuestionIndex & questions);

/// Accuracy, token, cost and pattern statistics. Verdicts and responses must
/// pair up one-to-one on (question_id, model); NEEDS_REVIEW counts toward the
/// total but not the correct count.
AccuracyReport aggregate(
  std::span<const Verdict> verdicts, std::span<const LlmResponse> responses,
  const QuestionIndex & questions, const PatternConfig & patterns = {});

/// CSV of INCORRECT and NEEDS_REVIEW rows with an empty trailing "override" column.
std::string review_queue_csv(
  std::span<const Verdict> verdicts, std::span<const LlmResponse> responses,
  const QuestionIndex & questions);

const std::vector<std::string> & review_queue_header();

struct ReviewOverride
{
  std::string question_id;
  std::string model_label;
  Outcome outcome;
};

/// Rows whose override cell is filled in. Accepts CORRECT / INCORRECT
/// (case-insensitive); anything else throws EvaluationError.
std::vector<ReviewOverride> parse_review_overrides(std::string_view csv_text);

/// Throws EvaluationError for an override naming no existing verdict.
std::vector<Verdict> apply_overrides(
  std::vector<Verdict> verdicts, std::span<const ReviewOverride> overrides);

std::string verdicts_to_csv(std::span<const Verdict> verdicts);
std::vector<Verdict> verdicts_from_csv(std::string_view text);

nlohmann::ordered_json to_json(const AccuracyReport & report);
AccuracyReport accuracy_report_from_json(const nlohmann::json & j);

}  // namespace archbench

#endif  // ARCHBENCH__EVALUATOR_HPP_
