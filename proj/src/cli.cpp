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

#include "archbench/cli.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "archbench/errors.hpp"
#include "archbench/evaluator.hpp"
#include "archbench/hashing.hpp"
#include "archbench/io.hpp"
#include "archbench/llm_gateway.hpp"
#include "archbench/promptkit.hpp"
#include "archbench/questgen.hpp"
#include "archbench/report.hpp"
#include "archbench/run_manifest.hpp"
#include "archbench/sampler.hpp"
#include "archbench/topology.hpp"

extern char ** environ;

namespace archbench
{

namespace
{

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 42;
constexpr std::string_view kScorerEnv = "ARCHBENCH_PERPLEXITY_SCORER";
constexpr std::string_view kScorerName = "archbench-perplexity";

/// Names the run directory uses itself; model output folders may not take them.
const std::set<std::string, std::less<>> kReservedNames = {
  "manifest.json", "topologies", "questions", "plans", "prompts.jsonl", "responses.csv",
  "verdicts.csv", "report.json", "review_queue.csv", "review_overrides.csv", "report",
  "perplexity_input.jsonl", "perplexity.jsonl"};

struct RunDir
{
  fs::path root;

  fs::path manifest() const {return root / "manifest.json";}
  fs::path topology(std::string_view system) const
  {
    return root / "topologies" / fmt::format("{}.json", system);
  }
  fs::path questions(std::string_view system) const
  {
    return root / "questions" / fmt::format("{}.json", system);
  }
  fs::path plan(std::string_view system) const
  {
    return root / "plans" / fmt::format("{}.json", system);
  }
  fs::path prompts() const {return root / "prompts.jsonl";}
  fs::path responses() const {return root / "responses.csv";}
  fs::path verdicts() const {return root / "verdicts.csv";}
  fs::path report_json() const {return root / "report.json";}
  fs::path review_queue() const {return root / "review_queue.csv";}
  fs::path overrides() const {return root / "review_overrides.csv";}
  fs::path tables() const {return root / "report";}
  fs::path graph(std::string_view system) const
  {
    return root / "report" / "graphs" / fmt::format("{}.dot", system);
  }
  fs::path perplexity_input() const {return root / "perplexity_input.jsonl";}
  fs::path perplexity_output() const {return root / "perplexity.jsonl";}
};

void check_file_name(std::string_view what, std::string_view name)
{
  static const std::regex kSafe("[A-Za-z0-9._-]+");
  if (name == "." || name == ".." || !std::regex_match(std::string(name), kSafe)) {
    throw ConfigError(
            fmt::format(
              "{} '{}' is not usable as a file name; use letters, digits, '.', '_' or '-'", what,
              name));
  }
}

RunManifest load_manifest(const RunDir & run)
{
  if (!fs::exists(run.manifest())) {
    throw StageOrderError(
            fmt::format(
              "no run manifest in '{}'; run 'validate --run {}' first", run.root.string(),
              run.root.string()));
  }
  return load_run_manifest(run.manifest());
}

void complete_stage(const RunDir & run, RunManifest & manifest, Stage stage)
{
  manifest.mark_complete(stage, current_timestamp());
  save_run_manifest(manifest, run.manifest());
}

std::vector<QuestionSet> load_question_sets(const RunDir & run, const RunManifest & manifest)
{
  std::vector<QuestionSet> out;
  for (const auto & [system, path] : manifest.topologies) {
    out.push_back(load_question_set(run.questions(system)));
  }
  return out;
}

std::string percent(double ratio)
{
  return fmt::format("{:.2f}%", ratio * 100.0);
}

// validate ---------------------------------------------------------------

struct ValidateArgs
{
  std::vector<std::string> topologies;
  std::string run;
};

void do_validate(const ValidateArgs & args, std::ostream & out)
{
  std::vector<Topology> topos;
  std::set<std::string> names;
  for (const auto & path : args.topologies) {
    Topology topo = load_topology(path);
    check_file_name("system name", topo.system_name());
    if (!names.insert(topo.system_name()).second) {
      throw TopologyError(fmt::format("system '{}' given twice", topo.system_name()));
    }
    out << fmt::format(
      "{}: {} nodes, {} topics, {} services\n", topo.system_name(), topo.node_count(),
      topo.topic_count(), topo.service_count());
    topos.push_back(std::move(topo));
  }
  if (args.run.empty()) {
    return;
  }
  const RunDir run{args.run};
  RunManifest manifest;
  if (fs::exists(run.manifest())) {
    manifest = load_run_manifest(run.manifest());
  }
  manifest.invalidate_from(Stage::Validate);
  manifest.topologies.clear();
  std::string digest_input;
  for (const auto & topo : topos) {
    const std::string text = serialize_topology(topo) + "\n";
    write_text_file(run.topology(topo.system_name()), text);
    manifest.topologies[topo.system_name()] =
      fs::path("topologies") / fmt::format("{}.json", topo.system_name());
    digest_input += text;
  }
  manifest.run_id = sha256_hex(digest_input).substr(0, 16);
  complete_stage(run, manifest, Stage::Validate);
}

// generate ---------------------------------------------------------------

struct GenerateArgs
{
  std::string run;
  std::vector<std::string> topologies;
  std::uint64_t seed = kDefaultSeed;
  bool service_response_paths = false;
};

void do_generate(const GenerateArgs & args, std::ostream & out)
{
  const RunDir run{args.run};
  if (!args.topologies.empty()) {
    do_validate({args.topologies, args.run}, out);
  }
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Generate);
  manifest.invalidate_from(Stage::Generate);
  manifest.seed = args.seed;
  manifest.config.erase("sample_seed");
  if (args.service_response_paths) {
    manifest.config["service_response_paths"] = "true";
  } else {
    manifest.config.erase("service_response_paths");
  }
  OracleOptions options;
  options.service_response_paths = args.service_response_paths;
  for (const auto & [system, path] : manifest.topologies) {
    const Topology topo = load_topology(run.topology(system));
    const QuestionSet set =
      generate_questions(topo, derive_seed(args.seed, fmt::format("generate:{}", system)), options);
    save_question_set(set, run.questions(system));
    out << fmt::format("{}: {} questions\n", system, set.questions.size());
  }
  complete_stage(run, manifest, Stage::Generate);
}

// sample -----------------------------------------------------------------

struct SampleArgs
{
  std::string run;
  std::vector<std::string> questions;
  std::optional<std::uint64_t> seed;
};

void do_sample(const SampleArgs & args, std::ostream & out)
{
  const RunDir run{args.run};
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Sample);
  manifest.invalidate_from(Stage::Sample);

  std::vector<QuestionSet> sets;
  if (args.questions.empty()) {
    sets = load_question_sets(run, manifest);
  } else {
    for (const auto & path : args.questions) {
      QuestionSet set = load_question_set(path);
      if (!manifest.topologies.contains(set.system_name)) {
        throw ConfigError(
                fmt::format(
                  "question set '{}' is for system '{}', which this run does not contain", path,
                  set.system_name));
      }
      save_question_set(set, run.questions(set.system_name));
      sets.push_back(std::move(set));
    }
  }
  const std::uint64_t base = args.seed.value_or(manifest.seed);
  if (args.seed) {
    manifest.config["sample_seed"] = std::to_string(*args.seed);
  } else {
    manifest.config.erase("sample_seed");
  }
  std::size_t grand_total = 0;
  for (const auto & set : sets) {
    const SamplePlan plan =
      build_sample_plan(set, derive_seed(base, fmt::format("sample:{}", set.system_name)));
    save_sample_plan(plan, run.plan(set.system_name));
    out << fmt::format(
      "{}: {} of {} questions sampled\n", set.system_name, plan.total(), set.questions.size());
    grand_total += plan.total();
  }
  out << fmt::format("total: {}\n", grand_total);
  complete_stage(run, manifest, Stage::Sample);
}

// prompts ----------------------------------------------------------------

struct PromptsArgs
{
  std::string run;
  std::vector<std::string> plans;
  std::string prompt_config;
};

void do_prompts(const PromptsArgs & args, std::ostream & out)
{
  const RunDir run{args.run};
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Prompts);
  manifest.invalidate_from(Stage::Prompts);

  PromptConfig config;
  if (!args.prompt_config.empty()) {
    config = PromptConfig::load(args.prompt_config);
    manifest.config["prompt_config"] = args.prompt_config;
  } else {
    manifest.config.erase("prompt_config");
  }

  std::vector<SamplePlan> plans;
  if (args.plans.empty()) {
    for (const auto & [system, path] : manifest.topologies) {
      plans.push_back(load_sample_plan(run.plan(system)));
    }
  } else {
    for (const auto & path : args.plans) {
      plans.push_back(load_sample_plan(path));
    }
  }

  const auto created_at = current_time();
  std::vector<PromptRecord> prompts;
  for (const auto & plan : plans) {
    if (!manifest.topologies.contains(plan.system_name)) {
      throw ConfigError(
              fmt::format("plan for system '{}', which this run does not contain",
        plan.system_name));
    }
    const std::string topology_json = read_text_file(run.topology(plan.system_name));
    const QuestionSet set = load_question_set(run.questions(plan.system_name));
    std::map<std::string_view, const Question *> by_id;
    for (const auto & q : set.questions) {
      by_id[q.id] = &q;
    }
    for (const auto & stratum : plan.strata) {
      for (const auto & id : stratum.question_ids) {
        auto it = by_id.find(id);
        if (it == by_id.end()) {
          throw ConfigError(
                  fmt::format("plan for '{}' names unknown question '{}'", plan.system_name, id));
        }
        prompts.push_back(
          render_prompt(*it->second, plan.system_name, topology_json, config, created_at));
      }
    }
  }
  write_text_file(run.prompts(), prompts_to_jsonl(prompts));
  out << fmt::format("{} prompts written\n", prompts.size());
  complete_stage(run, manifest, Stage::Prompts);
}

// run --------------------------------------------------------------------

struct RunArgs
{
  std::string run;
  std::string prompts;
  std::string models;
  std::string replay;
  std::vector<std::string> only;
  std::size_t concurrency = 0;
};

void do_run(const RunArgs & args, std::ostream & out, std::ostream & err)
{
  const RunDir run{args.run};
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Run);
  manifest.invalidate_from(Stage::Run);

  const fs::path prompts_path = args.prompts.empty() ? run.prompts() : fs::path(args.prompts);
  const std::vector<PromptRecord> prompts =
    prompts_from_jsonl(read_text_file(prompts_path), current_time());

  std::vector<ModelConfig> models = load_model_configs(args.models);
  if (!args.only.empty()) {
    for (const auto & label : args.only) {
      if (std::none_of(
          models.begin(), models.end(),
          [&](const ModelConfig & m) {return m.label == label;}))
      {
        throw ConfigError(fmt::format("model '{}' is not in '{}'", label, args.models));
      }
    }
    std::erase_if(
      models, [&](const ModelConfig & m) {
        return std::find(args.only.begin(), args.only.end(), m.label) == args.only.end();
      });
  }
  for (const auto & m : models) {
    if (kReservedNames.contains(m.label)) {
      throw ConfigError(fmt::format("model label '{}' is reserved by the run layout", m.label));
    }
  }
  manifest.config["models"] = args.models;
  if (args.replay.empty()) {
    manifest.config.erase("replay");
  } else {
    manifest.config["replay"] = args.replay;
  }

  std::optional<ReplayProvider> replay;
  if (!args.replay.empty()) {
    replay = ReplayProvider::load(args.replay);
  }
  CampaignOptions options;
  options.run_dir = run.root;
  options.concurrency = args.concurrency;
  std::size_t failures = 0;
  for (const auto & model : models) {
    std::unique_ptr<Provider> live;
    Provider * provider = nullptr;
    if (replay) {
      provider = &*replay;
    } else {
      live = make_live_provider(model);
      provider = live.get();
    }
    // A replay fixture may cover only part of the run; unrecorded prompts are skipped.
    std::vector<PromptRecord> selected;
    for (const auto & p : prompts) {
      if (!replay || replay->contains(p.question_id, model.label)) {
        selected.push_back(p);
      }
    }
    if (selected.size() < prompts.size()) {
      out << fmt::format(
        "{}: {} prompts have no recorded response and were skipped\n", model.label,
        prompts.size() - selected.size());
    }
    const auto responses = run_campaign(selected, model, *provider, options);
    std::size_t ok = 0;
    double cost = 0.0;
    for (const auto & r : responses) {
      ok += r.status == ResponseStatus::Ok ? 1 : 0;
      cost += r.cost;
    }
    failures += responses.size() - ok;
    out << fmt::format(
      "{}: {} of {} responses ok, cost ${:.6f}\n", model.label, ok, responses.size(), cost);
  }
  if (failures > 0) {
    err << fmt::format(
      "warning: {} requests failed; rerun 'run' to retry them before scoring\n", failures);
  }
  complete_stage(run, manifest, Stage::Run);
}

// score ------------------------------------------------------------------

struct ScoreArgs
{
  std::string run;
  std::string resolve;
  std::string pattern_config;
};

void do_score(const ScoreArgs & args, std::ostream & out, std::ostream & err)
{
  const RunDir run{args.run};
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Score);
  manifest.invalidate_from(Stage::Score);

  PatternConfig patterns;
  if (!args.pattern_config.empty()) {
    patterns = PatternConfig::load(args.pattern_config);
    manifest.config["pattern_config"] = args.pattern_config;
  } else {
    manifest.config.erase("pattern_config");
  }

  const auto sets = load_question_sets(run, manifest);
  const QuestionIndex index(sets);
  std::vector<LlmResponse> responses = load_responses(run.responses());
  const auto failed = std::erase_if(
    responses, [](const LlmResponse & r) {return r.status != ResponseStatus::Ok;});
  if (failed > 0) {
    err << fmt::format("warning: {} failed requests left out of scoring\n", failed);
  }

  std::vector<Verdict> verdicts = score_responses(responses, index);
  if (!args.resolve.empty()) {
    const std::string text = read_text_file(args.resolve);
    parse_review_overrides(text);
    write_text_file(run.overrides(), text);
  }
  if (fs::exists(run.overrides())) {
    const auto overrides = parse_review_overrides(read_text_file(run.overrides()));
    verdicts = apply_overrides(std::move(verdicts), overrides);
    out << fmt::format("{} manual overrides applied\n", overrides.size());
  }

  const AccuracyReport report = aggregate(verdicts, responses, index, patterns);
  write_text_file(run.verdicts(), verdicts_to_csv(verdicts));
  write_text_file(run.report_json(), to_json(report).dump(2) + "\n");
  write_text_file(run.review_queue(), review_queue_csv(verdicts, responses, index));

  std::size_t review = 0;
  for (const auto & v : verdicts) {
    review += v.outcome == Outcome::NeedsReview ? 1 : 0;
  }
  for (const auto & model : report.models) {
    out << fmt::format("{}: {}\n", model, percent(report.model_mean.at(model)));
  }
  if (review > 0) {
    out << fmt::format(
      "{} answers need review; edit the override column of {} and rerun with --resolve\n",
      review, run.review_queue().string());
  }
  complete_stage(run, manifest, Stage::Score);
}

// report -----------------------------------------------------------------

struct ReportArgs
{
  std::string run;
};

void do_report(const ReportArgs & args, std::ostream & out)
{
  const RunDir run{args.run};
  RunManifest manifest = load_manifest(run);
  manifest.require_ready(Stage::Report);
  manifest.invalidate_from(Stage::Report);

  const AccuracyReport report =
    accuracy_report_from_json(nlohmann::json::parse(read_text_file(run.report_json())));
  const RenderedTables tables = render_tables(report);
  write_tables(tables, run.tables());

  const auto sets = load_question_sets(run, manifest);
  const QuestionIndex index(sets);
  const auto verdicts = verdicts_from_csv(read_text_file(run.verdicts()));
  for (const auto & [system, path] : manifest.topologies) {
    const Topology topo = load_topology(run.topology(system));
    write_text_file(run.graph(system), export_dot(topo, paint_from_verdicts(topo, verdicts, index)));
  }
  out << tables.accuracy_md;
  complete_stage(run, manifest, Stage::Report);
}

// perplexity -------------------------------------------------------------

struct PerplexityArgs
{
  std::string run;
  std::string scorer;
};

std::optional<fs::path> find_on_path(std::string_view name)
{
  const char * path = std::getenv("PATH");
  if (path == nullptr) {
    return std::nullopt;
  }
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    const fs::path candidate = fs::path(dir.empty() ? "." : dir) / name;
    if (::access(candidate.c_str(), X_OK) == 0 && fs::is_regular_file(candidate)) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::optional<fs::path> locate_scorer(const std::string & explicit_path)
{
  if (!explicit_path.empty()) {
    return fs::path(explicit_path);
  }
  if (const char * env = std::getenv(std::string(kScorerEnv).c_str()); env && *env) {
    return fs::path(env);
  }
  return find_on_path(kScorerName);
}

/// Runs `program` with stdin and stdout redirected to files; returns the exit status.
int run_redirected(const fs::path & program, const fs::path & input, const fs::path & output)
{
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, input.c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(
    &actions, STDOUT_FILENO, output.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  std::string program_text = program.string();
  char * argv[] = {program_text.data(), nullptr};
  pid_t pid = 0;
  const int rc = posix_spawn(&pid, program.c_str(), &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    throw Error(fmt::format("cannot start '{}': {}", program.string(), std::strerror(rc)));
  }
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) {
    throw Error(fmt::format("waiting for '{}' failed", program.string()));
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

int do_perplexity(const PerplexityArgs & args, std::ostream & out)
{
  const RunDir run{args.run};
  const RunManifest manifest = load_manifest(run);
  if (!manifest.is_complete(Stage::Run)) {
    throw StageOrderError("stage 'perplexity' requires 'run' to complete first");
  }
  const auto scorer = locate_scorer(args.scorer);
  if (!scorer) {
    out << "perplexity: component not installed\n";
    return kExitOk;
  }
  if (!fs::exists(*scorer)) {
    throw ConfigError(fmt::format("perplexity scorer '{}' does not exist", scorer->string()));
  }

  std::map<std::string, std::string, std::less<>> prompt_text;
  for (const auto & p : prompts_from_jsonl(read_text_file(run.prompts()))) {
    prompt_text[p.question_id] = p.rendered_text;
  }
  std::string input;
  std::size_t skipped = 0;
  for (const auto & r : load_responses(run.responses())) {
    const Extraction e = extract(r.raw_text);
    auto it = prompt_text.find(r.question_id);
    if (r.status != ResponseStatus::Ok || !e.answer_text || e.answer_text->empty() ||
      it == prompt_text.end())
    {
      ++skipped;
      continue;
    }
    nlohmann::ordered_json j;
    j["question_id"] = r.question_id;
    j["model_label"] = r.model_label;
    j["prompt"] = it->second;
    j["answer"] = *e.answer_text;
    input += j.dump() + "\n";
  }
  write_text_file(run.perplexity_input(), input);
  const int status = run_redirected(*scorer, run.perplexity_input(), run.perplexity_output());
  if (status != 0) {
    throw Error(fmt::format("perplexity scorer exited with status {}", status));
  }

  std::map<std::string, std::pair<double, std::size_t>> per_model;
  std::istringstream lines(read_text_file(run.perplexity_output()));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) {
      continue;
    }
    try {
      const auto j = nlohmann::json::parse(line);
      auto & [sum, n] = per_model[j.at("model_label").get<std::string>()];
      sum += j.at("perplexity").get<double>();
      ++n;
    } catch (const nlohmann::json::exception & e) {
      throw Error(fmt::format("perplexity output: {}", e.what()));
    }
  }
  for (const auto & [model, acc] : per_model) {
    out << fmt::format(
      "{}: mean perplexity {:.2f} over {} answers\n", model,
      acc.first / static_cast<double>(acc.second), acc.second);
  }
  if (skipped > 0) {
    out << fmt::format("{} responses without an answer were not scored\n", skipped);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Generate, run and score architecture questions about ROS2 computation graphs",
    "archbench"};
  app.require_subcommand(1);

  ValidateArgs validate_args;
  auto * validate = app.add_subcommand("validate", "Check topology files and start a run");
  validate->add_option("topology", validate_args.topologies, "Topology JSON files")
  ->required()->check(CLI::ExistingFile);
  validate->add_option("--run", validate_args.run, "Run directory to initialise");

  GenerateArgs generate_args;
  auto * generate = app.add_subcommand("generate", "Generate questions for every topology");
  generate->add_option("--run", generate_args.run, "Run directory")->required();
  generate->add_option("--topology", generate_args.topologies, "Validate these topologies first")
  ->check(CLI::ExistingFile);
  generate->add_option("--seed", generate_args.seed, "Run seed")->capture_default_str();
  generate->add_flag(
    "--service-response-paths", generate_args.service_response_paths,
    "Count server to client as a communication path");

  SampleArgs sample_args;
  auto * sample = app.add_subcommand("sample", "Draw the stratified sample");
  sample->add_option("--run", sample_args.run, "Run directory")->required();
  sample->add_option("--questions", sample_args.questions, "Question set files to sample from")
  ->check(CLI::ExistingFile);
  sample->add_option("--seed", sample_args.seed, "Sampling seed (defaults to the run seed)");

  PromptsArgs prompts_args;
  auto * prompts = app.add_subcommand("prompts", "Render prompts for the sampled questions");
  prompts->add_option("--run", prompts_args.run, "Run directory")->required();
  prompts->add_option("--plan", prompts_args.plans, "Sample plan files")
  ->check(CLI::ExistingFile);
  prompts->add_option("--prompt-config", prompts_args.prompt_config, "Answer instruction strings")
  ->check(CLI::ExistingFile);

  RunArgs run_args;
  auto * run = app.add_subcommand("run", "Send prompts to the configured models");
  run->add_option("--run", run_args.run, "Run directory")->required();
  run->add_option("--prompts", run_args.prompts, "Prompts file (defaults to the run's)")
  ->check(CLI::ExistingFile);
  run->add_option("--models", run_args.models, "Model configuration")
  ->required()->check(CLI::ExistingFile);
  run->add_option("--replay", run_args.replay, "Answer from recorded responses")
  ->check(CLI::ExistingFile);
  run->add_option("--model", run_args.only, "Only these model labels");
  run->add_option("--concurrency", run_args.concurrency, "Parallel requests per model")
  ->check(CLI::NonNegativeNumber);

  ScoreArgs score_args;
  auto * score = app.add_subcommand("score", "Judge responses and aggregate accuracy");
  score->add_option("--run", score_args.run, "Run directory")->required();
  score->add_option("--resolve", score_args.resolve, "Edited review queue with overrides")
  ->check(CLI::ExistingFile);
  score->add_option("--pattern-config", score_args.pattern_config, "Response pattern regexes")
  ->check(CLI::ExistingFile);

  ReportArgs report_args;
  auto * report = app.add_subcommand("report", "Write tables and colored graphs");
  report->add_option("--run", report_args.run, "Run directory")->required();

  PerplexityArgs perplexity_args;
  auto * perplexity = app.add_subcommand("perplexity", "Score answers with the perplexity scorer");
  perplexity->add_option("--run", perplexity_args.run, "Run directory")->required();
  perplexity->add_option("--scorer", perplexity_args.scorer, "Scorer executable");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (validate->parsed()) {
      do_validate(validate_args, out);
    } else if (generate->parsed()) {
      do_generate(generate_args, out);
    } else if (sample->parsed()) {
      do_sample(sample_args, out);
    } else if (prompts->parsed()) {
      do_prompts(prompts_args, out);
    } else if (run->parsed()) {
      do_run(run_args, out, err);
    } else if (score->parsed()) {
      do_score(score_args, out, err);
    } else if (report->parsed()) {
      do_report(report_args, out);
    } else if (perplexity->parsed()) {
      return do_perplexity(perplexity_args, out);
    }
  } catch (const Error & e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const fs::filesystem_error & e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const nlohmann::json::exception & e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

int run_cli(int argc, const char * const * argv)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace archbench
