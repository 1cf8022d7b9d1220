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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "archbench/cli.hpp"
#include "archbench/evaluator.hpp"
#include "archbench/graph_oracle.hpp"
#include "archbench/io.hpp"
#include "archbench/llm_gateway.hpp"
#include "archbench/questgen.hpp"
#include "archbench/sampler.hpp"
#include "random_topology.hpp"
#include "reference_counts.hpp"

namespace fs = std::filesystem;
using archbench::test::kSystems;

namespace
{

const fs::path kFixtures = ARCHBENCH_SOURCE_DIR "/fixtures";

struct Result
{
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string & what)
  {
    if (!condition && pass) {
      pass = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void cli(Result & r, const std::vector<std::string> & args)
{
  std::ostringstream out;
  std::ostringstream err;
  const int code = archbench::run_cli(args, out, err);
  r.require(code == archbench::kExitOk, fmt::format("'{}' exited {}: {}", args[0], code, err.str()));
}

void pipeline(Result & r, const fs::path & run, const std::vector<fs::path> & topologies)
{
  fs::remove_all(run);
  std::vector<std::string> validate = {"validate"};
  for (const auto & t : topologies) {
    validate.push_back(t.string());
  }
  validate.insert(validate.end(), {"--run", run.string()});
  cli(r, validate);
  cli(r, {"generate", "--run", run.string(), "--seed", "42"});
  cli(r, {"sample", "--run", run.string()});
  cli(r, {"prompts", "--run", run.string()});
}

Result generation_counts()
{
  Result r;
  const auto start = std::chrono::steady_clock::now();
  for (const auto & sys : kSystems) {
    const auto topo = archbench::test::shaped_topology(
      sys.nodes, sys.services, sys.topics, 1, std::string(sys.name));
    const auto set = archbench::generate_questions(topo, 42);
    r.require(
      set.questions.size() == sys.generated_total,
      fmt::format("{}: {} questions, want {}", sys.name, set.questions.size(), sys.generated_total));
    const auto & strata = archbench::question_strata();
    for (std::size_t i = 0; i < strata.size(); ++i) {
      std::size_t n = 0;
      for (const auto & q : set.questions) {
        n += q.category == strata[i].category && q.qtype == strata[i].qtype ? 1 : 0;
      }
      r.require(
        n == sys.generated[i],
        fmt::format("{} {}: {} want {}", sys.name, archbench::stratum_label(strata[i]), n,
        sys.generated[i]));
    }
  }
  const double elapsed = seconds_since(start);
  r.require(elapsed < 10.0, fmt::format("took {:.1f} s", elapsed));
  if (r.pass) {
    r.detail = fmt::format("136 / 1472 / 27796 in {:.2f} s", elapsed);
  }
  return r;
}

Result sampling()
{
  Result r;
  const std::vector<std::pair<std::size_t, std::size_t>> spot = {
    {424, 43}, {698, 70}, {349, 35}, {1320, 100}, {34, 30}, {6, 6}, {8, 8}, {33, 30}};
  for (const auto & [g, s] : spot) {
    r.require(
      archbench::sample_size(g) == s,
      fmt::format("sample_size({}) = {}, want {}", g, archbench::sample_size(g), s));
  }
  std::size_t grand = 0;
  for (const auto & sys : kSystems) {
    for (std::size_t i = 0; i < sys.generated.size(); ++i) {
      r.require(
        archbench::sample_size(sys.generated[i]) == sys.sampled[i],
        fmt::format("{} cell {}", sys.name, i));
    }
    const auto topo = archbench::test::shaped_topology(
      sys.nodes, sys.services, sys.topics, 1, std::string(sys.name));
    const auto plan = archbench::build_sample_plan(archbench::generate_questions(topo, 42), 42);
    r.require(
      plan.total() == sys.sampled_total,
      fmt::format("{} plan total {}, want {}", sys.name, plan.total(), sys.sampled_total));
    grand += plan.total();
  }
  r.require(grand == archbench::test::kSampledGrandTotal, fmt::format("grand total {}", grand));
  if (r.pass) {
    r.detail = fmt::format("132 / 313 / 785, total {}", grand);
  }
  return r;
}

Result oracle_correctness()
{
  Result r;
  const auto start = std::chrono::steady_clock::now();
  std::size_t pairs = 0;
  std::size_t agree = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto records = archbench::test::random_node_records(seed);
    const archbench::Topology topo("random", records);
    for (const auto & a : records) {
      for (const auto & b : records) {
        if (a.name == b.name) {
          continue;  // a path from a node to itself is undefined
        }
        ++pairs;
        const bool got = archbench::oracle::has_comm_path(topo, a.name, b.name).value;
        agree += got == archbench::test::brute_force_path(records, a.name, b.name) ? 1 : 0;
      }
    }
  }
  const double elapsed = seconds_since(start);
  r.require(agree == pairs, fmt::format("{} of {} pairs agree", agree, pairs));
  r.require(elapsed < 30.0, fmt::format("took {:.1f} s", elapsed));
  if (r.pass) {
    r.detail = fmt::format("{}/{} ordered pairs over 500 graphs in {:.2f} s", agree, pairs, elapsed);
  }
  return r;
}

Result self_consistency()
{
  Result r;
  const auto set = archbench::generate_questions(
    archbench::load_topology(kFixtures / "pubsub.json"), 42);
  std::size_t correct = 0;
  for (const auto & q : set.questions) {
    const std::string raw = "<answer>" + archbench::canonical_text(q.ground_truth) + "</answer>";
    correct += archbench::judge(q, archbench::extract(raw)).outcome ==
      archbench::Outcome::Correct ? 1 : 0;
  }
  r.require(
    correct == 136 && set.questions.size() == 136,
    fmt::format("{}/{}", correct, set.questions.size()));
  r.detail = fmt::format("{}/{}", correct, set.questions.size());
  return r;
}

Result count_formula()
{
  Result r;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> n_dist(1, 10);
  std::uniform_int_distribution<std::size_t> s_dist(0, 30);
  std::uniform_int_distribution<std::size_t> t_dist(0, 10);
  std::size_t matches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = n_dist(rng);
    const std::size_t s = s_dist(rng);
    const std::size_t t = t_dist(rng);
    const auto topo = archbench::test::shaped_topology(n, s, t, static_cast<std::uint64_t>(i));
    const auto got = archbench::generate_questions(topo, 42).questions.size();
    const auto want = archbench::expected_count(n, s, t);
    r.require(got == want, fmt::format("(N,S,T)=({},{},{}): {} vs {}", n, s, t, got, want));
    matches += got == want ? 1 : 0;
  }
  if (r.pass) {
    r.detail = fmt::format("{}/1000 triples", matches);
  }
  return r;
}

Result end_to_end_replay(const fs::path & scratch)
{
  Result r;
  const fs::path run = scratch / "replay";
  pipeline(r, run, {kFixtures / "pubsub.json"});
  cli(
    r, {"run", "--run", run.string(), "--models", (kFixtures / "models.json").string(),
      "--replay", (kFixtures / "replay" / "pubsub_30.jsonl").string()});
  cli(r, {"score", "--run", run.string()});
  cli(r, {"report", "--run", run.string()});
  if (!r.pass) {
    return r;
  }
  const auto report = archbench::accuracy_report_from_json(
    nlohmann::json::parse(archbench::read_text_file(run / "report.json")));
  r.require(report.accuracy.size() == 1, "expected one accuracy cell");
  if (!r.pass) {
    return r;
  }
  const auto & tally = report.accuracy[0].tally;
  r.require(
    tally.correct == 29 && tally.incorrect == 1 && tally.needs_review == 0 && tally.total == 30,
    fmt::format("tally {}/{}/{} of {}", tally.correct, tally.incorrect, tally.needs_review,
    tally.total));
  r.require(tally.accuracy == 29.0 / 30.0, fmt::format("accuracy {}", tally.accuracy));

  const auto verdicts = archbench::verdicts_from_csv(
    archbench::read_text_file(run / "verdicts.csv"));
  std::size_t recovered = 0;
  for (const auto & v : verdicts) {
    if (v.extraction.status == archbench::ExtractionStatus::MissingCloseTagRecovered) {
      ++recovered;
      r.require(v.outcome == archbench::Outcome::Correct, "recovered answer not judged correct");
    }
  }
  r.require(recovered == 1, fmt::format("{} recovered extractions", recovered));

  const std::string table = archbench::read_text_file(run / "report" / "accuracy.md");
  r.require(table.starts_with("| Model | pubsub | Mean |\n"), "accuracy table header");
  r.require(
    table.find("| gemini-2.5-flash | 96.67% | 96.67% |") != std::string::npos,
    "accuracy row");
  r.require(table.find("| Mean | 96.67% | 96.67% |") != std::string::npos, "mean row");

  const auto models = archbench::load_model_configs(kFixtures / "models.json");
  r.require(
    archbench::response_cost(1000, 500, models.at(0)) == 0.003, "cost arithmetic");
  bool found = false;
  for (const auto & resp : archbench::load_responses(run / "responses.csv")) {
    if (resp.input_tokens == 1000 && resp.output_tokens == 500) {
      found = true;
      r.require(resp.cost == 0.003, fmt::format("recorded cost {}", resp.cost));
    }
  }
  r.require(found, "1000/500 record missing from responses.csv");
  if (r.pass) {
    r.detail = fmt::format(
      "{:.2f}% (29 correct, 1 incorrect, 1 recovered), cost $0.003", tally.accuracy * 100.0);
  }
  return r;
}

Result determinism(const fs::path & scratch)
{
  Result r;
  const fs::path turtle = scratch / "turtlebot.json";
  archbench::write_text_file(
    turtle, archbench::serialize_topology(
      archbench::test::shaped_topology(8, 53, 15, 3, "turtlebot")));
  const std::vector<fs::path> inputs = {kFixtures / "pubsub.json", turtle};
  pipeline(r, scratch / "a", inputs);
  pipeline(r, scratch / "b", inputs);
  if (!r.pass) {
    return r;
  }
  std::size_t compared = 0;
  for (const char * system : {"pubsub", "turtlebot"}) {
    for (const char * dir : {"questions", "plans"}) {
      const fs::path rel = fs::path(dir) / (std::string(system) + ".json");
      r.require(
        archbench::read_text_file(scratch / "a" / rel) ==
        archbench::read_text_file(scratch / "b" / rel), rel.string() + " differs");
      ++compared;
    }
  }
  r.require(
    archbench::read_text_file(scratch / "a" / "prompts.jsonl") ==
    archbench::read_text_file(scratch / "b" / "prompts.jsonl"), "prompts.jsonl differs");
  ++compared;
  if (r.pass) {
    r.detail = fmt::format("{} files byte-identical", compared);
  }
  return r;
}

}  // namespace

int main()
{
  const fs::path scratch = fs::temp_directory_path() / "archbench_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
    {"generation counts", generation_counts},
    {"sampling", sampling},
    {"oracle correctness", oracle_correctness},
    {"ground-truth self-consistency", self_consistency},
    {"count-formula equivalence", count_formula},
    {"end-to-end replay", [&] {return end_to_end_replay(scratch);}},
    {"determinism", [&] {return determinism(scratch);}},
  };

  int failures = 0;
  for (const auto & [name, check] : criteria) {
    Result result;
    try {
      result = check();
    } catch (const std::exception & e) {
      result.pass = false;
      result.detail = fmt::format("exception: {}", e.what());
    }
    failures += result.pass ? 0 : 1;
    std::cout << fmt::format("{} {}: {}\n", result.pass ? "PASS" : "FAIL", name, result.detail);
  }
  fs::remove_all(scratch);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
