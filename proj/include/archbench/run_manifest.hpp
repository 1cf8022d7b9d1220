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


#ifndef ARCHBENCH__RUN_MANIFEST_HPP_
#define ARCHBENCH__RUN_MANIFEST_HPP_

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace archbench
{

enum class Stage
{
  Validate,
  Generate,
  Sample,
  Prompts,
  Run,
  Score,
  Report,
};

inline constexpr std::array<Stage, 7> kStages = {
  Stage::Validate, Stage::Generate, Stage::Sample, Stage::Prompts, Stage::Run, Stage::Score,
  Stage::Report};

std::string_view to_string(Stage stage);
Stage parse_stage(std::string_view text);

struct StageState
{
  bool complete = false;
  std::string completed_at;  ///< ISO-8601 UTC, empty while incomplete
  bool operator==(const StageState &) const = default;
};

/// Persistent record of a pipeline run directory.
class RunManifest
{
public:
  std::string run_id;
  std::uint64_t seed = 0;
  /// system name -> topology file inside the run directory
  std::map<std::string, std::string> topologies;
  /// named input paths and overrides, e.g. "models", "prompt_config"
  std::map<std::string, std::string> config;

  const StageState & state(Stage stage) const;
  bool is_complete(Stage stage) const {return state(stage).complete;}

  /// Throws StageOrderError unless every earlier stage is complete.
  void require_ready(Stage stage) const;

  /// Marks `stage` and every later stage incomplete.
  void invalidate_from(Stage stage);

  /// Marks `stage` complete; later stages stay invalidated.
  void mark_complete(Stage stage, std::string timestamp);

  bool operator==(const RunManifest &) const = default;

private:
  std::array<StageState, kStages.size()> stages_{};
};

nlohmann::ordered_json to_json(const RunManifest & manifest);
RunManifest run_manifest_from_json(const nlohmann::json & j);

void save_run_manifest(const RunManifest & manifest, const std::filesystem::path & path);
RunManifest load_run_manifest(const std::filesystem::path & path);

/// Wall clock, or SOURCE_DATE_EPOCH when set.
std::chrono::system_clock::time_point current_time();

/// ISO-8601 UTC with second resolution.
std::string format_timestamp(std::chrono::system_clock::time_point when);

std::string current_timestamp();

}  // namespace archbench

#endif  // ARCHBENCH__RUN_MANIFEST_HPP_
