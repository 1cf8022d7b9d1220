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

#include "archbench/run_manifest.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>

#include <fmt/format.h>

#include "archbench/errors.hpp"
#include "archbench/io.hpp"

namespace archbench
{

std::string_view to_string(Stage stage)
{
  switch (stage) {
    case Stage::Validate: return "validate";
    case Stage::Generate: return "generate";
    case Stage::Sample: return "sample";
    case Stage::Prompts: return "prompts";
    case Stage::Run: return "run";
    case Stage::Score: return "score";
    case Stage::Report: return "report";
  }
  return "unknown";
}

Stage parse_stage(std::string_view text)
{
  for (Stage s : kStages) {
    if (to_string(s) == text) {
      return s;
    }
  }
  throw ConfigError(fmt::format("unknown stage '{}'", text));
}

const StageState & RunManifest::state(Stage stage) const
{
  return stages_[static_cast<std::size_t>(stage)];
}

void RunManifest::require_ready(Stage stage) const
{
  for (Stage s : kStages) {
    if (s == stage) {
      return;
    }
    if (!is_complete(s)) {
      throw StageOrderError(
              fmt::format(
                "stage '{}' requires '{}' to complete first", to_string(stage), to_string(s)));
    }
  }
}

void RunManifest::invalidate_from(Stage stage)
{
  for (auto i = static_cast<std::size_t>(stage); i < stages_.size(); ++i) {
    stages_[i] = {};
  }
}

void RunManifest::mark_complete(Stage stage, std::string timestamp)
{
  require_ready(stage);
  invalidate_from(stage);
  stages_[static_cast<std::size_t>(stage)] = {true, std::move(timestamp)};
}

nlohmann::ordered_json to_json(const RunManifest & manifest)
{
  nlohmann::ordered_json doc;
  doc["run_id"] = manifest.run_id;
  doc["seed"] = manifest.seed;
  doc["topologies"] = manifest.topologies;
  doc["config"] = manifest.config;
  doc["stages"] = nlohmann::ordered_json::array();
  for (Stage s : kStages) {
    const auto & st = manifest.state(s);
    nlohmann::ordered_json j;
    j["name"] = to_string(s);
    j["complete"] = st.complete;
    j["completed_at"] = st.completed_at;
    doc["stages"].push_back(std::move(j));
  }
  return doc;
}

RunManifest run_manifest_from_json(const nlohmann::json & doc)
{
  try {
    RunManifest m;
    m.run_id = doc.at("run_id").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.topologies = doc.at("topologies").get<std::map<std::string, std::string>>();
    m.config = doc.value("config", std::map<std::string, std::string>{});
    for (const auto & j : doc.at("stages")) {
      const Stage s = parse_stage(j.at("name").get<std::string>());
      if (j.at("complete").get<bool>()) {
        m.mark_complete(s, j.value("completed_at", std::string{}));
      }
    }
    return m;
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(fmt::format("malformed run manifest: {}", e.what()));
  } catch (const StageOrderError & e) {
    throw ConfigError(fmt::format("inconsistent run manifest: {}", e.what()));
  }
}

void save_run_manifest(const RunManifest & manifest, const std::filesystem::path & path)
{
  write_text_file(path, to_json(manifest).dump(2) + "\n");
}

RunManifest load_run_manifest(const std::filesystem::path & path)
{
  const std::string text = read_text_file(path);
  try {
    return run_manifest_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(fmt::format("'{}': {}", path.string(), e.what()));
  }
}

std::chrono::system_clock::time_point current_time()
{
  const char * epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') {
    return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
  }
  long long value = 0;
  const std::string_view text(epoch);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("SOURCE_DATE_EPOCH is not an integer: '{}'", text));
  }
  return std::chrono::system_clock::time_point{std::chrono::seconds{value}};
}

std::string format_timestamp(std::chrono::system_clock::time_point when)
{
  const std::time_t t = std::chrono::system_clock::to_time_t(when);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

std::string current_timestamp()
{
  return format_timestamp(current_time());
}

}  // namespace archbench
