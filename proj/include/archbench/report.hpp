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


#ifndef ARCHBENCH__REPORT_HPP_
#define ARCHBENCH__REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "archbench/evaluator.hpp"
#include "archbench/topology.hpp"

namespace archbench
{

struct ColorStop
{
  std::size_t threshold = 0;
  std::string color;
  bool operator==(const ColorStop &) const = default;
};

/// Incorrect-answer counts per entity plus the fill color scale.
struct GraphPaintSpec
{
  std::map<std::string, std::size_t, std::less<>> incorrect_counts;
  /// Strictly increasing thresholds. An entity takes the color of the last
  /// stop whose threshold does not exceed its count. Empty means no fill.
  std::vector<ColorStop> scale;
};

/// Hex color on a linear white to red ramp; `count` is clamped to `max`.
std::string ramp_color(std::size_t count, std::size_t max);

/// One stop per distinct count from 0 to `max`, colored by ramp_color.
std::vector<ColorStop> linear_scale(std::size_t max);

/// Counts incorrect verdicts per entity named in the question subjects.
GraphPaintSpec paint_from_verdicts(
  const Topology & topo, std::span<const Verdict> verdicts, const QuestionIndex & questions);

std::string export_dot(const Topology & topo, const GraphPaintSpec & paint = {});

struct RenderedTables
{
  std::string accuracy_md;
  std::string accuracy_csv;
  std::string breakdown_md;
  std::string breakdown_csv;
  std::string tokens_md;
  std::string tokens_csv;
  std::string patterns_md;
  std::string cost_vs_tokens_csv;
};

RenderedTables render_tables(const AccuracyReport & report);

/// Writes the tables under `dir` with fixed file names.
void write_tables(const RenderedTables & tables, const std::filesystem::path & dir);

}  // namespace archbench

#endif  // ARCHBENCH__REPORT_HPP_
