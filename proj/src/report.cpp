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

#include "archbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "archbench/csv.hpp"
#include "archbench/errors.hpp"
#include "archbench/io.hpp"

namespace archbench
{

namespace
{

std::string dot_quote(std::string_view text)
{
  // Inside a quoted DOT string only the double quote is an escape.
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string percent(double ratio)
{
  return fmt::format("{:.2f}%", ratio * 100.0);
}

std::string exact(double value)
{
  return fmt::format("{}", value);
}

std::string md_row(const std::vector<std::string> & cells)
{
  return fmt::format("| {} |\n", fmt::join(cells, " | "));
}

std::string md_rule(std::size_t columns)
{
  std::vector<std::string> cells(columns, "---");
  return md_row(cells);
}

std::string stats_cells(const SummaryStats & s)
{
  return fmt::format(
    "{:.2f} | {:.2f} | {:.0f} | {:.2f} | {:.2f} | {:.2f} | {:.0f}", s.mean, s.sd, s.min, s.q1,
    s.median, s.q3, s.max);
}

std::vector<std::string> stats_csv(const SummaryStats & s)
{
  return {
    std::to_string(s.count), exact(s.mean), exact(s.sd), exact(s.min), exact(s.q1),
    exact(s.median), exact(s.q3), exact(s.max)};
}

void append(std::vector<std::string> & to, const std::vector<std::string> & from)
{
  to.insert(to.end(), from.begin(), from.end());
}

std::string accuracy_md(const AccuracyReport & report)
{
  std::vector<std::string> header = {"Model"};
  append(header, report.systems);
  header.push_back("Mean");
  std::string out = md_row(header) + md_rule(header.size());
  for (const auto & model : report.models) {
    std::vector<std::string> row = {model};
    for (const auto & system : report.systems) {
      const auto * cell = report.find(model, system);
      row.push_back(cell ? percent(cell->tally.accuracy) : "-");
    }
    row.push_back(percent(report.model_mean.at(model)));
    out += md_row(row);
  }
  std::vector<std::string> mean_row = {"Mean"};
  for (const auto & system : report.systems) {
    mean_row.push_back(percent(report.system_mean.at(system)));
  }
  mean_row.push_back(percent(report.overall_mean));
  out += md_row(mean_row);
  return out;
}

std::string accuracy_csv(const AccuracyReport & report)
{
  std::vector<std::string> header = {"model"};
  append(header, report.systems);
  header.push_back("mean");
  std::string out = csv::format_row(header);
  for (const auto & model : report.models) {
    std::vector<std::string> row = {model};
    for (const auto & system : report.systems) {
      const auto * cell = report.find(model, system);
      row.push_back(cell ? exact(cell->tally.accuracy) : "");
    }
    row.push_back(exact(report.model_mean.at(model)));
    out += csv::format_row(row);
  }
  std::vector<std::string> mean_row = {"mean"};
  for (const auto & system : report.systems) {
    mean_row.push_back(exact(report.system_mean.at(system)));
  }
  mean_row.push_back(exact(report.overall_mean));
  out += csv::format_row(mean_row);
  return out;
}

std::string breakdown_md(const AccuracyReport & report)
{
  std::set<Stratum> present;
  for (const auto & cell : report.breakdown) {
    present.insert(cell.stratum);
  }
  std::vector<Stratum> columns;
  for (const auto & s : question_strata()) {
    if (present.contains(s)) {
      columns.push_back(s);
    }
  }
  std::vector<std::string> header = {"Model", "System"};
  for (const auto & s : columns) {
    header.push_back(stratum_label(s));
  }
  std::string out = md_row(header) + md_rule(header.size());
  std::map<std::pair<std::string, std::string>, std::map<Stratum, const OutcomeTally *>> rows;
  for (const auto & cell : report.breakdown) {
    rows[{cell.model, cell.system}][cell.stratum] = &cell.tally;
  }
  for (const auto & [key, cells] : rows) {
    std::vector<std::string> row = {key.first, key.second};
    for (const auto & s : columns) {
      auto it = cells.find(s);
      row.push_back(
        it == cells.end() ? "-" :
        fmt::format("{}/{} ({})", it->second->correct, it->second->total,
        percent(it->second->accuracy)));
    }
    out += md_row(row);
  }
  return out;
}

std::string breakdown_csv(const AccuracyReport & report)
{
  std::string out = csv::format_row(
    std::vector<std::string>{"model", "system", "category", "qtype", "correct", "incorrect",
      "needs_review", "total", "accuracy"});
  for (const auto & cell : report.breakdown) {
    const auto & t = cell.tally;
    out += csv::format_row(
      std::vector<std::string>{cell.model, cell.system,
        std::string(to_string(cell.stratum.category)), std::string(to_string(cell.stratum.qtype)),
        std::to_string(t.correct), std::to_string(t.incorrect), std::to_string(t.needs_review),
        std::to_string(t.total), exact(t.accuracy)});
  }
  return out;
}

std::string tokens_md(const AccuracyReport & report)
{
  const std::vector<std::string> header = {
    "Model", "System", "Responses", "Input mean", "Output mean", "Output sd", "Output min",
    "Output Q1", "Output median", "Output Q3", "Output max", "Cost (USD)"};
  std::string out = md_row(header) + md_rule(header.size());
  for (const auto & cell : report.tokens) {
    out += fmt::format(
      "| {} | {} | {} | {:.2f} | {} | {:.6f} |\n", cell.model, cell.system,
      cell.output_tokens.count, cell.input_tokens.mean, stats_cells(cell.output_tokens),
      cell.cost);
  }
  out += fmt::format("\nTotal cost (USD): {:.6f}\n\n", report.total_cost);

  const std::vector<std::string> stratum_header = {
    "System", "Stratum", "Responses", "Mean", "Sd", "Min", "Q1", "Median", "Q3", "Max"};
  out += md_row(stratum_header) + md_rule(stratum_header.size());
  for (const auto & cell : report.stratum_tokens) {
    out += fmt::format(
      "| {} | {} | {} | {} |\n", cell.system, stratum_label(cell.stratum),
      cell.output_tokens.count, stats_cells(cell.output_tokens));
  }
  return out;
}

std::string tokens_csv(const AccuracyReport & report)
{
  std::vector<std::string> header = {"model", "system", "direction"};
  append(header, {"count", "mean", "sd", "min", "q1", "median", "q3", "max", "cost"});
  std::string out = csv::format_row(header);
  for (const auto & cell : report.tokens) {
    for (const auto & [direction, stats] :
      {std::pair{"input", &cell.input_tokens}, std::pair{"output", &cell.output_tokens}})
    {
      std::vector<std::string> row = {cell.model, cell.system, direction};
      append(row, stats_csv(*stats));
      row.push_back(exact(cell.cost));
      out += csv::format_row(row);
    }
  }
  return out;
}

std::string patterns_md(const AccuracyReport & report)
{
  const std::vector<std::string> header = {
    "Model", "Responses", "Numbered list", "Bullet list", "Need to check", "Type reference"};
  std::string out = md_row(header) + md_rule(header.size());
  auto row = [](std::string_view label, const PatternCounts & c) {
      return fmt::format(
        "| {} | {} | {} | {} | {} | {} |\n", label, c.responses, c.numbered_list,
        c.bullet_list, c.need_to_check, c.type_reference);
    };
  for (const auto & cell : report.patterns) {
    out += row(cell.model, cell.counts);
  }
  out += row("Total", report.pattern_total);
  return out;
}

std::string cost_vs_tokens_csv(const AccuracyReport & report)
{
  std::string out = csv::format_row(
    std::vector<std::string>{"question_id", "model", "system", "category", "qtype",
      "output_tokens", "cost", "outcome"});
  for (const auto & p : report.points) {
    out += csv::format_row(
      std::vector<std::string>{p.question_id, p.model, p.system,
        std::string(to_string(p.stratum.category)), std::string(to_string(p.stratum.qtype)),
        std::to_string(p.output_tokens), exact(p.cost), std::string(to_string(p.outcome))});
  }
  return out;
}

}  // namespace

std::string ramp_color(std::size_t count, std::size_t max)
{
  if (max == 0) {
    return "#ffffff";
  }
  const double ratio = static_cast<double>(std::min(count, max)) / static_cast<double>(max);
  const auto level = static_cast<unsigned>(std::lround(255.0 * (1.0 - ratio)));
  return fmt::format("#ff{:02x}{:02x}", level, level);
}

std::vector<ColorStop> linear_scale(std::size_t max)
{
  std::vector<ColorStop> out;
  for (std::size_t i = 0; i <= max; ++i) {
    out.push_back({i, ramp_color(i, max)});
  }
  return out;
}

GraphPaintSpec paint_from_verdicts(
  const Topology & topo, std::span<const Verdict> verdicts, const QuestionIndex & questions)
{
  GraphPaintSpec paint;
  for (const auto & e : entities(topo)) {
    paint.incorrect_counts[e.name] = 0;
  }
  std::size_t max = 0;
  for (const auto & v : verdicts) {
    if (v.outcome != Outcome::Incorrect) {
      continue;
    }
    const auto * entry = questions.find(v.question_id);
    if (entry == nullptr || entry->system != topo.system_name()) {
      continue;
    }
    for (const auto & subject : entry->question.subjects) {
      auto it = paint.incorrect_counts.find(subject);
      if (it != paint.incorrect_counts.end()) {
        max = std::max(max, ++it->second);
      }
    }
  }
  paint.scale = linear_scale(max);
  return paint;
}

std::string export_dot(const Topology & topo, const GraphPaintSpec & paint)
{
  for (std::size_t i = 1; i < paint.scale.size(); ++i) {
    if (paint.scale[i].threshold <= paint.scale[i - 1].threshold) {
      throw Error("color scale thresholds must be strictly increasing");
    }
  }
  for (const auto & [name, count] : paint.incorrect_counts) {
    if (!topo.kind_of(name)) {
      throw Error(fmt::format("painted entity '{}' is not in the graph", name));
    }
  }
  auto fill = [&](const std::string & name) -> std::optional<ColorStop> {
      auto it = paint.incorrect_counts.find(name);
      if (it == paint.incorrect_counts.end()) {
        return std::nullopt;
      }
      std::optional<ColorStop> stop;
      for (const auto & s : paint.scale) {
        if (s.threshold <= it->second) {
          stop = ColorStop{it->second, s.color};
        }
      }
      return stop;
    };
  auto vertex = [&](const std::string & name, std::string_view shape, bool dashed) {
      std::vector<std::string> style;
      if (dashed) {
        style.emplace_back("dashed");
      }
      std::string extra;
      if (const auto stop = fill(name)) {
        style.emplace_back("filled");
        extra = fmt::format(
          ", fillcolor={}, tooltip={}", dot_quote(stop->color),
          dot_quote(fmt::format("{} incorrect", stop->threshold)));
      }
      std::string style_attr;
      if (!style.empty()) {
        style_attr = fmt::format(", style={}", dot_quote(fmt::format("{}", fmt::join(style, ","))));
      }
      return fmt::format("  {} [shape={}{}{}];\n", dot_quote(name), shape, style_attr, extra);
    };

  std::string out = fmt::format("digraph {} {{\n  rankdir=LR;\n", dot_quote(topo.system_name()));
  for (const auto & node : topo.nodes()) {
    out += vertex(node.name, "ellipse", false);
  }
  for (const auto & [name, info] : topo.topics()) {
    out += vertex(name, "box", false);
  }
  for (const auto & [name, info] : topo.services()) {
    out += vertex(name, "box", true);
  }
  for (const auto & node : topo.nodes()) {
    for (const auto & e : node.publishers) {
      out += fmt::format("  {} -> {};\n", dot_quote(node.name), dot_quote(e.interface_name));
    }
    for (const auto & e : node.subscribers) {
      out += fmt::format("  {} -> {};\n", dot_quote(e.interface_name), dot_quote(node.name));
    }
    for (const auto & e : node.clients) {
      out += fmt::format(
        "  {} -> {} [style=dashed];\n", dot_quote(node.name), dot_quote(e.interface_name));
    }
    for (const auto & e : node.service_servers) {
      out += fmt::format(
        "  {} -> {} [style=dashed];\n", dot_quote(e.interface_name), dot_quote(node.name));
    }
  }
  out += "}\n";
  return out;
}

RenderedTables render_tables(const AccuracyReport & report)
{
  if (report.empty()) {
    throw EvaluationError("cannot render tables for an empty report");
  }
  return {
    accuracy_md(report), accuracy_csv(report), breakdown_md(report), breakdown_csv(report),
    tokens_md(report), tokens_csv(report), patterns_md(report), cost_vs_tokens_csv(report)};
}

void write_tables(const RenderedTables & tables, const std::filesystem::path & dir)
{
  write_text_file(dir / "accuracy.md", tables.accuracy_md);
  write_text_file(dir / "accuracy.csv", tables.accuracy_csv);
  write_text_file(dir / "breakdown.md", tables.breakdown_md);
  write_text_file(dir / "breakdown.csv", tables.breakdown_csv);
  write_text_file(dir / "tokens.md", tables.tokens_md);
  write_text_file(dir / "tokens.csv", tables.tokens_csv);
  write_text_file(dir / "patterns.md", tables.patterns_md);
  write_text_file(dir / "cost_vs_tokens.csv", tables.cost_vs_tokens_csv);
}

}  // namespace archbench
