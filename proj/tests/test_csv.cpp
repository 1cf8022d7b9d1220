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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "archbench/csv.hpp"
#include "archbench/errors.hpp"

namespace archbench
{
namespace
{

TEST(Csv, EscapesOnlyWhenNeeded)
{
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::escape("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv::escape(""), "");
}

TEST(Csv, RoundTripsAwkwardFields)
{
  const std::vector<std::vector<std::string>> rows = {
    {"id", "text"},
    {"1", "<answer>Yes</answer>\n<explanation>a, b</explanation>"},
    {"2", "\"quoted\""},
    {"3", ""},
    {"4", "line\r\nbreak"},
  };
  std::string text;
  for (const auto & r : rows) {
    text += csv::format_row(r);
  }
  EXPECT_EQ(csv::parse(text), rows);
}

TEST(Csv, HeaderIsChecked)
{
  const std::vector<std::string> header = {"a", "b"};
  EXPECT_EQ(csv::parse_with_header("a,b\n1,2\n", header).size(), 1u);
  EXPECT_THROW(csv::parse_with_header("a,c\n1,2\n", header), Error);
  EXPECT_THROW(csv::parse_with_header("a,b\n1\n", header), Error);
  EXPECT_THROW(csv::parse("\"open"), Error);
}

TEST(Csv, CrlfLineEndings)
{
  const auto rows = csv::parse("a,b\r\n1,2\r\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"1", "2"}));
}

}  // namespace
}  // namespace archbench
