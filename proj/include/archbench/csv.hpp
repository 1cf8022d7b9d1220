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

#ifndef ARCHBENCH__CSV_HPP_
#define ARCHBENCH__CSV_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace archbench::csv
{

using Row = std::vector<std::string>;

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// quoted and embedded quotes doubled.
std::string escape(std::string_view field);

/// One CSV record terminated by "\n".
std::string format_row(std::span<const std::string> fields);

/// Parses RFC 4180 text (quoted fields may span lines). Throws archbench::Error on an unterminated quote.
std::vector<Row> parse(std::string_view text);

/// Parses text whose first row is `header`; throws when the header differs.
std::vector<Row> parse_with_header(std::string_view text, std::span<const std::string> header);

}  // namespace archbench::csv

#endif  // ARCHBENCH__CSV_HPP_
