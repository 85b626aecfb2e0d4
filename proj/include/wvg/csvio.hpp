/*
 * Copyright 2026 the wvg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wvg {

// Minimal CSV support: comma separator, "\n" row ends, RFC 4180 quoting for
// fields containing commas, quotes, or newlines.  Numbers are rendered with
// shortest round-trip formatting upstream, so emitted bytes depend only on the
// values, never on locale.

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);
std::string csv_to_string(const CsvTable& table);

// Parses a full document; first row is the header.  Throws IoError on
// malformed quoting or ragged rows.
CsvTable read_csv(std::string_view text);

}  // namespace wvg
