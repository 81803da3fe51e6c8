// Copyright 2026 The Spinbath Authors
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

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace spinbath {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  std::optional<std::size_t> column_index(std::string_view name) const;
};

// Comma separated, first non-comment line is the header. Blank lines and lines
// starting with '#' are skipped. Fields are trimmed; no quoting support.
CsvTable read_csv(std::istream& in);

double parse_double(std::string_view text);

// Shortest round-trip representation; identical input gives identical bytes.
std::string format_double(double value);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  CsvWriter& operator<<(double value);
  CsvWriter& operator<<(long long value);
  CsvWriter& operator<<(int value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(std::size_t value) { return *this << static_cast<long long>(value); }
  CsvWriter& operator<<(const std::string& value);
  CsvWriter& operator<<(const char* value) { return *this << std::string(value); }
  void end_row();

 private:
  void separator();
  std::ostream& out_;
  std::size_t columns_;
  std::size_t column_ = 0;
};

}  // namespace spinbath
