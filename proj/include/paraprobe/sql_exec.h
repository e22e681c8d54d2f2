// Copyright 2026 The paraprobe Authors.
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

#ifndef PARAPROBE_SQL_EXEC_H_
#define PARAPROBE_SQL_EXEC_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace paraprobe {

struct Blob {
  std::string bytes;
  auto operator<=>(const Blob&) const = default;
};

// null, integer, real, text, blob.
using SqlValue = std::variant<std::monostate, std::int64_t, double, std::string, Blob>;

struct ResultSet {
  int columns = 0;
  std::vector<std::vector<SqlValue>> rows;
};

struct ExecLimits {
  double timeout_seconds = 30.0;
  std::int64_t row_cap = 100000;
};

// Runs a single read-only statement against a database opened read-only.
// Errors: Error(kExecution) for SQL errors, multiple statements and write
// statements; Error(kTimeout) when the wall-clock budget runs out;
// Error(kTruncation) when the result has more than row_cap rows.
ResultSet ExecuteSql(const std::filesystem::path& db_file, const std::string& sql,
                     const ExecLimits& limits = {});

// Column counts must agree. Rows are compared in order when `ordered`, else
// as multisets. Integers and text compare exactly; a real matches any number
// within `tolerance`. Column names are ignored.
bool ResultsEquivalent(const ResultSet& gold, const ResultSet& pred, bool ordered,
                       double tolerance = 1e-6);

// True when the statement contains ORDER BY outside string literals and
// comments.
bool HasOrderBy(std::string_view sql);

}  // namespace paraprobe

#endif  // PARAPROBE_SQL_EXEC_H_
