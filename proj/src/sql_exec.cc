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

#include "paraprobe/sql_exec.h"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"
#include "sqlite_handle.h"

namespace paraprobe {
namespace {

using Clock = std::chrono::steady_clock;

int ProgressCallback(void* deadline) {
  return Clock::now() > *static_cast<Clock::time_point*>(deadline) ? 1 : 0;
}

SqlValue ReadCell(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_NULL:
      return std::monostate{};
    case SQLITE_INTEGER:
      return static_cast<std::int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return sqlite3_column_double(stmt, col);
    case SQLITE_BLOB: {
      const auto* data = static_cast<const char*>(sqlite3_column_blob(stmt, col));
      return Blob{std::string(data ? data : "", sqlite3_column_bytes(stmt, col))};
    }
    default: {
      const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(stmt, col));
      return std::string(text ? text : "", sqlite3_column_bytes(stmt, col));
    }
  }
}

bool OnlyTerminators(std::string_view rest) {
  return std::all_of(rest.begin(), rest.end(), [](char c) {
    return c == ';' || std::isspace(static_cast<unsigned char>(c));
  });
}

}  // namespace

ResultSet ExecuteSql(const std::filesystem::path& db_file, const std::string& sql,
                     const ExecLimits& limits) {
  auto db = internal::OpenReadOnly(db_file, ErrorKind::kExecution);
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(limits.timeout_seconds));
  sqlite3_progress_handler(db.get(), 1000, ProgressCallback, &deadline);

  const char* tail = nullptr;
  auto stmt = internal::Prepare(db.get(), sql, ErrorKind::kExecution, &tail);
  if (!stmt) throw Error(ErrorKind::kExecution, "empty statement");
  if (tail != nullptr && !OnlyTerminators(tail)) {
    throw Error(ErrorKind::kExecution, "multiple statements are not allowed");
  }
  if (!sqlite3_stmt_readonly(stmt.get())) {
    throw Error(ErrorKind::kExecution, "write statements are rejected");
  }

  ResultSet result;
  result.columns = sqlite3_column_count(stmt.get());
  int rc;
  while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
    if (static_cast<std::int64_t>(result.rows.size()) >= limits.row_cap) {
      throw Error(ErrorKind::kTruncation,
                  fmt::format("result exceeds the row cap of {}", limits.row_cap));
    }
    std::vector<SqlValue> row;
    row.reserve(result.columns);
    for (int c = 0; c < result.columns; ++c) row.push_back(ReadCell(stmt.get(), c));
    result.rows.push_back(std::move(row));
  }
  if (rc == SQLITE_INTERRUPT) {
    throw Error(ErrorKind::kTimeout,
                fmt::format("query exceeded {} s", limits.timeout_seconds));
  }
  if (rc != SQLITE_DONE) throw Error(ErrorKind::kExecution, sqlite3_errmsg(db.get()));
  return result;
}

namespace {

// Integers and reals share one class so 3 and 3.0 can match.
int TypeClass(const SqlValue& v) {
  switch (v.index()) {
    case 0: return 0;
    case 1:
    case 2: return 1;
    case 3: return 2;
    default: return 3;
  }
}

double AsDouble(const SqlValue& v) {
  return v.index() == 1 ? static_cast<double>(std::get<std::int64_t>(v)) : std::get<double>(v);
}

bool ValueLess(const SqlValue& a, const SqlValue& b) {
  const int ca = TypeClass(a);
  const int cb = TypeClass(b);
  if (ca != cb) return ca < cb;
  switch (ca) {
    case 0: return false;
    case 1:
      if (a.index() == 1 && b.index() == 1) {
        return std::get<std::int64_t>(a) < std::get<std::int64_t>(b);
      }
      return AsDouble(a) < AsDouble(b);
    case 2: return std::get<std::string>(a) < std::get<std::string>(b);
    default: return std::get<Blob>(a) < std::get<Blob>(b);
  }
}

bool ValueEqual(const SqlValue& a, const SqlValue& b, double tolerance) {
  const int ca = TypeClass(a);
  if (ca != TypeClass(b)) return false;
  switch (ca) {
    case 0: return true;
    case 1:
      if (a.index() == 1 && b.index() == 1) {
        return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
      }
      return std::fabs(AsDouble(a) - AsDouble(b)) <= tolerance;
    case 2: return std::get<std::string>(a) == std::get<std::string>(b);
    default: return std::get<Blob>(a) == std::get<Blob>(b);
  }
}

bool RowLess(const std::vector<SqlValue>& a, const std::vector<SqlValue>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), ValueLess);
}

}  // namespace

bool ResultsEquivalent(const ResultSet& gold, const ResultSet& pred, bool ordered,
                       double tolerance) {
  if (gold.columns != pred.columns || gold.rows.size() != pred.rows.size()) return false;
  auto rows_equal = [tolerance](const std::vector<SqlValue>& a,
                                const std::vector<SqlValue>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (!ValueEqual(a[i], b[i], tolerance)) return false;
    }
    return true;
  };
  if (ordered) {
    return std::equal(gold.rows.begin(), gold.rows.end(), pred.rows.begin(), rows_equal);
  }
  std::vector<std::vector<SqlValue>> g = gold.rows;
  std::vector<std::vector<SqlValue>> p = pred.rows;
  std::sort(g.begin(), g.end(), RowLess);
  std::sort(p.begin(), p.end(), RowLess);
  return std::equal(g.begin(), g.end(), p.begin(), rows_equal);
}

bool HasOrderBy(std::string_view sql) {
  std::string words;  // lowercased text with literals and comments blanked out
  for (size_t i = 0; i < sql.size(); ++i) {
    const char c = sql[i];
    if (c == '\'' || c == '"' || c == '`') {
      const size_t close = sql.find(c, i + 1);
      words += ' ';
      if (close == std::string_view::npos) break;
      i = close;
    } else if (c == '-' && i + 1 < sql.size() && sql[i + 1] == '-') {
      const size_t eol = sql.find('\n', i);
      words += ' ';
      if (eol == std::string_view::npos) break;
      i = eol;
    } else if (c == '/' && i + 1 < sql.size() && sql[i + 1] == '*') {
      const size_t end = sql.find("*/", i + 2);
      words += ' ';
      if (end == std::string_view::npos) break;
      i = end + 1;
    } else {
      words += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  auto is_word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  size_t pos = 0;
  while ((pos = words.find("order", pos)) != std::string::npos) {
    const bool starts = pos == 0 || !is_word(words[pos - 1]);
    size_t next = pos + 5;
    const bool had_space = next < words.size() && std::isspace(static_cast<unsigned char>(words[next]));
    while (next < words.size() && std::isspace(static_cast<unsigned char>(words[next]))) ++next;
    if (starts && had_space && words.compare(next, 2, "by") == 0 &&
        (next + 2 == words.size() || !is_word(words[next + 2]))) {
      return true;
    }
    pos += 5;
  }
  return false;
}

}  // namespace paraprobe
