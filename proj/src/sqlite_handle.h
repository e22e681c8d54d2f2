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

// Small RAII layer over the SQLite C API shared by schema rendering and query
// execution. Internal to the library.

#ifndef PARAPROBE_SRC_SQLITE_HANDLE_H_
#define PARAPROBE_SRC_SQLITE_HANDLE_H_

#include <sqlite3.h>

#include <filesystem>
#include <memory>
#include <string>

#include <fmt/format.h>

#include "paraprobe/errors.h"

namespace paraprobe::internal {

struct SqliteCloser {
  void operator()(sqlite3* db) const { sqlite3_close_v2(db); }
};
struct StmtFinalizer {
  void operator()(sqlite3_stmt* stmt) const { sqlite3_finalize(stmt); }
};

using SqliteDb = std::unique_ptr<sqlite3, SqliteCloser>;
using SqliteStmt = std::unique_ptr<sqlite3_stmt, StmtFinalizer>;

// Opens `path` read-only. The file must already exist; SQLite would
// otherwise happily report an empty database.
inline SqliteDb OpenReadOnly(const std::filesystem::path& path, ErrorKind kind) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(kind, fmt::format("database file {} does not exist", path.string()));
  }
  sqlite3* raw = nullptr;
  const int rc = sqlite3_open_v2(path.string().c_str(), &raw,
                                 SQLITE_OPEN_READONLY | SQLITE_OPEN_NOMUTEX, nullptr);
  SqliteDb db(raw);
  if (rc != SQLITE_OK) {
    throw Error(kind, fmt::format("cannot open {}: {}", path.string(),
                                  raw ? sqlite3_errmsg(raw) : sqlite3_errstr(rc)));
  }
  return db;
}

inline SqliteStmt Prepare(sqlite3* db, const std::string& sql, ErrorKind kind,
                          const char** tail = nullptr) {
  sqlite3_stmt* raw = nullptr;
  const int rc = sqlite3_prepare_v2(db, sql.c_str(), static_cast<int>(sql.size()), &raw, tail);
  SqliteStmt stmt(raw);
  if (rc != SQLITE_OK) throw Error(kind, sqlite3_errmsg(db));
  return stmt;
}

}  // namespace paraprobe::internal

#endif  // PARAPROBE_SRC_SQLITE_HANDLE_H_
