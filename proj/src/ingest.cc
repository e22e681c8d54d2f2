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

#include "paraprobe/ingest.h"

#include <map>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"
#include "sqlite_handle.h"

namespace paraprobe {

BenchmarkFormat ParseBenchmarkFormat(std::string_view name) {
  const std::string lower = AsciiLower(name);
  if (lower == "spider") return BenchmarkFormat::kSpider;
  if (lower == "bird") return BenchmarkFormat::kBird;
  if (lower == "sparc") return BenchmarkFormat::kSparc;
  if (lower == "cosql") return BenchmarkFormat::kCosql;
  throw Error(ErrorKind::kConfig, fmt::format("unknown benchmark format '{}'", name));
}

std::string_view BenchmarkFormatName(BenchmarkFormat format) {
  switch (format) {
    case BenchmarkFormat::kSpider: return "spider";
    case BenchmarkFormat::kBird: return "bird";
    case BenchmarkFormat::kSparc: return "sparc";
    case BenchmarkFormat::kCosql: return "cosql";
  }
  return "unknown";
}

std::filesystem::path Benchmark::DatabasePath(std::string_view db_id) const {
  const std::string id(db_id);
  return db_root / id / (id + ".sqlite");
}

namespace {

using internal::OpenReadOnly;
using internal::Prepare;

// Python's str() of a SQLite value, as the sample-row listings print them.
std::string CellText(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_NULL:
      return "None";
    case SQLITE_INTEGER:
      return std::to_string(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT: {
      std::string s = fmt::format("{}", sqlite3_column_double(stmt, col));
      if (s.find_first_of(".eni") == std::string::npos) s += ".0";
      return s;
    }
    case SQLITE_BLOB:
      return fmt::format("<blob {} bytes>", sqlite3_column_bytes(stmt, col));
    default: {
      const auto* text = reinterpret_cast<const char*>(sqlite3_column_text(stmt, col));
      return text ? std::string(text) : std::string();
    }
  }
}

std::string QuoteIdentifier(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

struct TableDef {
  std::string name;
  std::string sql;
};

std::vector<TableDef> CatalogTables(sqlite3* db, const std::filesystem::path& file) {
  std::vector<TableDef> tables;
  try {
    auto stmt = Prepare(db,
                        "SELECT name, sql FROM sqlite_master WHERE type = 'table' "
                        "AND name NOT LIKE 'sqlite_%' ORDER BY rowid",
                        ErrorKind::kSchema);
    int rc;
    while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
      tables.push_back({CellText(stmt.get(), 0), CellText(stmt.get(), 1)});
    }
    if (rc != SQLITE_DONE) throw Error(ErrorKind::kSchema, sqlite3_errmsg(db));
  } catch (const Error& e) {
    throw Error(ErrorKind::kSchema,
                fmt::format("cannot read catalog of {}: {}", file.string(), e.what()));
  }
  return tables;
}

}  // namespace

std::vector<std::string> ListTables(const std::filesystem::path& db_file) {
  auto db = OpenReadOnly(db_file, ErrorKind::kSchema);
  std::vector<std::string> names;
  for (TableDef& t : CatalogTables(db.get(), db_file)) names.push_back(std::move(t.name));
  return names;
}

std::string RenderSchema(const std::filesystem::path& db_file, int sample_rows) {
  if (sample_rows < 0) throw Error(ErrorKind::kConfig, "sample_rows must be >= 0");
  auto db = OpenReadOnly(db_file, ErrorKind::kSchema);
  std::string out;
  for (const TableDef& table : CatalogTables(db.get(), db_file)) {
    if (!out.empty()) out += "\n\n\n";
    out += table.sql;
    if (sample_rows == 0) continue;
    auto stmt = Prepare(db.get(),
                        fmt::format("SELECT * FROM {} LIMIT {}", QuoteIdentifier(table.name),
                                    sample_rows),
                        ErrorKind::kSchema);
    const int ncol = sqlite3_column_count(stmt.get());
    out += fmt::format("\n/*\n{} rows from {} table:\n", sample_rows, table.name);
    for (int c = 0; c < ncol; ++c) {
      if (c > 0) out += '\t';
      out += sqlite3_column_name(stmt.get(), c);
    }
    int rc;
    while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
      out += '\n';
      for (int c = 0; c < ncol; ++c) {
        if (c > 0) out += '\t';
        out += CellText(stmt.get(), c);
      }
    }
    if (rc != SQLITE_DONE) {
      throw Error(ErrorKind::kSchema, fmt::format("reading {} from {}: {}", table.name,
                                                  db_file.string(), sqlite3_errmsg(db.get())));
    }
    out += "\n*/";
  }
  return out;
}

namespace {

nlohmann::json ReadDevFile(const std::filesystem::path& dir,
                           const std::vector<std::string>& candidates,
                           std::filesystem::path& used) {
  for (const std::string& c : candidates) {
    const std::filesystem::path p = dir / c;
    if (!std::filesystem::is_regular_file(p)) continue;
    used = p;
    std::string text;
    try {
      text = ReadFile(p);
    } catch (const Error& e) {
      throw Error(ErrorKind::kIngest, e.what());
    }
    if (StripAscii(text).empty()) return nlohmann::json::array();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kIngest,
                  fmt::format("garbled dev file {}: {}", p.string(), e.what()));
    }
    if (!doc.is_array()) {
      throw Error(ErrorKind::kIngest,
                  fmt::format("dev file {} is not a JSON array", p.string()));
    }
    return doc;
  }
  throw Error(ErrorKind::kIngest, fmt::format("no dev file ({}) in {}",
                                              fmt::join(candidates, " or "), dir.string()));
}

std::string RequiredString(const nlohmann::json& record, const char* key,
                           const std::filesystem::path& file, size_t index) {
  const auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw Error(ErrorKind::kIngest, fmt::format("{}: record {} lacks string field '{}'",
                                                file.string(), index, key));
  }
  return it->get<std::string>();
}

// Raw example before database resolution; evidence is BIRD-only.
struct RawExample {
  Example example;
  std::string evidence;
};

std::vector<RawExample> ParseSingleTurn(const nlohmann::json& doc, BenchmarkFormat format,
                                        const std::string& tag,
                                        const std::filesystem::path& file) {
  const bool bird = format == BenchmarkFormat::kBird;
  std::vector<RawExample> out;
  for (size_t i = 0; i < doc.size(); ++i) {
    const nlohmann::json& r = doc[i];
    RawExample raw;
    Example& ex = raw.example;
    ex.db_id = RequiredString(r, "db_id", file, i);
    ex.question = std::string(StripAscii(RequiredString(r, "question", file, i)));
    ex.gold_sql = std::string(StripAscii(RequiredString(r, bird ? "SQL" : "query", file, i)));
    if (bird && r.contains("question_id")) {
      ex.id = fmt::format("{}-{}", tag, r.at("question_id").dump());
    } else {
      ex.id = fmt::format("{}-{:04d}", tag, i);
    }
    if (bird) raw.evidence = std::string(StripAscii(r.value("evidence", "")));
    out.push_back(std::move(raw));
  }
  return out;
}

std::vector<RawExample> ParseDialogues(const nlohmann::json& doc, const std::string& tag,
                                       const std::filesystem::path& file) {
  std::vector<RawExample> out;
  for (size_t i = 0; i < doc.size(); ++i) {
    const nlohmann::json& r = doc[i];
    RawExample raw;
    Example& ex = raw.example;
    ex.id = fmt::format("{}-{:04d}", tag, i);
    ex.db_id = RequiredString(r, "database_id", file, i);
    const auto turns = r.find("interaction");
    if (turns == r.end() || !turns->is_array() || turns->empty()) {
      throw Error(ErrorKind::kIngest,
                  fmt::format("{}: dialogue {} has no interaction turns", file.string(), i));
    }
    for (size_t t = 0; t < turns->size(); ++t) {
      const nlohmann::json& turn = (*turns)[t];
      std::string utterance(StripAscii(RequiredString(turn, "utterance", file, i)));
      if (t + 1 < turns->size()) {
        ex.context_turns.push_back(std::move(utterance));
      } else {
        ex.question = std::move(utterance);
        ex.gold_sql = std::string(StripAscii(RequiredString(turn, "query", file, i)));
      }
    }
    out.push_back(std::move(raw));
  }
  return out;
}

}  // namespace

Benchmark LoadBenchmark(const std::filesystem::path& dir, BenchmarkFormat format,
                        const IngestOptions& options) {
  Benchmark bench;
  bench.name = std::string(BenchmarkFormatName(format));
  bench.release_tag = bench.name + "-dev";

  std::vector<std::string> dev_files = {"dev.json"};
  bench.db_root = dir / "database";
  if (format == BenchmarkFormat::kBird) {
    dev_files.push_back("dev/dev.json");
    bench.db_root = dir / "dev_databases";
    if (!std::filesystem::is_directory(bench.db_root) &&
        std::filesystem::is_directory(dir / "dev" / "dev_databases")) {
      bench.db_root = dir / "dev" / "dev_databases";
    }
  } else if (format == BenchmarkFormat::kCosql) {
    dev_files = {"sql_state_tracking/cosql_dev.json", "cosql_dev.json"};
  }

  std::filesystem::path file;
  const nlohmann::json doc = ReadDevFile(dir, dev_files, file);
  std::vector<RawExample> raws =
      (format == BenchmarkFormat::kSparc || format == BenchmarkFormat::kCosql)
          ? ParseDialogues(doc, bench.release_tag, file)
          : ParseSingleTurn(doc, format, bench.release_tag, file);

  std::map<std::string, std::string> schemas;
  std::map<std::string, bool> seen_ids;
  for (RawExample& raw : raws) {
    Example& ex = raw.example;
    if (options.limit && static_cast<int>(bench.examples.size()) >= *options.limit) break;
    if (ex.question.empty() || ex.gold_sql.empty()) {
      spdlog::warn("{}: skipping {} with empty question or gold SQL", file.string(), ex.id);
      continue;
    }
    if (seen_ids[ex.id]) {
      throw Error(ErrorKind::kIngest, fmt::format("{}: duplicate example id {}",
                                                  file.string(), ex.id));
    }
    seen_ids[ex.id] = true;
    auto schema = schemas.find(ex.db_id);
    if (schema == schemas.end()) {
      const std::filesystem::path db_file = bench.DatabasePath(ex.db_id);
      if (!std::filesystem::is_regular_file(db_file)) {
        spdlog::warn("skipping {}: database {} not found at {}", ex.id, ex.db_id,
                     db_file.string());
        continue;
      }
      std::string rendered;
      try {
        rendered = RenderSchema(db_file, options.sample_rows);
      } catch (const Error& e) {
        spdlog::warn("skipping {}: schema of {} unreadable: {}", ex.id, ex.db_id, e.what());
        continue;
      }
      schema = schemas.emplace(ex.db_id, std::move(rendered)).first;
    }
    ex.schema_text = schema->second;
    if (!raw.evidence.empty()) ex.schema_text += "\n\nEvidence:\n" + raw.evidence;
    bench.examples.push_back(std::move(ex));
  }
  spdlog::info("loaded {} examples from {}", bench.examples.size(), file.string());
  return bench;
}

}  // namespace paraprobe
