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

#ifndef PARAPROBE_INGEST_H_
#define PARAPROBE_INGEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace paraprobe {

enum class BenchmarkFormat { kSpider, kBird, kSparc, kCosql };

BenchmarkFormat ParseBenchmarkFormat(std::string_view name);
std::string_view BenchmarkFormatName(BenchmarkFormat format);

struct Example {
  std::string id;
  std::string db_id;
  std::string question;                    // final user utterance
  std::vector<std::string> context_turns;  // earlier turns, oldest first
  std::string gold_sql;
  std::string schema_text;

  bool operator==(const Example&) const = default;
};

struct Benchmark {
  std::string name;
  std::string release_tag;  // e.g. "spider-dev"
  std::vector<Example> examples;
  std::filesystem::path db_root;

  // Path of the SQLite file for `db_id` under db_root.
  std::filesystem::path DatabasePath(std::string_view db_id) const;
};

struct IngestOptions {
  int sample_rows = 3;
  // Optional cap on the number of examples, applied after loading.
  std::optional<int> limit;
};

// Loads a benchmark development split from its standard directory layout:
//   spider: dev.json + database/<db>/<db>.sqlite
//   bird:   dev.json (or dev/dev.json) + dev_databases/<db>/<db>.sqlite
//   sparc:  dev.json + database/<db>/<db>.sqlite
//   cosql:  sql_state_tracking/cosql_dev.json (or cosql_dev.json) + database/
// Multi-turn sources yield one Example per dialogue, asking its final turn.
// A missing or garbled dev file throws Error(kIngest); examples whose
// database is missing are skipped with a warning.
Benchmark LoadBenchmark(const std::filesystem::path& dir, BenchmarkFormat format,
                        const IngestOptions& options = {});

// Renders CREATE TABLE statements followed by a "/* N rows from T table: */"
// block per table, tables separated by two blank lines. sample_rows = 0
// omits the row blocks. Throws Error(kSchema) on unreadable databases.
std::string RenderSchema(const std::filesystem::path& db_file, int sample_rows = 3);

// Table names from the database catalog, in catalog order.
std::vector<std::string> ListTables(const std::filesystem::path& db_file);

}  // namespace paraprobe

#endif  // PARAPROBE_INGEST_H_
