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

#include <unistd.h>

#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"

namespace paraprobe {
namespace {

namespace fs = std::filesystem;

const fs::path kData = PARAPROBE_TEST_DATA_DIR;
const fs::path kSpider = kData / "bench_spider";
const fs::path kDb = kSpider / "database" / "concert_singer" / "concert_singer.sqlite";

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("paraprobe_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

  void AddDatabase(const std::string& root, const std::string& db_id) const {
    const fs::path dir = path_ / root / db_id;
    fs::create_directories(dir);
    fs::copy_file(kDb, dir / (db_id + ".sqlite"));
  }

 private:
  fs::path path_;
};

TEST(IngestTest, SpiderDevSet) {
  const Benchmark b = LoadBenchmark(kSpider, BenchmarkFormat::kSpider);
  EXPECT_EQ(b.name, "spider");
  EXPECT_EQ(b.release_tag, "spider-dev");
  ASSERT_EQ(b.examples.size(), 12u);
  const Example& first = b.examples.front();
  EXPECT_EQ(first.id, "spider-dev-0000");
  EXPECT_EQ(first.question, "How many singers do we have?");
  EXPECT_EQ(first.gold_sql, "SELECT count(*) FROM singer");
  EXPECT_TRUE(first.context_turns.empty());
  EXPECT_NE(first.schema_text.find("CREATE TABLE singer"), std::string::npos);
  for (const Example& ex : b.examples) EXPECT_TRUE(fs::exists(b.DatabasePath(ex.db_id)));
}

TEST(IngestTest, LoadingTwiceIsIdentical) {
  const Benchmark a = LoadBenchmark(kSpider, BenchmarkFormat::kSpider);
  const Benchmark b = LoadBenchmark(kSpider, BenchmarkFormat::kSpider);
  EXPECT_EQ(a.examples, b.examples);
}

TEST(IngestTest, EmptyDevFileGivesNoExamples) {
  ScratchDir dir("ingest_empty");
  WriteFile(dir.path() / "dev.json", "[]");
  EXPECT_TRUE(LoadBenchmark(dir.path(), BenchmarkFormat::kSpider).examples.empty());
  WriteFile(dir.path() / "dev.json", "");
  EXPECT_TRUE(LoadBenchmark(dir.path(), BenchmarkFormat::kSpider).examples.empty());
}

TEST(IngestTest, MissingAndGarbledDevFilesNameTheFile) {
  ScratchDir dir("ingest_bad");
  try {
    LoadBenchmark(dir.path(), BenchmarkFormat::kSpider);
    FAIL() << "expected an ingest error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIngest);
    EXPECT_NE(std::string(e.what()).find("dev.json"), std::string::npos);
  }
  WriteFile(dir.path() / "dev.json", "[{\"db_id\": ");
  try {
    LoadBenchmark(dir.path(), BenchmarkFormat::kSpider);
    FAIL() << "expected an ingest error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIngest);
    EXPECT_NE(std::string(e.what()).find("dev.json"), std::string::npos);
  }
}

TEST(IngestTest, ExampleWithMissingDatabaseIsSkipped) {
  ScratchDir dir("ingest_missing_db");
  dir.AddDatabase("database", "concert_singer");
  WriteFile(dir.path() / "dev.json", R"([
    {"db_id": "concert_singer", "query": "SELECT 1", "question": "one?"},
    {"db_id": "no_such_db", "query": "SELECT 2", "question": "two?"},
    {"db_id": "concert_singer", "query": "SELECT 3", "question": "three?"}
  ])");
  const Benchmark b = LoadBenchmark(dir.path(), BenchmarkFormat::kSpider);
  ASSERT_EQ(b.examples.size(), 2u);
  EXPECT_EQ(b.examples[0].id, "spider-dev-0000");
  EXPECT_EQ(b.examples[1].id, "spider-dev-0002");
}

TEST(IngestTest, BirdEvidenceIsAppendedToSchema) {
  ScratchDir dir("ingest_bird");
  dir.AddDatabase("dev_databases", "concert_singer");
  WriteFile(dir.path() / "dev.json", R"json([
    {"question_id": 7, "db_id": "concert_singer", "question": "Oldest singer?",
     "evidence": "oldest refers to MAX(Age)", "SQL": "SELECT Name FROM singer ORDER BY Age DESC LIMIT 1",
     "difficulty": "simple"},
    {"question_id": 8, "db_id": "concert_singer", "question": "Count stadiums.",
     "evidence": "", "SQL": "SELECT count(*) FROM stadium", "difficulty": "simple"}
  ])json");
  const Benchmark b = LoadBenchmark(dir.path(), BenchmarkFormat::kBird);
  ASSERT_EQ(b.examples.size(), 2u);
  EXPECT_EQ(b.examples[0].id, "bird-dev-7");
  EXPECT_EQ(b.examples[0].gold_sql, "SELECT Name FROM singer ORDER BY Age DESC LIMIT 1");
  const std::string& schema = b.examples[0].schema_text;
  const std::string tail = "\n\nEvidence:\noldest refers to MAX(Age)";
  ASSERT_GT(schema.size(), tail.size());
  EXPECT_EQ(schema.substr(schema.size() - tail.size()), tail);
  EXPECT_EQ(b.examples[1].schema_text.find("Evidence:"), std::string::npos);
}

TEST(IngestTest, DialoguesAskTheFinalTurn) {
  ScratchDir dir("ingest_cosql");
  dir.AddDatabase("database", "concert_singer");
  WriteFile(dir.path() / "sql_state_tracking" / "cosql_dev.json", R"([
    {"database_id": "concert_singer", "interaction": [
      {"utterance": "Which singers are from France?", "query": "SELECT Name FROM singer WHERE Country = 'France'"},
      {"utterance": "How old are they?", "query": "SELECT Name, Age FROM singer WHERE Country = 'France'"},
      {"utterance": "Who is the oldest?", "query": "SELECT Name FROM singer WHERE Country = 'France' ORDER BY Age DESC LIMIT 1"}
    ]}
  ])");
  const Benchmark b = LoadBenchmark(dir.path(), BenchmarkFormat::kCosql);
  ASSERT_EQ(b.examples.size(), 1u);
  const Example& ex = b.examples[0];
  EXPECT_EQ(ex.question, "Who is the oldest?");
  EXPECT_EQ(ex.context_turns,
            (std::vector<std::string>{"Which singers are from France?", "How old are they?"}));
  EXPECT_EQ(ex.gold_sql,
            "SELECT Name FROM singer WHERE Country = 'France' ORDER BY Age DESC LIMIT 1");
}

TEST(IngestTest, SparcUsesTopLevelDevFile) {
  ScratchDir dir("ingest_sparc");
  dir.AddDatabase("database", "concert_singer");
  WriteFile(dir.path() / "dev.json", R"([
    {"database_id": "concert_singer", "interaction": [
      {"utterance": "List all stadiums.", "query": "SELECT Name FROM stadium"}
    ], "final": {"utterance": "List all stadiums.", "query": "SELECT Name FROM stadium"}}
  ])");
  const Benchmark b = LoadBenchmark(dir.path(), BenchmarkFormat::kSparc);
  ASSERT_EQ(b.examples.size(), 1u);
  EXPECT_TRUE(b.examples[0].context_turns.empty());
  EXPECT_EQ(b.examples[0].question, "List all stadiums.");
}

TEST(RenderSchemaTest, ListingStyleWithSampleRows) {
  const std::string schema = RenderSchema(kDb, 3);
  EXPECT_EQ(schema.rfind("CREATE TABLE singer (\n\t\"Singer_ID\" INTEGER, \n", 0), 0u);
  EXPECT_NE(schema.find("/*\n3 rows from singer table:\n"
                        "Singer_ID\tName\tCountry\tSong_Name\tSong_release_year\tAge\tIs_male\n"
                        "1\tJoe Sharp\tNetherlands\tYou\t1992\t52\tTrue\n"),
            std::string::npos);
  EXPECT_NE(schema.find("\n*/\n\n\nCREATE TABLE stadium ("), std::string::npos);
  for (const std::string& table : ListTables(kDb)) {
    EXPECT_NE(schema.find("CREATE TABLE " + table), std::string::npos) << table;
    EXPECT_NE(schema.find("3 rows from " + table + " table:"), std::string::npos) << table;
  }
  EXPECT_EQ(schema.substr(schema.size() - 3), "\n*/");
}

TEST(RenderSchemaTest, ZeroRowsAndDeterminism) {
  const std::string bare = RenderSchema(kDb, 0);
  EXPECT_EQ(bare.find("/*"), std::string::npos);
  EXPECT_NE(bare.find("CREATE TABLE singer_in_concert"), std::string::npos);
  EXPECT_EQ(RenderSchema(kDb, 3), RenderSchema(kDb, 3));
  EXPECT_EQ(ListTables(kDb),
            (std::vector<std::string>{"singer", "stadium", "concert", "singer_in_concert"}));
}

TEST(RenderSchemaTest, CorruptDatabaseIsASchemaError) {
  ScratchDir dir("schema_corrupt");
  WriteFile(dir.path() / "bad.sqlite", "this is not a database file at all, not even close");
  try {
    RenderSchema(dir.path() / "bad.sqlite");
    FAIL() << "expected a schema error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
  }
  EXPECT_THROW(RenderSchema(dir.path() / "absent.sqlite"), Error);
}

}  // namespace
}  // namespace paraprobe
