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

#include "paraprobe/paraphrase.h"

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"
#include "reference_prompt.h"

namespace paraprobe {
namespace {

using testing::kReferenceTemplate;

Example SingerExample() {
  return Example{.id = "ex-1",
                 .db_id = "concert_singer",
                 .question = "How many singers do we have?",
                 .gold_sql = "SELECT count(*) FROM singer",
                 .schema_text = "CREATE TABLE singer (\n\t\"Singer_ID\" INTEGER\n)"};
}

std::string ReferencePrompt(int n, const std::string& schema, const std::string& sql) {
  std::string out = kReferenceTemplate;
  ReplaceAll(out, "{num_queries}", std::to_string(n));
  // The schema and SQL of these tests contain no braces, so sequential
  // replacement is safe here.
  ReplaceAll(out, "{schema_definitions}", schema);
  ReplaceAll(out, "{sql_query}", sql);
  return out;
}

TEST(PromptTest, TemplateAssetMatchesReference) {
  EXPECT_EQ(ParaphrasePromptTemplate(), kReferenceTemplate);
}

TEST(PromptTest, SubstitutesOnlyThePlaceholders) {
  const Example ex = SingerExample();
  const std::string prompt = BuildPrompt(ex, GenConfig{.num_queries = 10});
  EXPECT_EQ(prompt, ReferencePrompt(10, ex.schema_text, ex.gold_sql));
  EXPECT_NE(prompt.find("Output Format:\n1. <First question>"), std::string::npos);
  EXPECT_NE(prompt.find("\n10. <Nth question>."), std::string::npos);
  EXPECT_EQ(prompt, BuildPrompt(ex, GenConfig{.num_queries = 10}));
}

TEST(PromptTest, SingleQuery) {
  const std::string prompt = BuildPrompt(SingerExample(), GenConfig{.num_queries = 1});
  EXPECT_NE(prompt.find("generate 1 distinct natural language questions"), std::string::npos);
}

TEST(PromptTest, DialogueContextPrecedesSchema) {
  Example ex = SingerExample();
  ex.context_turns = {"Which singers are from France?", "How old are they?"};
  const std::string expected_schema =
      "Dialogue context:\nWhich singers are from France?\nHow old are they?\n\n" + ex.schema_text;
  EXPECT_EQ(BuildPrompt(ex, GenConfig{.num_queries = 10}),
            ReferencePrompt(10, expected_schema, ex.gold_sql));
}

TEST(PromptTest, SubstitutedTextIsNotReexpanded) {
  Example ex = SingerExample();
  ex.gold_sql = "SELECT '{num_queries}' FROM singer";
  const std::string prompt = BuildPrompt(ex, GenConfig{.num_queries = 3});
  EXPECT_NE(prompt.find("SQL Query:\nSELECT '{num_queries}' FROM singer\n"), std::string::npos);
}

TEST(ParseNumberedListTest, BasicList) {
  EXPECT_EQ(ParseNumberedList("1. How many singers are there?\n2. Count the singers.", 2),
            (std::vector<std::string>{"How many singers are there?", "Count the singers."}));
}

TEST(ParseNumberedListTest, EmptyReplyIsAParseError) {
  try {
    ParseNumberedList("", 10);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
  }
  EXPECT_THROW(ParseNumberedList("Sure! I cannot help with that.", 3), Error);
}

TEST(ParseNumberedListTest, ShortListAndSurroundingProse) {
  std::string raw = "Here are the questions:\n\n";
  for (int k = 1; k <= 8; ++k) raw += "  " + std::to_string(k) + ". Question " + std::to_string(k) + "  \n";
  raw += "\nI hope these help. 9.5 is not an item.\n";
  const auto items = ParseNumberedList(raw, 10);
  ASSERT_EQ(items.size(), 8u);
  EXPECT_EQ(items.front(), "Question 1");
  EXPECT_EQ(items.back(), "Question 8");
}

TEST(ParseNumberedListTest, StopsAtExpectedAndSkipsOutOfOrder) {
  EXPECT_EQ(ParseNumberedList("1. a\n3. c\n2. b\n4. d\n5. e", 4),
            (std::vector<std::string>{"a", "c", "d"}));
}

TEST(ParseNumberedListTest, RenderRoundTrip) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> count(1, 12);
  std::uniform_int_distribution<int> word(0, 5);
  const std::vector<std::string> words = {"how", "many", "singers?", "list", "3.5", "all"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> items(count(rng));
    for (std::string& item : items) {
      const int len = 1 + word(rng);
      for (int w = 0; w < len; ++w) item += (w ? " " : "") + words[word(rng)];
    }
    EXPECT_EQ(ParseNumberedList(RenderNumberedList(items), static_cast<int>(items.size())),
              items);
  }
}

std::string TenLines(const std::string& stem) {
  std::vector<std::string> items;
  for (int k = 1; k <= 10; ++k) items.push_back(stem + " " + std::to_string(k) + "?");
  return RenderNumberedList(items);
}

TEST(GenerateTest, FixedTenLineReply) {
  ScriptedTextGenClient client("gen", {{"SQL Query:", {{TenLines("q"), false}}}});
  const ParaphraseSet set = GenerateParaphrases(SingerExample(), client, GenConfig{});
  EXPECT_EQ(set.candidates.size(), 10u);
  EXPECT_EQ(set.shortfall, 0);
  EXPECT_EQ(set.generator_model, "gen");
  EXPECT_EQ(set.attempts, 1);
  EXPECT_EQ(client.calls(), 1);
}

TEST(GenerateTest, CaseInsensitiveDuplicatesCountAsShortfall) {
  ScriptedTextGenClient client(
      "gen", {{"SQL Query:", {{"1. X\n2. x\n3.  X \n4. Y", false}}}});
  const ParaphraseSet set =
      GenerateParaphrases(SingerExample(), client, GenConfig{.num_queries = 4, .max_attempts = 2});
  EXPECT_EQ(set.candidates, (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(set.shortfall, 2);
  EXPECT_EQ(set.attempts, 2);
}

TEST(GenerateTest, RetriesMergeNewCandidates) {
  ScriptedTextGenClient client("gen", {{"SQL Query:",
                                        {{"1. A\n2. B", false}, {"1. b\n2. C\n3. D", false}}}});
  const ParaphraseSet set =
      GenerateParaphrases(SingerExample(), client, GenConfig{.num_queries = 3, .max_attempts = 3});
  EXPECT_EQ(set.candidates, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(set.shortfall, 0);
  EXPECT_EQ(client.calls(), 2);
}

TEST(GenerateTest, TransientFailuresThenSuccess) {
  ScriptedTextGenClient client("gen", {{"SQL Query:",
                                        {{"timeout", true}, {"503", true}, {TenLines("q"), false}}}});
  const ParaphraseSet set =
      GenerateParaphrases(SingerExample(), client, GenConfig{.max_attempts = 3});
  EXPECT_EQ(set.candidates.size(), 10u);
  EXPECT_EQ(set.attempts, 3);
}

TEST(GenerateTest, ExhaustedAttemptsIsAGenerationError) {
  ScriptedTextGenClient client("gen", {{"SQL Query:", {{"timeout", true}, {"no list", false}}}});
  try {
    GenerateParaphrases(SingerExample(), client, GenConfig{.max_attempts = 3});
    FAIL() << "expected a generation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kGeneration);
  }
  EXPECT_EQ(client.calls(), 3);
}

TEST(GenerateTest, NeverMoreThanRequested) {
  ScriptedTextGenClient client("gen", {{"SQL Query:", {{TenLines("q"), false}}}});
  for (int n = 1; n <= 12; ++n) {
    const ParaphraseSet set =
        GenerateParaphrases(SingerExample(), client, GenConfig{.num_queries = n});
    EXPECT_LE(static_cast<int>(set.candidates.size()), n);
    EXPECT_EQ(set.shortfall, n - static_cast<int>(set.candidates.size()));
  }
}

TEST(GenerateTest, RequestCarriesTemperature) {
  class Recorder : public TextGenClient {
   public:
    std::string model_id() const override { return "rec"; }
    double temperature() const override { return 1.0; }
    std::string Complete(const ChatRequest& request) override {
      seen = request.temperature;
      return "1. a";
    }
    std::optional<double> seen;
  } client;
  GenerateParaphrases(SingerExample(), client, GenConfig{.num_queries = 1, .temperature = 0.0});
  ASSERT_TRUE(client.seen.has_value());
  EXPECT_EQ(*client.seen, 0.0);
}

}  // namespace
}  // namespace paraprobe
