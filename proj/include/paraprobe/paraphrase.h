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

#ifndef PARAPROBE_PARAPHRASE_H_
#define PARAPROBE_PARAPHRASE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paraprobe/ingest.h"
#include "paraprobe/text_gen_client.h"

namespace paraprobe {

struct GenConfig {
  int num_queries = 10;
  double temperature = 1.0;
  std::string model_id;
  int max_attempts = 3;
};

void ValidateGenConfig(const GenConfig& config);

struct ParaphraseSet {
  std::string example_id;
  std::vector<std::string> candidates;  // generation order
  std::string generator_model;
  int shortfall = 0;
  int attempts = 0;

  bool operator==(const ParaphraseSet&) const = default;
};

// The versioned paraphrase prompt template with its three placeholders.
std::string_view ParaphrasePromptTemplate();

// Substitutes {num_queries}, {schema_definitions} and {sql_query}. For
// dialogue examples the schema block is preceded by
//   "Dialogue context:\n<turn 1>\n...\n<turn k>\n\n".
std::string BuildPrompt(const Example& example, const GenConfig& config);

// Extracts "<k>. <question>" lines with strictly increasing k <= expected.
// Text before, between and after the list is ignored. Throws Error(kParse)
// carrying the raw reply when nothing parses.
std::vector<std::string> ParseNumberedList(std::string_view raw, int expected);

// Inverse of ParseNumberedList for well-formed lists.
std::string RenderNumberedList(std::span<const std::string> items);

// Case- and whitespace-insensitive key used for duplicate removal.
std::string DedupKey(std::string_view text);

// Prompts the client, retrying on transport errors, unparsable replies and
// shortfalls up to max_attempts, and merges distinct candidates across
// attempts. Throws Error(kGeneration) when no attempt produced a candidate.
ParaphraseSet GenerateParaphrases(const Example& example, TextGenClient& client,
                                  const GenConfig& config);

}  // namespace paraprobe

#endif  // PARAPROBE_PARAPHRASE_H_
