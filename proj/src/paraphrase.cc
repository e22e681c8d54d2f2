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

#include <cctype>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"
#include "paraprobe/prompt_assets.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

void ValidateGenConfig(const GenConfig& config) {
  if (config.num_queries < 1) throw Error(ErrorKind::kConfig, "num_queries must be >= 1");
  if (config.max_attempts < 1) throw Error(ErrorKind::kConfig, "max_attempts must be >= 1");
  if (!(config.temperature >= 0.0)) throw Error(ErrorKind::kConfig, "temperature must be >= 0");
}

std::string_view ParaphrasePromptTemplate() { return assets::kParaphrasePrompt; }

std::string BuildPrompt(const Example& example, const GenConfig& config) {
  std::string schema;
  if (!example.context_turns.empty()) {
    schema = "Dialogue context:\n";
    for (const std::string& turn : example.context_turns) schema += turn + "\n";
    schema += "\n";
  }
  schema += example.schema_text;
  return FillTemplate(ParaphrasePromptTemplate(),
                      {{"num_queries", std::to_string(config.num_queries)},
                       {"schema_definitions", schema},
                       {"sql_query", example.gold_sql}});
}

std::vector<std::string> ParseNumberedList(std::string_view raw, int expected) {
  if (expected < 1) throw Error(ErrorKind::kConfig, "expected count must be >= 1");
  std::vector<std::string> items;
  int last = 0;
  for (std::string_view line : SplitLines(raw)) {
    line = StripAscii(line);
    size_t digits = 0;
    while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits]))) {
      ++digits;
    }
    if (digits == 0 || digits > 4 || digits >= line.size() || line[digits] != '.') continue;
    const int k = std::stoi(std::string(line.substr(0, digits)));
    const std::string_view body = StripAscii(line.substr(digits + 1));
    if (body.empty() || k <= last || k > expected) continue;
    // "1.5 million" style prose has no space after the dot.
    if (digits + 1 < line.size() && line[digits + 1] != ' ' && line[digits + 1] != '\t') {
      continue;
    }
    items.emplace_back(body);
    last = k;
    if (k == expected) break;
  }
  if (items.empty()) {
    throw Error(ErrorKind::kParse,
                fmt::format("no numbered items in reply: \"{}\"", raw));
  }
  return items;
}

std::string RenderNumberedList(std::span<const std::string> items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += '\n';
    out += fmt::format("{}. {}", i + 1, items[i]);
  }
  return out;
}

std::string DedupKey(std::string_view text) {
  std::string key;
  bool pending_space = false;
  for (char c : StripAscii(text)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space) key += ' ';
    pending_space = false;
    key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return key;
}

ParaphraseSet GenerateParaphrases(const Example& example, TextGenClient& client,
                                  const GenConfig& config) {
  ValidateGenConfig(config);
  ParaphraseSet out;
  out.example_id = example.id;
  out.generator_model = client.model_id();
  const ChatRequest request{.user = BuildPrompt(example, config),
                            .temperature = config.temperature};
  std::set<std::string> seen;
  std::string last_error;
  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    out.attempts = attempt;
    std::vector<std::string> parsed;
    try {
      parsed = ParseNumberedList(client.Complete(request), config.num_queries);
    } catch (const Error& e) {
      last_error = e.what();
      spdlog::warn("{}: generation attempt {} failed: {}", example.id, attempt, last_error);
      continue;
    }
    for (std::string& p : parsed) {
      if (static_cast<int>(out.candidates.size()) >= config.num_queries) break;
      if (seen.insert(DedupKey(p)).second) out.candidates.push_back(std::move(p));
    }
    if (static_cast<int>(out.candidates.size()) >= config.num_queries) break;
  }
  if (out.candidates.empty()) {
    throw Error(ErrorKind::kGeneration,
                fmt::format("{}: no paraphrases after {} attempts: {}", example.id,
                            config.max_attempts, last_error));
  }
  out.shortfall = config.num_queries - static_cast<int>(out.candidates.size());
  return out;
}

}  // namespace paraprobe
