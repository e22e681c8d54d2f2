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

#include "paraprobe/embed_client.h"

#include <cstdint>

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/semantic_filter.h"
#include "paraprobe/text_util.h"

namespace paraprobe {
namespace {

uint64_t Fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

HashingEmbedClient::HashingEmbedClient(int dimension, std::string model_id)
    : dimension_(dimension), model_id_(std::move(model_id)) {
  if (dimension_ < 1) throw Error(ErrorKind::kConfig, "embedding dimension must be positive");
}

std::vector<Embedding> HashingEmbedClient::Embed(std::span<const std::string> texts) {
  CountCall();
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    Embedding v(dimension_, 0.0);
    for (const std::string& token : Tokenize(text)) {
      v[Fnv1a(token) % static_cast<uint64_t>(dimension_)] += 1.0;
    }
    out.push_back(std::move(v));
  }
  return out;
}

FixtureEmbedClient::FixtureEmbedClient(std::map<std::string, Embedding> table,
                                       std::string model_id)
    : table_(std::move(table)), model_id_(std::move(model_id)) {}

std::unique_ptr<FixtureEmbedClient> FixtureEmbedClient::FromFile(
    const std::filesystem::path& path, std::string model_id) {
  const auto doc = nlohmann::json::parse(ReadFile(path));
  std::map<std::string, Embedding> table;
  for (const auto& [text, vec] : doc.items()) table[text] = vec.get<Embedding>();
  return std::make_unique<FixtureEmbedClient>(std::move(table), std::move(model_id));
}

std::vector<Embedding> FixtureEmbedClient::Embed(std::span<const std::string> texts) {
  CountCall();
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    const auto it = table_.find(text);
    if (it == table_.end()) {
      throw Error(ErrorKind::kFilter, fmt::format("no recorded embedding for '{}'", text));
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace paraprobe
