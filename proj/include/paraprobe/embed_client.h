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

#ifndef PARAPROBE_EMBED_CLIENT_H_
#define PARAPROBE_EMBED_CLIENT_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paraprobe/text_gen_client.h"

namespace paraprobe {

using Embedding = std::vector<double>;

// Text -> vector. Implementations throw paraprobe::Error on failure.
class EmbedClient {
 public:
  virtual ~EmbedClient() = default;

  virtual std::string model_id() const = 0;
  virtual std::vector<Embedding> Embed(std::span<const std::string> texts) = 0;

  // Number of Embed() calls served so far.
  int calls() const { return calls_.load(); }

 protected:
  void CountCall() { ++calls_; }

 private:
  std::atomic<int> calls_{0};
};

// Offline, deterministic bag-of-tokens embedding: each token (as produced by
// Tokenize) is hashed into one of `dimension` buckets. Good enough to tell a
// reworded question from an unrelated one; used for tests and dry runs.
class HashingEmbedClient : public EmbedClient {
 public:
  explicit HashingEmbedClient(int dimension = 256, std::string model_id = "hashing-256");

  std::string model_id() const override { return model_id_; }
  std::vector<Embedding> Embed(std::span<const std::string> texts) override;

 private:
  int dimension_;
  std::string model_id_;
};

// Replays recorded vectors from a JSON object {"text": [numbers...], ...}.
// Unknown texts are an error.
class FixtureEmbedClient : public EmbedClient {
 public:
  FixtureEmbedClient(std::map<std::string, Embedding> table, std::string model_id);
  static std::unique_ptr<FixtureEmbedClient> FromFile(const std::filesystem::path& path,
                                                      std::string model_id);

  std::string model_id() const override { return model_id_; }
  std::vector<Embedding> Embed(std::span<const std::string> texts) override;

 private:
  std::map<std::string, Embedding> table_;
  std::string model_id_;
};

// OpenAI-compatible /v1/embeddings over HTTP(S).
std::unique_ptr<EmbedClient> MakeHttpEmbedClient(const HttpClientOptions& options);

// Builds a client from a run-config spec:
//   {"kind": "hashing", "dimension": 256}
//   {"kind": "fixture", "path": "vectors.json", "model": "e5-base-v2"}
//   {"kind": "http", "endpoint": "...", "model": "...", "api_key_env": "...",
//    "input_prefix": "query: ", "max_in_flight": 4}
// Relative paths resolve against `base_dir`.
std::unique_ptr<EmbedClient> MakeEmbedClient(const nlohmann::json& spec,
                                             const std::filesystem::path& base_dir);

}  // namespace paraprobe

#endif  // PARAPROBE_EMBED_CLIENT_H_
