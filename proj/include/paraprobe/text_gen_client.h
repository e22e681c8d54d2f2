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

#ifndef PARAPROBE_TEXT_GEN_CLIENT_H_
#define PARAPROBE_TEXT_GEN_CLIENT_H_

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace paraprobe {

struct ChatRequest {
  std::string system;
  std::string user;
  // Falls back to the client's configured temperature.
  std::optional<double> temperature;
};

// Chat-style text generation: system + user text in, reply text out.
// Complete() throws Error(kGeneration) when the transport fails after the
// client's own retries. Implementations are safe to call concurrently.
class TextGenClient {
 public:
  virtual ~TextGenClient() = default;

  virtual std::string model_id() const = 0;
  virtual double temperature() const = 0;
  virtual std::string Complete(const ChatRequest& request) = 0;

  // Number of Complete() calls served so far, including failed ones.
  int calls() const { return calls_.load(); }

 protected:
  void CountCall() { ++calls_; }

 private:
  std::atomic<int> calls_{0};
};

// Replays scripted replies. The first rule whose `match` occurs in the user
// text answers; each rule walks through its replies in order and repeats the
// last one when exhausted. A reply may be a transport failure.
//
// File form:
//   {"model": "scripted-gen",
//    "rules": [{"match": "SELECT count(*) FROM singer",
//               "replies": [{"error": "timeout"}, "1. How many ...\n2. ..."]}],
//    "default": "SELECT 1"}
class ScriptedTextGenClient : public TextGenClient {
 public:
  struct Reply {
    std::string text;
    bool transport_error = false;
  };
  struct Rule {
    std::string match;
    std::vector<Reply> replies;
  };

  ScriptedTextGenClient(std::string model_id, std::vector<Rule> rules,
                        std::optional<std::string> default_reply = std::nullopt,
                        double temperature = 1.0);
  static std::unique_ptr<ScriptedTextGenClient> FromJson(const nlohmann::json& script);

  std::string model_id() const override { return model_id_; }
  double temperature() const override { return temperature_; }
  std::string Complete(const ChatRequest& request) override;

 private:
  std::string model_id_;
  std::vector<Rule> rules_;
  std::vector<size_t> cursor_;
  std::optional<std::string> default_reply_;
  double temperature_;
  std::mutex mu_;
};

// A stand-in NL2SQL model that has "memorized" a table of (question, SQL)
// pairs. It reads the question from the "Question: " line of the prompt and
// answers with the SQL of the most similar memorized question (token
// Jaccard) when the similarity reaches `min_overlap`; otherwise it answers
// `fallback_sql`. Lexically distant paraphrases therefore fail more often,
// which is the contamination signature the pipeline is built to detect.
class MemorizingTextGenClient : public TextGenClient {
 public:
  struct Entry {
    std::string question;
    std::string sql;
  };

  MemorizingTextGenClient(std::string model_id, std::vector<Entry> table,
                          double min_overlap, std::string fallback_sql);

  std::string model_id() const override { return model_id_; }
  double temperature() const override { return 0.0; }
  std::string Complete(const ChatRequest& request) override;

 private:
  std::string model_id_;
  std::vector<Entry> table_;
  double min_overlap_;
  std::string fallback_sql_;
};

// OpenAI-compatible chat completions over HTTP(S).
struct HttpClientOptions {
  std::string endpoint;  // e.g. https://host/v1/chat/completions
  std::string model;
  std::string api_key;   // resolved from the environment by the factory
  double temperature = 1.0;
  int max_in_flight = 4;
  int max_retries = 3;
  int timeout_seconds = 120;
  // Embeddings only: prepended to every input (E5 models expect "query: ").
  std::string input_prefix;
};

std::unique_ptr<TextGenClient> MakeHttpChatClient(const HttpClientOptions& options);

// Builds a client from a run-config spec:
//   {"kind": "scripted", "script": "gen_script.json"}  (or the script inline)
//   {"kind": "memorizer", "model": "...", "table": "memorized.json",
//    "min_overlap": 0.6, "fallback_sql": "SELECT NULL"}
//   {"kind": "http", "endpoint": "...", "model": "...",
//    "api_key_env": "OPENAI_API_KEY", "temperature": 1.0, "max_in_flight": 4}
// Relative paths resolve against `base_dir`.
std::unique_ptr<TextGenClient> MakeTextGenClient(const nlohmann::json& spec,
                                                 const std::filesystem::path& base_dir);

// Splits "scheme://host[:port]/path" into ("scheme://host[:port]", "/path").
std::pair<std::string, std::string> SplitEndpoint(const std::string& url);

}  // namespace paraprobe

#endif  // PARAPROBE_TEXT_GEN_CLIENT_H_
