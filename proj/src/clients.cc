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

#include "paraprobe/text_gen_client.h"

#include <cstdlib>
#include <utility>

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/semantic_filter.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

ScriptedTextGenClient::ScriptedTextGenClient(std::string model_id, std::vector<Rule> rules,
                                             std::optional<std::string> default_reply,
                                             double temperature)
    : model_id_(std::move(model_id)),
      rules_(std::move(rules)),
      cursor_(rules_.size(), 0),
      default_reply_(std::move(default_reply)),
      temperature_(temperature) {}

std::unique_ptr<ScriptedTextGenClient> ScriptedTextGenClient::FromJson(
    const nlohmann::json& script) {
  std::vector<Rule> rules;
  for (const auto& r : script.value("rules", nlohmann::json::array())) {
    Rule rule{r.at("match").get<std::string>(), {}};
    for (const auto& reply : r.at("replies")) {
      if (reply.is_string()) {
        rule.replies.push_back({reply.get<std::string>(), false});
      } else {
        rule.replies.push_back({reply.value("error", "transport error"), true});
      }
    }
    if (rule.replies.empty()) {
      throw Error(ErrorKind::kConfig, fmt::format("rule '{}' has no replies", rule.match));
    }
    rules.push_back(std::move(rule));
  }
  std::optional<std::string> fallback;
  if (script.contains("default")) fallback = script.at("default").get<std::string>();
  return std::make_unique<ScriptedTextGenClient>(script.value("model", "scripted"),
                                                 std::move(rules), std::move(fallback),
                                                 script.value("temperature", 1.0));
}

std::string ScriptedTextGenClient::Complete(const ChatRequest& request) {
  CountCall();
  std::lock_guard<std::mutex> lock(mu_);
  for (size_t i = 0; i < rules_.size(); ++i) {
    if (request.user.find(rules_[i].match) == std::string::npos) continue;
    const size_t at = std::min(cursor_[i], rules_[i].replies.size() - 1);
    ++cursor_[i];
    const Reply& reply = rules_[i].replies[at];
    if (reply.transport_error) {
      throw Error(ErrorKind::kGeneration, fmt::format("scripted failure: {}", reply.text));
    }
    return reply.text;
  }
  if (default_reply_) return *default_reply_;
  throw Error(ErrorKind::kGeneration, "no scripted reply matches the request");
}

MemorizingTextGenClient::MemorizingTextGenClient(std::string model_id,
                                                 std::vector<Entry> table,
                                                 double min_overlap, std::string fallback_sql)
    : model_id_(std::move(model_id)),
      table_(std::move(table)),
      min_overlap_(min_overlap),
      fallback_sql_(std::move(fallback_sql)) {}

std::string MemorizingTextGenClient::Complete(const ChatRequest& request) {
  CountCall();
  constexpr std::string_view kMarker = "Question: ";
  const size_t at = request.user.rfind(kMarker);
  if (at == std::string::npos) return fallback_sql_;
  const size_t begin = at + kMarker.size();
  const size_t end = request.user.find('\n', begin);
  const std::string question = request.user.substr(begin, end == std::string::npos
                                                              ? std::string::npos
                                                              : end - begin);
  double best = -1.0;
  const Entry* best_entry = nullptr;
  for (const Entry& e : table_) {
    double overlap = 0.0;
    try {
      overlap = Jaccard(question, e.question);
    } catch (const Error&) {
      continue;
    }
    if (overlap > best) {
      best = overlap;
      best_entry = &e;
    }
  }
  if (best_entry == nullptr || best < min_overlap_) return fallback_sql_;
  return fmt::format("```sql\n{}\n```", best_entry->sql);
}

std::pair<std::string, std::string> SplitEndpoint(const std::string& url) {
  const size_t scheme = url.find("://");
  const size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const size_t slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

namespace {

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

HttpClientOptions HttpOptionsFromSpec(const nlohmann::json& spec) {
  HttpClientOptions options;
  options.endpoint = spec.at("endpoint").get<std::string>();
  options.model = spec.at("model").get<std::string>();
  options.temperature = spec.value("temperature", 1.0);
  options.max_in_flight = spec.value("max_in_flight", 4);
  options.max_retries = spec.value("max_retries", 3);
  options.timeout_seconds = spec.value("timeout_seconds", 120);
  options.input_prefix = spec.value("input_prefix", "");
  if (spec.contains("api_key_env")) {
    const std::string var = spec.at("api_key_env").get<std::string>();
    const char* key = std::getenv(var.c_str());
    if (key == nullptr) {
      throw Error(ErrorKind::kConfig,
                  fmt::format("environment variable {} is not set", var));
    }
    options.api_key = key;
  }
  return options;
}

}  // namespace

std::unique_ptr<TextGenClient> MakeTextGenClient(const nlohmann::json& spec,
                                                 const std::filesystem::path& base_dir) {
  const std::string kind = spec.value("kind", "");
  if (kind == "scripted") {
    nlohmann::json script;
    if (spec.contains("script") && spec.at("script").is_object()) {
      script = spec.at("script");
    } else if (spec.contains("script")) {
      script = nlohmann::json::parse(
          ReadFile(Resolve(base_dir, spec.at("script").get<std::string>())));
    } else {
      script = spec;
    }
    if (spec.contains("model")) script["model"] = spec.at("model");
    if (spec.contains("temperature")) script["temperature"] = spec.at("temperature");
    return ScriptedTextGenClient::FromJson(script);
  }
  if (kind == "memorizer") {
    const auto table = nlohmann::json::parse(
        ReadFile(Resolve(base_dir, spec.at("table").get<std::string>())));
    std::vector<MemorizingTextGenClient::Entry> entries;
    for (const auto& e : table) {
      entries.push_back({e.at("question").get<std::string>(), e.at("sql").get<std::string>()});
    }
    return std::make_unique<MemorizingTextGenClient>(
        spec.value("model", "memorizer"), std::move(entries),
        spec.value("min_overlap", 0.5), spec.value("fallback_sql", "SELECT NULL"));
  }
  if (kind == "http") return MakeHttpChatClient(HttpOptionsFromSpec(spec));
  throw Error(ErrorKind::kConfig, fmt::format("unknown text generation client kind '{}'", kind));
}

std::unique_ptr<EmbedClient> MakeEmbedClient(const nlohmann::json& spec,
                                             const std::filesystem::path& base_dir) {
  const std::string kind = spec.value("kind", "");
  if (kind == "hashing") {
    const int dim = spec.value("dimension", 256);
    return std::make_unique<HashingEmbedClient>(
        dim, spec.value("model", fmt::format("hashing-{}", dim)));
  }
  if (kind == "fixture") {
    return FixtureEmbedClient::FromFile(Resolve(base_dir, spec.at("path").get<std::string>()),
                                        spec.value("model", "fixture"));
  }
  if (kind == "http") return MakeHttpEmbedClient(HttpOptionsFromSpec(spec));
  throw Error(ErrorKind::kConfig, fmt::format("unknown embedding client kind '{}'", kind));
}

}  // namespace paraprobe
