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

// OpenAI-compatible HTTP backends for the text generation and embedding
// client interfaces.

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <chrono>
#include <semaphore>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "paraprobe/embed_client.h"
#include "paraprobe/errors.h"
#include "paraprobe/text_gen_client.h"

namespace paraprobe {
namespace {

constexpr std::ptrdiff_t kMaxInFlight = 256;

// Posts JSON with bounded concurrency and retries on transport errors, 429
// and 5xx responses. Any other non-200 status fails immediately.
class JsonPoster {
 public:
  explicit JsonPoster(const HttpClientOptions& options)
      : options_(options),
        slots_(std::clamp<std::ptrdiff_t>(options.max_in_flight, 1, kMaxInFlight)) {
    std::tie(host_, path_) = SplitEndpoint(options.endpoint);
  }

  nlohmann::json Post(const nlohmann::json& body, ErrorKind failure_kind) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<kMaxInFlight>& s;
      ~Release() { s.release(); }
    } release{slots_};

    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(500 << (attempt - 1)));
      }
      httplib::Client client(host_);
      client.set_connection_timeout(std::chrono::seconds(options_.timeout_seconds));
      client.set_read_timeout(std::chrono::seconds(options_.timeout_seconds));
      httplib::Headers headers;
      if (!options_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + options_.api_key);
      }
      auto res = client.Post(path_, headers, payload, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        spdlog::warn("{}: attempt {} failed: {}", options_.endpoint, attempt + 1, last_error);
        continue;
      }
      if (res->status == 200) {
        try {
          return nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
          throw Error(failure_kind, fmt::format("malformed response body: {}", e.what()));
        }
      }
      last_error = fmt::format("HTTP {}", res->status);
      if (res->status != 429 && res->status < 500) {
        throw Error(failure_kind, fmt::format("{} returned {}: {}", options_.endpoint,
                                              res->status, res->body.substr(0, 200)));
      }
      spdlog::warn("{}: attempt {} got {}", options_.endpoint, attempt + 1, last_error);
    }
    throw Error(failure_kind, fmt::format("{} unreachable after {} attempts: {}",
                                          options_.endpoint, options_.max_retries + 1,
                                          last_error));
  }

 private:
  HttpClientOptions options_;
  std::string host_;
  std::string path_;
  std::counting_semaphore<kMaxInFlight> slots_;
};

class HttpChatClient : public TextGenClient {
 public:
  explicit HttpChatClient(const HttpClientOptions& options)
      : options_(options), poster_(options) {}

  std::string model_id() const override { return options_.model; }
  double temperature() const override { return options_.temperature; }

  std::string Complete(const ChatRequest& request) override {
    CountCall();
    nlohmann::json messages = nlohmann::json::array();
    if (!request.system.empty()) {
      messages.push_back({{"role", "system"}, {"content", request.system}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user}});
    const nlohmann::json body = {
        {"model", options_.model},
        {"temperature", request.temperature.value_or(options_.temperature)},
        {"messages", messages},
    };
    const nlohmann::json reply = poster_.Post(body, ErrorKind::kGeneration);
    try {
      return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kGeneration, fmt::format("unexpected reply shape: {}", e.what()));
    }
  }

 private:
  HttpClientOptions options_;
  JsonPoster poster_;
};

class HttpEmbedClient : public EmbedClient {
 public:
  explicit HttpEmbedClient(const HttpClientOptions& options)
      : options_(options), poster_(options) {}

  std::string model_id() const override { return options_.model; }

  std::vector<Embedding> Embed(std::span<const std::string> texts) override {
    CountCall();
    nlohmann::json input = nlohmann::json::array();
    for (const std::string& t : texts) input.push_back(options_.input_prefix + t);
    const nlohmann::json reply =
        poster_.Post({{"model", options_.model}, {"input", input}}, ErrorKind::kFilter);
    std::vector<Embedding> out(texts.size());
    try {
      for (const auto& item : reply.at("data")) {
        const size_t index = item.at("index").get<size_t>();
        if (index >= out.size()) throw Error(ErrorKind::kFilter, "embedding index out of range");
        out[index] = item.at("embedding").get<Embedding>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kFilter, fmt::format("unexpected reply shape: {}", e.what()));
    }
    return out;
  }

 private:
  HttpClientOptions options_;
  JsonPoster poster_;
};

}  // namespace

std::unique_ptr<TextGenClient> MakeHttpChatClient(const HttpClientOptions& options) {
  return std::make_unique<HttpChatClient>(options);
}

std::unique_ptr<EmbedClient> MakeHttpEmbedClient(const HttpClientOptions& options) {
  return std::make_unique<HttpEmbedClient>(options);
}

}  // namespace paraprobe
