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

#ifndef PARAPROBE_STAGE_CACHE_H_
#define PARAPROBE_STAGE_CACHE_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace paraprobe {

// Content-addressed store for stage outputs. Each stage keeps one JSONL file
// "<dir>/<stage>.jsonl" whose lines are {"key", "created_at", "value"};
// later lines win. An empty directory path keeps entries in memory only.
//
// Lookups may run concurrently; writes are serialized and appended to disk
// immediately so an interrupted run resumes from what it finished.
class StageCache {
 public:
  explicit StageCache(std::filesystem::path dir);

  // SHA-256 over the stage name and the canonical (key-sorted) JSON dump of
  // the inputs.
  static std::string Key(std::string_view stage, const nlohmann::json& inputs);

  std::optional<nlohmann::json> Get(std::string_view stage, const std::string& key);
  void Put(std::string_view stage, const std::string& key, const nlohmann::json& value);

  int hits() const { return hits_.load(); }
  int misses() const { return misses_.load(); }

 private:
  using Table = std::map<std::string, nlohmann::json, std::less<>>;
  Table& Load(std::string_view stage);  // requires exclusive lock

  std::filesystem::path dir_;
  std::shared_mutex mu_;
  std::map<std::string, Table, std::less<>> stages_;
  std::atomic<int> hits_{0};
  std::atomic<int> misses_{0};
};

}  // namespace paraprobe

#endif  // PARAPROBE_STAGE_CACHE_H_
