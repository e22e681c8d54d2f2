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

#include "paraprobe/stage_cache.h"

#include <chrono>
#include <fstream>
#include <mutex>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

StageCache::StageCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string StageCache::Key(std::string_view stage, const nlohmann::json& inputs) {
  return Sha256Hex(fmt::format("{}\n{}", stage, inputs.dump()));
}

StageCache::Table& StageCache::Load(std::string_view stage) {
  auto it = stages_.find(stage);
  if (it != stages_.end()) return it->second;
  Table table;
  const std::filesystem::path file = dir_ / (std::string(stage) + ".jsonl");
  if (!dir_.empty() && std::filesystem::exists(file)) {
    const std::string contents = ReadFile(file);
    int line_no = 0;
    for (std::string_view line : SplitLines(contents)) {
      ++line_no;
      if (StripAscii(line).empty()) continue;
      try {
        nlohmann::json entry = nlohmann::json::parse(line);
        table[entry.at("key").get<std::string>()] = std::move(entry.at("value"));
      } catch (const nlohmann::json::exception& e) {
        // A torn final line from an interrupted run is harmless; skip it.
        spdlog::warn("{}:{}: ignoring unreadable cache line ({})", file.string(), line_no,
                     e.what());
      }
    }
  }
  return stages_.emplace(std::string(stage), std::move(table)).first->second;
}

std::optional<nlohmann::json> StageCache::Get(std::string_view stage, const std::string& key) {
  {
    std::shared_lock<std::shared_mutex> lock(mu_);
    const auto table = stages_.find(stage);
    if (table != stages_.end()) {
      const auto it = table->second.find(key);
      if (it == table->second.end()) {
        ++misses_;
        return std::nullopt;
      }
      ++hits_;
      return std::optional<nlohmann::json>(std::in_place, it->second);
    }
  }
  std::unique_lock<std::shared_mutex> lock(mu_);
  const Table& table = Load(stage);
  const auto it = table.find(key);
  if (it == table.end()) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return std::optional<nlohmann::json>(std::in_place, it->second);
}

void StageCache::Put(std::string_view stage, const std::string& key,
                     const nlohmann::json& value) {
  std::unique_lock<std::shared_mutex> lock(mu_);
  Load(stage)[key] = value;
  if (dir_.empty()) return;
  std::filesystem::create_directories(dir_);
  const std::filesystem::path file = dir_ / (std::string(stage) + ".jsonl");
  std::ofstream out(file, std::ios::app | std::ios::binary);
  const nlohmann::json entry = {
      {"key", key},
      {"created_at", fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                                 fmt::gmtime(std::chrono::system_clock::to_time_t(
                                     std::chrono::system_clock::now())))},
      {"value", value},
  };
  out << entry.dump() << '\n';
  if (!out) throw Error(ErrorKind::kIo, fmt::format("cannot append to {}", file.string()));
}

}  // namespace paraprobe
