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

#ifndef PARAPROBE_RUN_CONFIG_H_
#define PARAPROBE_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paraprobe/ingest.h"
#include "paraprobe/paraphrase.h"
#include "paraprobe/semantic_filter.h"
#include "paraprobe/sql_exec.h"

namespace paraprobe {

// One declarative run. Relative paths are resolved against base_dir, the
// directory holding the config file.
struct RunConfig {
  nlohmann::json snapshot;  // the config as written, for the manifest
  std::filesystem::path base_dir;

  std::filesystem::path benchmark_path;
  BenchmarkFormat benchmark_format = BenchmarkFormat::kSpider;
  IngestOptions ingest;

  nlohmann::json generator;            // client spec
  std::vector<nlohmann::json> models;  // NL2SQL client specs
  nlohmann::json embedder;             // embedding client spec

  GenConfig generation;
  FilterConfig filter;
  // Unset until the operator picks one; the filter stage requires it.
  std::optional<double> cosine_threshold;
  std::set<int> histogram_ranks = {1, 5, 10};

  std::filesystem::path conllu_dir;
  std::filesystem::path request_dir;

  ExecLimits limits;
  int bootstrap_resamples = 100;
  std::uint64_t seed = 0;
  int workers = 1;

  std::filesystem::path cache_dir;
  std::filesystem::path output_dir;
};

// Parses and validates a config document. Throws Error(kConfig) naming the
// offending field.
RunConfig ParseRunConfig(const nlohmann::json& doc, const std::filesystem::path& base_dir);

RunConfig LoadRunConfig(const std::filesystem::path& path);

// The client spec reduced to what determines its output: operational knobs
// and credentials are dropped and referenced fixture files are replaced by
// their content hash. Used in cache keys.
nlohmann::json ClientFingerprint(const nlohmann::json& spec,
                                 const std::filesystem::path& base_dir);

}  // namespace paraprobe

#endif  // PARAPROBE_RUN_CONFIG_H_
