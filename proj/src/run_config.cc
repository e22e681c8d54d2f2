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

#include "paraprobe/run_config.h"

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"

namespace paraprobe {
namespace {

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

const nlohmann::json& Section(const nlohmann::json& doc, const char* name) {
  static const nlohmann::json kEmpty = nlohmann::json::object();
  const auto it = doc.find(name);
  if (it == doc.end()) return kEmpty;
  if (!it->is_object()) throw Error(ErrorKind::kConfig, fmt::format("'{}' must be an object", name));
  return *it;
}

template <typename T>
T Get(const nlohmann::json& section, const char* key, T fallback, const char* where) {
  const auto it = section.find(key);
  if (it == section.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kConfig, fmt::format("{}.{} has the wrong type", where, key));
  }
}

void RequireSpec(const nlohmann::json& spec, const char* where) {
  if (!spec.is_object() || !spec.contains("kind")) {
    throw Error(ErrorKind::kConfig, fmt::format("{} needs a client spec with a 'kind'", where));
  }
}

}  // namespace

RunConfig ParseRunConfig(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  RunConfig c;
  c.snapshot = doc;
  c.base_dir = base_dir;

  const nlohmann::json& bench = Section(doc, "benchmark");
  const std::string bench_path = Get<std::string>(bench, "path", "", "benchmark");
  if (bench_path.empty()) throw Error(ErrorKind::kConfig, "benchmark.path is required");
  c.benchmark_path = Resolve(base_dir, bench_path);
  if (!std::filesystem::is_directory(c.benchmark_path)) {
    throw Error(ErrorKind::kConfig,
                fmt::format("benchmark.path {} is not a directory", c.benchmark_path.string()));
  }
  c.benchmark_format = ParseBenchmarkFormat(Get<std::string>(bench, "format", "spider", "benchmark"));
  c.ingest.sample_rows = Get<int>(bench, "sample_rows", 3, "benchmark");
  if (bench.contains("limit") && !bench.at("limit").is_null()) {
    c.ingest.limit = Get<int>(bench, "limit", 0, "benchmark");
  }

  c.generator = doc.value("generator", nlohmann::json());
  RequireSpec(c.generator, "generator");
  c.embedder = doc.value("embedder", nlohmann::json());
  RequireSpec(c.embedder, "embedder");
  const nlohmann::json models = doc.value("models", nlohmann::json::array());
  if (!models.is_array() || models.empty()) {
    throw Error(ErrorKind::kConfig, "models must list at least one NL2SQL client");
  }
  std::set<std::string> model_ids;
  for (const nlohmann::json& m : models) {
    RequireSpec(m, "models[]");
    const std::string id = m.value("model", "");
    if (id.empty()) throw Error(ErrorKind::kConfig, "every models[] entry needs a 'model' id");
    if (!model_ids.insert(id).second) {
      throw Error(ErrorKind::kConfig, fmt::format("duplicate model id '{}'", id));
    }
    c.models.push_back(m);
  }

  const nlohmann::json& gen = Section(doc, "generation");
  c.generation.num_queries = Get<int>(gen, "num_queries", 10, "generation");
  c.generation.temperature = Get<double>(gen, "temperature", 1.0, "generation");
  c.generation.max_attempts = Get<int>(gen, "max_attempts", 3, "generation");
  c.generation.model_id = c.generator.value("model", "");
  ValidateGenConfig(c.generation);

  const nlohmann::json& filter = Section(doc, "filter");
  if (filter.contains("cosine_threshold") && !filter.at("cosine_threshold").is_null()) {
    c.cosine_threshold = Get<double>(filter, "cosine_threshold", 0.0, "filter");
    c.filter.cosine_threshold = *c.cosine_threshold;
  }
  c.filter.embed_model_id = c.embedder.value("model", "");
  if (filter.contains("jaccard_bins")) {
    c.filter.jaccard_bins.clear();
    for (const auto& bin : filter.at("jaccard_bins")) {
      if (!bin.is_array() || bin.size() != 2) {
        throw Error(ErrorKind::kConfig, "filter.jaccard_bins entries must be [lo, hi]");
      }
      c.filter.jaccard_bins.push_back({bin[0].get<double>(), bin[1].get<double>()});
    }
  }
  c.filter.length_bins = Get<int>(filter, "length_bins", 10, "filter");
  c.filter.jaccard_hist_bins = Get<int>(filter, "jaccard_hist_bins", 10, "filter");
  if (filter.contains("histogram_ranks")) {
    c.histogram_ranks = Get<std::set<int>>(filter, "histogram_ranks", {}, "filter");
  }
  {
    FilterConfig probe = c.filter;
    probe.cosine_threshold = c.cosine_threshold.value_or(0.0);
    ValidateFilterConfig(probe);
  }

  const nlohmann::json& parses = Section(doc, "parses");
  const std::string conllu = Get<std::string>(parses, "conllu_dir", "", "parses");
  if (conllu.empty()) throw Error(ErrorKind::kConfig, "parses.conllu_dir is required");
  c.conllu_dir = Resolve(base_dir, conllu);

  const nlohmann::json& exec = Section(doc, "execution");
  c.limits.timeout_seconds = Get<double>(exec, "timeout_seconds", 30.0, "execution");
  c.limits.row_cap = Get<std::int64_t>(exec, "row_cap", 100000, "execution");
  if (!(c.limits.timeout_seconds > 0) || c.limits.row_cap < 1) {
    throw Error(ErrorKind::kConfig, "execution limits must be positive");
  }

  const nlohmann::json& stats = Section(doc, "stats");
  c.bootstrap_resamples = Get<int>(stats, "bootstrap_resamples", 100, "stats");
  c.seed = Get<std::uint64_t>(stats, "seed", 0, "stats");
  if (c.bootstrap_resamples < 1) {
    throw Error(ErrorKind::kConfig, "stats.bootstrap_resamples must be >= 1");
  }

  c.workers = doc.value("workers", 1);
  if (c.workers < 1) throw Error(ErrorKind::kConfig, "workers must be >= 1");

  const std::string out = doc.value("output_dir", "");
  if (out.empty()) throw Error(ErrorKind::kConfig, "output_dir is required");
  c.output_dir = Resolve(base_dir, out);
  c.cache_dir = Resolve(base_dir, doc.value("cache_dir", out + "/../cache"));
  c.request_dir = parses.contains("request_dir")
                      ? Resolve(base_dir, parses.at("request_dir").get<std::string>())
                      : c.output_dir / "parse_requests";
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, fmt::format("{}: {}", path.string(), e.what()));
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  return ParseRunConfig(doc, path.parent_path().empty() ? "." : path.parent_path());
}

nlohmann::json ClientFingerprint(const nlohmann::json& spec,
                                 const std::filesystem::path& base_dir) {
  nlohmann::json fp = spec;
  for (const char* knob : {"api_key_env", "max_in_flight", "max_retries", "timeout_seconds"}) {
    fp.erase(knob);
  }
  for (const char* file_key : {"script", "table", "path"}) {
    if (!fp.contains(file_key) || !fp.at(file_key).is_string()) continue;
    const auto file = Resolve(base_dir, fp.at(file_key).get<std::string>());
    fp[file_key] = "sha256:" + Sha256Hex(ReadFile(file));
  }
  return fp;
}

}  // namespace paraprobe
