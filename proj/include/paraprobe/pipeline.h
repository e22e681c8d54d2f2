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
#ifndef PARAPROBE_PIPELINE_H_
#define PARAPROBE_PIPELINE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "paraprobe/run_config.h"
#include "paraprobe/semantic_filter.h"

namespace paraprobe {

// Pipeline stages in execution order. Running a stage runs everything
// before it; finished work is replayed from the stage cache.
enum class Stage {
  kIngest,
  kParaphrase,
  kParseImport,
  kRank,
  kFilter,
  kEvaluate,
  kStats,
  kReport,
};

std::string_view StageName(Stage stage);
// Accepts the names StageName produces ("parse-import", ...). Throws
// Error(kConfig) for anything else.
Stage ParseStage(std::string_view name);

// Something the run dropped. `item` is empty when the whole example is out;
// otherwise it names the candidate ("candidate 3") that was skipped.
struct Exclusion {
  std::string example_id;
  std::string stage;
  std::string error_class;
  std::string message;
  std::string item;
};

struct RunSummary {
  std::vector<std::string> completed_stages;
  // Set when a stage could not produce anything usable. The bundle then
  // holds whatever earlier stages wrote plus a manifest naming the failure.
  std::optional<std::string> fatal;
  int examples = 0;
  std::vector<Exclusion> exclusions;
  // Client calls actually made ("generator", "embedder", "model:<id>").
  // Cache replays are not calls.
  std::map<std::string, int> client_calls;
  int cache_hits = 0;
  int cache_misses = 0;
  std::vector<std::string> files;  // bundle files written, relative to output_dir

  int TotalClientCalls() const;
};

// Runs the pipeline through `until` and writes the bundle into
// config.output_dir. Configuration problems throw Error(kConfig); a stage
// failure that leaves nothing to continue with is reported in
// RunSummary::fatal instead.
RunSummary RunPipeline(const RunConfig& config, Stage until = Stage::kReport);

struct CalibrationReport {
  int requested = 0;
  int available = 0;  // (original, paraphrase) pairs with a parse
  int sampled = 0;    // min(requested, available)
  std::vector<double> cosines;  // the sampled values, in sample order
  std::vector<HistogramRow> histogram;
  RunSummary summary;
};

// Embeds a seeded sample of (original, paraphrase) pairs and bins their
// cosine similarity, so an operator can choose filter.cosine_threshold. Does
// not need a threshold. Writes calibration.csv into the output dir.
CalibrationReport Calibrate(const RunConfig& config, int sample_size, int bins);

struct SweepPoint {
  nlohmann::json value;
  std::filesystem::path output_dir;
  RunSummary summary;
};

// Runs the full pipeline once per value, with the config field at
// `json_pointer` (e.g. "/filter/cosine_threshold") replaced by that value.
// Each run writes to out_root/<index>_<value>; all runs share one cache.
// Writes out_root/sweep.csv listing the runs.
std::vector<SweepPoint> RunSweep(const nlohmann::json& config_doc,
                                 const std::filesystem::path& base_dir,
                                 const std::string& json_pointer,
                                 const std::vector<nlohmann::json>& values,
                                 const std::filesystem::path& out_root);

}  // namespace paraprobe

#endif  // PARAPROBE_PIPELINE_H_
