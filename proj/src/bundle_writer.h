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
#ifndef PARAPROBE_SRC_BUNDLE_WRITER_H_
#define PARAPROBE_SRC_BUNDLE_WRITER_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "paraprobe/ingest.h"
#include "paraprobe/nl2sql_eval.h"
#include "paraprobe/paraphrase.h"
#include "paraprobe/pipeline.h"
#include "paraprobe/rank_stats.h"
#include "paraprobe/semantic_filter.h"

namespace paraprobe {

struct RankedRow {
  const std::string* example_id;
  const std::vector<RankedParaphrase>* ranked;
};

struct ItemRow {
  const ItemOutcome* outcome;
  std::string cache_key;
};

// Quotes a CSV field when it holds a comma, quote or line break.
std::string CsvField(std::string_view text);

// Fixed six-decimal rendering used for every real number in CSV output.
std::string Real(double value);

// Writes the run bundle. Every file is produced from in-memory results with
// no timestamps or absolute paths, so identical inputs give identical bytes.
class BundleWriter {
 public:
  explicit BundleWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void Examples(const std::vector<Example>& examples);
  void ParaphraseSets(const std::vector<const ParaphraseSet*>& sets);
  void Paraphrases(const std::vector<RankedRow>& rows, bool filtered);
  void PairedEval(const std::vector<RankEvaluation>& evaluations);
  void Items(const std::vector<ItemRow>& rows);
  void Tau(const std::vector<TauReport>& reports);
  void Overlap(const std::vector<OverlapRecord>& records);
  void Distributions(const DistributionTables& tables);
  void Stratified(
      const std::vector<std::pair<std::string, std::vector<StratumCurve>>>& curves);
  void Exclusions(const std::vector<Exclusion>& exclusions);
  void Calibration(const std::vector<HistogramRow>& histogram);

  // Writes `path` and lists it in the manifest when it lies inside the
  // bundle directory.
  void File(const std::filesystem::path& path, std::string_view contents);

  // Adds the sorted file list to `manifest`, writes manifest.json and
  // returns the list (manifest.json included).
  std::vector<std::string> Manifest(nlohmann::json manifest);

 private:
  void Write(const std::string& name, std::string_view contents);

  std::filesystem::path dir_;
  std::set<std::string> files_;
};

}  // namespace paraprobe

#endif  // PARAPROBE_SRC_BUNDLE_WRITER_H_
