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

#ifndef PARAPROBE_SEMANTIC_FILTER_H_
#define PARAPROBE_SEMANTIC_FILTER_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paraprobe/embed_client.h"
#include "paraprobe/records.h"
#include "paraprobe/syntax_rank.h"

namespace paraprobe {

struct FilterConfig {
  // No default: the threshold is picked per run (see `calibrate`).
  double cosine_threshold = 0.0;
  std::string embed_model_id;
  std::vector<Interval> jaccard_bins = {{0.0, 0.2}, {0.2, 0.4}};
  int length_bins = 10;        // equal-width token-length bins per table
  int jaccard_hist_bins = 10;  // equal-width bins over [0, 1]
};

// Throws Error(kConfig) for a threshold outside [-1, 1], overlapping or
// unsorted bins, or non-positive bin counts.
void ValidateFilterConfig(const FilterConfig& config);

// u.v / (|u| |v|), clamped to [-1, 1]. Throws Error(kNumeric) on a dimension
// mismatch or a zero vector.
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

// Embeds the original and every paraphrase in one batch, fills `cosine`, and
// sets `retained = cosine >= threshold`. Ranks are left untouched, so dropped
// paraphrases leave gaps. Embedding failures surface as Error(kFilter).
std::vector<RankedParaphrase> ApplyCosineFilter(std::vector<RankedParaphrase> ranked,
                                                const std::string& original_text,
                                                EmbedClient& client,
                                                const FilterConfig& config);

// Lowercases (ASCII), splits on Unicode whitespace, strips leading and
// trailing punctuation from each piece, and drops empty pieces.
std::vector<std::string> Tokenize(std::string_view text);

// Set Jaccard |A n B| / |A u B| over Tokenize() tokens. Throws
// Error(kTokenization) if either side has no tokens.
double Jaccard(std::string_view a, std::string_view b);

struct OverlapRecord {
  std::string example_id;
  int rank = 0;
  double jaccard = 0.0;
  int orig_len = 0;
  int para_len = 0;
};

OverlapRecord MakeOverlapRecord(std::string example_id, int rank,
                                std::string_view original,
                                std::string_view paraphrase);

struct HistogramRow {
  int rank = 0;
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  int count = 0;

  bool operator==(const HistogramRow&) const = default;
};

struct DistributionTables {
  std::vector<HistogramRow> lengths;  // paraphrase token length per rank
  std::vector<HistogramRow> jaccard;  // Jaccard to the original per rank
};

// Binned counts for each rank in `ranks` (ascending). Length bins share one
// integer range across the selected ranks so tables are comparable; the last
// Jaccard bin is closed at 1.0.
DistributionTables BuildDistributionTables(std::span<const OverlapRecord> records,
                                           const std::set<int>& ranks,
                                           const FilterConfig& config);

// Histogram of cosine values over [-1, 1] with `bins` equal-width bins (last
// bin closed). Rows carry rank 0.
std::vector<HistogramRow> CosineHistogram(std::span<const double> cosines, int bins);

}  // namespace paraprobe

#endif  // PARAPROBE_SEMANTIC_FILTER_H_
