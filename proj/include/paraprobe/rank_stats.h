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

#ifndef PARAPROBE_RANK_STATS_H_
#define PARAPROBE_RANK_STATS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paraprobe/records.h"

namespace paraprobe {

struct RankPoint {
  int rank = 0;
  double value = 0.0;
};

// Kendall's tau-a: (n_c - n_d) / (n (n - 1) / 2). Pairs tied in either
// coordinate count as neither concordant nor discordant, so ties pull tau
// towards zero.
struct TauEstimate {
  double tau = 0.0;
  int n = 0;
  int64_t concordant = 0;
  int64_t discordant = 0;

  bool operator==(const TauEstimate&) const = default;
};

// O(n log n) (Knight's merge-sort inversion count). Throws Error(kStatistics)
// when fewer than two points are given.
TauEstimate KendallTau(std::span<const RankPoint> points);

struct BootstrapResult {
  double lo = 0.0;  // 2.5th percentile
  double hi = 0.0;  // 97.5th percentile
  std::vector<double> resamples;  // tau*(b), b = 0..B-1
  int degenerate = 0;  // resamples with fewer than two distinct source points
};

// Percentile bootstrap of tau. Resample b draws n points with replacement
// from its own generator, seeded from (seed, b) through SplitMix64, so the
// result does not depend on evaluation order or thread count.
//
// Within a resample, tau*(b) is taken over pairs of draws that come from
// different source points; a point drawn twice is one observation, not a tied
// pair. Without duplicates this is exactly KendallTau. A resample that hits
// fewer than two distinct source points scores 0.
//
// BootstrapTau spreads resamples over OpenMP threads; BootstrapTauSerial is
// the reference implementation. Both produce bit-identical results.
BootstrapResult BootstrapTau(std::span<const RankPoint> points, int resamples,
                             uint64_t seed);
BootstrapResult BootstrapTauSerial(std::span<const RankPoint> points,
                                   int resamples, uint64_t seed);

// Linear interpolation between closest order statistics of `sorted`
// (ascending), p in [0, 1].
double Percentile(std::span<const double> sorted, double p);

uint64_t SplitMix64(uint64_t x);

enum class RankFilter { kAll, kAtLeast3 };

std::string_view RankFilterName(RankFilter filter);

struct TauReport {
  std::string model_id;
  std::string dataset;
  RankFilter filter = RankFilter::kAll;
  TauEstimate estimate;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int resample_count = 0;
  uint64_t seed = 0;
  std::vector<double> resamples;
  // Possible with percentile intervals; reported, not an error.
  bool estimate_outside_ci = false;
};

// Tau between rank and delta accuracy over `records` (one model/dataset),
// after dropping ranks below 3 for RankFilter::kAtLeast3. Throws
// Error(kStatistics) when fewer than two records survive the filter.
TauReport MakeTauReport(std::span<const PairedEvalRecord> records,
                        RankFilter filter, int resamples, uint64_t seed);

struct AccuracyPoint {
  int rank = 0;
  int n = 0;
  int correct = 0;
  double accuracy = 0.0;
};

struct StratumCurve {
  std::optional<Interval> bin;  // nullopt for the unfiltered curve
  std::vector<AccuracyPoint> points;  // ascending rank
  std::optional<TauEstimate> tau;  // needs at least two ranks
};

// Accuracy by rank within each Jaccard bin, plus the unfiltered curve first.
// Bins with no items are omitted (and logged).
std::vector<StratumCurve> StratifiedCurves(std::span<const StratifiedItem> items,
                                           std::span<const Interval> bins);

}  // namespace paraprobe

#endif  // PARAPROBE_RANK_STATS_H_
