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

#include "paraprobe/rank_stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"

namespace paraprobe {
namespace {

int64_t TiedPairs(int64_t run) { return run * (run - 1) / 2; }

// Counts pairs i < j with values[i] > values[j], sorting `values` in place.
int64_t CountInversions(std::vector<double>& values, std::vector<double>& scratch,
                        size_t lo, size_t hi) {
  if (hi - lo < 2) return 0;
  const size_t mid = lo + (hi - lo) / 2;
  int64_t count = CountInversions(values, scratch, lo, mid) +
                  CountInversions(values, scratch, mid, hi);
  size_t i = lo;
  size_t j = mid;
  size_t k = lo;
  while (i < mid && j < hi) {
    if (values[j] < values[i]) {
      count += static_cast<int64_t>(mid - i);
      scratch[k++] = values[j++];
    } else {
      scratch[k++] = values[i++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, values.begin() + lo);
  return count;
}

int Sign(double x) { return (x > 0) - (x < 0); }

// tau over pairs of draws with distinct source indices.
double ResampleTau(std::span<const RankPoint> points, std::span<const int> draw,
                   bool& degenerate) {
  int64_t pairs = 0;
  int64_t score = 0;
  for (size_t i = 0; i < draw.size(); ++i) {
    const RankPoint& p = points[draw[i]];
    for (size_t j = i + 1; j < draw.size(); ++j) {
      if (draw[i] == draw[j]) continue;
      const RankPoint& q = points[draw[j]];
      ++pairs;
      score += Sign(static_cast<double>(p.rank - q.rank)) * Sign(p.value - q.value);
    }
  }
  degenerate = pairs == 0;
  return degenerate ? 0.0 : static_cast<double>(score) / static_cast<double>(pairs);
}

// Unbiased draw in [0, n) by rejection; std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries.
int DrawIndex(std::mt19937_64& engine, uint64_t n) {
  const uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return static_cast<int>(x % n);
}

double OneResample(std::span<const RankPoint> points, uint64_t seed, int b,
                   std::vector<int>& draw, bool& degenerate) {
  std::mt19937_64 engine(
      SplitMix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(b + 1)));
  for (int& d : draw) d = DrawIndex(engine, points.size());
  return ResampleTau(points, draw, degenerate);
}

void CheckBootstrapInput(std::span<const RankPoint> points, int resamples) {
  if (points.size() < 2) {
    throw Error(ErrorKind::kStatistics,
                fmt::format("bootstrap needs at least 2 points, got {}", points.size()));
  }
  if (resamples < 1) {
    throw Error(ErrorKind::kStatistics, "bootstrap needs at least one resample");
  }
}

void Finish(BootstrapResult& result) {
  std::vector<double> sorted = result.resamples;
  std::sort(sorted.begin(), sorted.end());
  result.lo = Percentile(sorted, 0.025);
  result.hi = Percentile(sorted, 0.975);
  if (result.degenerate > 0) {
    spdlog::debug("bootstrap: {} of {} resamples were degenerate", result.degenerate,
                  result.resamples.size());
  }
}

}  // namespace

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

TauEstimate KendallTau(std::span<const RankPoint> points) {
  const int64_t n = static_cast<int64_t>(points.size());
  if (n < 2) {
    throw Error(ErrorKind::kStatistics,
                fmt::format("Kendall's tau needs at least 2 points, got {}", n));
  }
  std::vector<RankPoint> sorted(points.begin(), points.end());
  for (const RankPoint& p : sorted) {
    if (std::isnan(p.value)) throw Error(ErrorKind::kStatistics, "NaN in tau input");
  }
  std::sort(sorted.begin(), sorted.end(), [](const RankPoint& a, const RankPoint& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.value < b.value;
  });

  int64_t tied_rank = 0;
  int64_t tied_both = 0;
  for (int64_t i = 0; i < n;) {
    int64_t j = i;
    while (j < n && sorted[j].rank == sorted[i].rank) ++j;
    tied_rank += TiedPairs(j - i);
    for (int64_t k = i; k < j;) {
      int64_t m = k;
      while (m < j && sorted[m].value == sorted[k].value) ++m;
      tied_both += TiedPairs(m - k);
      k = m;
    }
    i = j;
  }

  std::vector<double> values(n);
  for (int64_t i = 0; i < n; ++i) values[i] = sorted[i].value;
  std::vector<double> scratch(n);
  const int64_t discordant = CountInversions(values, scratch, 0, values.size());

  int64_t tied_value = 0;
  for (int64_t i = 0; i < n;) {
    int64_t j = i;
    while (j < n && values[j] == values[i]) ++j;
    tied_value += TiedPairs(j - i);
    i = j;
  }

  const int64_t total = TiedPairs(n);
  const int64_t concordant =
      total - discordant - tied_rank - tied_value + tied_both;
  return TauEstimate{
      .tau = static_cast<double>(concordant - discordant) / static_cast<double>(total),
      .n = static_cast<int>(n),
      .concordant = concordant,
      .discordant = discordant,
  };
}

double Percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorKind::kStatistics, "percentile of empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const size_t below = static_cast<size_t>(std::floor(h));
  if (below + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(below);
  return sorted[below] + frac * (sorted[below + 1] - sorted[below]);
}

BootstrapResult BootstrapTau(std::span<const RankPoint> points, int resamples,
                             uint64_t seed) {
  CheckBootstrapInput(points, resamples);
  BootstrapResult result;
  result.resamples.assign(resamples, 0.0);
  int degenerate = 0;
#pragma omp parallel reduction(+ : degenerate)
  {
    std::vector<int> draw(points.size());
#pragma omp for schedule(static)
    for (int b = 0; b < resamples; ++b) {
      bool flat = false;
      result.resamples[b] = OneResample(points, seed, b, draw, flat);
      degenerate += flat ? 1 : 0;
    }
  }
  result.degenerate = degenerate;
  Finish(result);
  return result;
}

BootstrapResult BootstrapTauSerial(std::span<const RankPoint> points,
                                   int resamples, uint64_t seed) {
  CheckBootstrapInput(points, resamples);
  BootstrapResult result;
  result.resamples.reserve(resamples);
  std::vector<int> draw(points.size());
  for (int b = 0; b < resamples; ++b) {
    bool flat = false;
    result.resamples.push_back(OneResample(points, seed, b, draw, flat));
    result.degenerate += flat ? 1 : 0;
  }
  Finish(result);
  return result;
}

std::string_view RankFilterName(RankFilter filter) {
  return filter == RankFilter::kAll ? "all" : "ge3";
}

TauReport MakeTauReport(std::span<const PairedEvalRecord> records,
                        RankFilter filter, int resamples, uint64_t seed) {
  std::vector<RankPoint> points;
  for (const PairedEvalRecord& r : records) {
    if (filter == RankFilter::kAtLeast3 && r.rank < 3) continue;
    points.push_back({r.rank, r.delta});
  }
  if (points.size() < 2) {
    throw Error(ErrorKind::kStatistics,
                fmt::format("{} record(s) left after rank filter '{}'; need 2",
                            points.size(), RankFilterName(filter)));
  }
  TauReport report;
  report.model_id = records.front().model_id;
  report.dataset = records.front().dataset;
  report.filter = filter;
  report.estimate = KendallTau(points);
  BootstrapResult boot = BootstrapTau(points, resamples, seed);
  report.ci_lo = boot.lo;
  report.ci_hi = boot.hi;
  report.resample_count = resamples;
  report.seed = seed;
  report.resamples = std::move(boot.resamples);
  report.estimate_outside_ci =
      report.estimate.tau < report.ci_lo || report.estimate.tau > report.ci_hi;
  return report;
}

namespace {

StratumCurve BuildCurve(std::optional<Interval> bin,
                        std::span<const StratifiedItem> items) {
  std::map<int, AccuracyPoint> by_rank;
  for (const StratifiedItem& item : items) {
    if (bin && !bin->Contains(item.jaccard)) continue;
    AccuracyPoint& p = by_rank[item.rank];
    p.rank = item.rank;
    ++p.n;
    p.correct += item.correct ? 1 : 0;
  }
  StratumCurve curve;
  curve.bin = bin;
  std::vector<RankPoint> tau_points;
  for (auto& [rank, p] : by_rank) {
    p.accuracy = static_cast<double>(p.correct) / static_cast<double>(p.n);
    curve.points.push_back(p);
    tau_points.push_back({rank, p.accuracy});
  }
  if (tau_points.size() >= 2) curve.tau = KendallTau(tau_points);
  return curve;
}

}  // namespace

std::vector<StratumCurve> StratifiedCurves(std::span<const StratifiedItem> items,
                                           std::span<const Interval> bins) {
  std::vector<StratumCurve> curves;
  curves.push_back(BuildCurve(std::nullopt, items));
  for (const Interval& bin : bins) {
    StratumCurve curve = BuildCurve(bin, items);
    if (curve.points.empty()) {
      spdlog::info("stratified: Jaccard bin [{}, {}) is empty, omitted", bin.lo,
                   bin.hi);
      continue;
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace paraprobe
