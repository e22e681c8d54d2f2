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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "paraprobe/errors.h"
#include "tau_oracle.h"

namespace paraprobe {
namespace {

using testing::BruteForceTau;

std::vector<RankPoint> Points(std::vector<int> ranks, std::vector<double> values) {
  std::vector<RankPoint> out;
  for (size_t i = 0; i < ranks.size(); ++i) out.push_back({ranks[i], values[i]});
  return out;
}

std::vector<RankPoint> Inverted(int n) {
  std::vector<RankPoint> out;
  for (int r = 1; r <= n; ++r) out.push_back({r, -0.05 * r});
  return out;
}

TEST(KendallTauTest, PerfectInversionAndAgreement) {
  const auto down = Points({1, 2, 3, 4, 5}, {0.5, 0.4, 0.1, 0.0, -0.3});
  const auto up = Points({1, 2, 3, 4, 5}, {-0.3, 0.0, 0.1, 0.4, 0.5});
  EXPECT_EQ(KendallTau(down).tau, -1.0);
  EXPECT_EQ(KendallTau(up).tau, 1.0);
}

TEST(KendallTauTest, HandEnumeratedExample) {
  const auto pts = Points({1, 2, 3, 4}, {0.0, -0.5, -0.2, -0.9});
  const TauEstimate oracle = BruteForceTau(pts);
  ASSERT_EQ(oracle.concordant, 1);
  ASSERT_EQ(oracle.discordant, 5);
  const TauEstimate got = KendallTau(pts);
  EXPECT_EQ(got, oracle);
  EXPECT_NEAR(got.tau, -4.0 / 6.0, 1e-15);
}

TEST(KendallTauTest, TiesCountInNeitherAndKeepFullDenominator) {
  const auto pts = Points({1, 1, 2, 3}, {0.2, 0.2, 0.2, 0.1});
  const TauEstimate got = KendallTau(pts);
  EXPECT_EQ(got, BruteForceTau(pts));
  EXPECT_EQ(got.discordant, 3);  // of 6 pairs; the other 3 are ties
  EXPECT_EQ(got.concordant, 0);
}

TEST(KendallTauTest, MatchesBruteForceOnRandomInputs) {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_int_distribution<int> rank(1, 10);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::uniform_int_distribution<int> coarse(-3, 3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<RankPoint> pts(size(rng));
    const bool with_value_ties = trial % 3 == 0;
    for (RankPoint& p : pts) {
      p.rank = rank(rng);
      p.value = with_value_ties ? coarse(rng) / 10.0 : value(rng);
    }
    ASSERT_EQ(KendallTau(pts), BruteForceTau(pts)) << "trial " << trial;
  }
}

TEST(KendallTauTest, SignFlipsAndMonotoneInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RankPoint> pts;
    for (int r = 1; r <= 12; ++r) pts.push_back({r % 7, value(rng)});
    auto negated = pts;
    auto transformed = pts;
    for (auto& p : negated) p.value = -p.value;
    for (auto& p : transformed) p.value = std::exp(3.0 * p.value) + 2.0;
    const double tau = KendallTau(pts).tau;
    EXPECT_GE(tau, -1.0);
    EXPECT_LE(tau, 1.0);
    EXPECT_EQ(KendallTau(negated).tau, -tau);
    EXPECT_EQ(KendallTau(transformed).tau, tau);
  }
}

TEST(KendallTauTest, TooFewPointsIsStatisticsError) {
  const auto one = Points({1}, {0.0});
  try {
    KendallTau(one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kStatistics);
  }
}

TEST(PercentileTest, LinearInterpolation) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(Percentile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(Percentile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(Percentile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(Percentile(v, 0.025), 1.075);
  const std::vector<double> single = {7.0};
  EXPECT_DOUBLE_EQ(Percentile(single, 0.975), 7.0);
}

TEST(BootstrapTest, HundredResamplesWithPercentileBand) {
  const auto pts = Points({1, 2, 3, 4, 5, 6}, {0.1, -0.2, 0.0, -0.1, -0.4, -0.3});
  const BootstrapResult r = BootstrapTau(pts, 100, 42);
  ASSERT_EQ(r.resamples.size(), 100u);
  std::vector<double> sorted = r.resamples;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(r.lo, Percentile(sorted, 0.025));
  EXPECT_EQ(r.hi, Percentile(sorted, 0.975));
  EXPECT_LE(r.lo, r.hi);
}

TEST(BootstrapTest, PerfectlyInvertedInputGivesDegenerateInterval) {
  const BootstrapResult r = BootstrapTau(Inverted(10), 100, 7);
  EXPECT_EQ(r.lo, -1.0);
  EXPECT_EQ(r.hi, -1.0);
  EXPECT_EQ(r.degenerate, 0);
}

TEST(BootstrapTest, ResampleWithoutDuplicatesEqualsTauA) {
  // With n = 2, every non-degenerate resample holds both points exactly
  // once, so tau* must equal the point estimate.
  const auto pts = Points({1, 2}, {0.3, 0.1});
  const BootstrapResult r = BootstrapTau(pts, 200, 3);
  for (double t : r.resamples) EXPECT_TRUE(t == 0.0 || t == -1.0);
  EXPECT_GT(r.degenerate, 0);
}

TEST(BootstrapTest, DeterministicAndSerialMatchesParallel) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RankPoint> pts;
    for (int r = 1; r <= 10; ++r) pts.push_back({r, value(rng)});
    const uint64_t seed = 1000 + trial;
    const BootstrapResult a = BootstrapTau(pts, 100, seed);
    const BootstrapResult b = BootstrapTau(pts, 100, seed);
    const BootstrapResult serial = BootstrapTauSerial(pts, 100, seed);
    EXPECT_EQ(a.resamples, b.resamples);
    EXPECT_EQ(a.resamples, serial.resamples);
    EXPECT_EQ(a.lo, serial.lo);
    EXPECT_EQ(a.hi, serial.hi);
    EXPECT_LE(a.lo, a.hi);
  }
}

TEST(BootstrapTest, SeedChangesDraws) {
  std::vector<RankPoint> pts;
  for (int r = 1; r <= 10; ++r) pts.push_back({r, std::sin(r)});
  EXPECT_NE(BootstrapTau(pts, 100, 1).resamples, BootstrapTau(pts, 100, 2).resamples);
}

TEST(BootstrapTest, RejectsBadInput) {
  EXPECT_THROW(BootstrapTau(Points({1}, {0.0}), 100, 0), Error);
  EXPECT_THROW(BootstrapTau(Inverted(3), 0, 0), Error);
}

std::vector<PairedEvalRecord> Records(int first_rank, int last_rank) {
  std::vector<PairedEvalRecord> out;
  for (int r = first_rank; r <= last_rank; ++r) {
    PairedEvalRecord rec;
    rec.model_id = "m";
    rec.dataset = "d";
    rec.rank = r;
    rec.n_pairs = 10;
    rec.delta = -0.01 * r + (r % 3 == 0 ? 0.05 : 0.0);
    out.push_back(rec);
  }
  return out;
}

TEST(TauReportTest, AtLeast3KeepsRanksThreeAndUp) {
  const auto all = Records(1, 10);
  const TauReport ge3 = MakeTauReport(all, RankFilter::kAtLeast3, 100, 9);
  EXPECT_EQ(ge3.estimate.n, 8);
  const TauReport full = MakeTauReport(all, RankFilter::kAll, 100, 9);
  EXPECT_EQ(full.estimate.n, 10);

  const auto restricted = Records(3, 10);
  const TauReport restricted_all = MakeTauReport(restricted, RankFilter::kAll, 100, 9);
  EXPECT_EQ(ge3.estimate, restricted_all.estimate);
  EXPECT_EQ(ge3.resamples, restricted_all.resamples);
  EXPECT_EQ(ge3.ci_lo, restricted_all.ci_lo);
  EXPECT_EQ(ge3.ci_hi, restricted_all.ci_hi);
  EXPECT_EQ(ge3.model_id, "m");
  EXPECT_EQ(ge3.seed, 9u);
  EXPECT_EQ(ge3.resample_count, 100);
}

TEST(TauReportTest, EmptyAfterFilterIsStatisticsError) {
  auto recs = Records(2, 2);
  recs.push_back(recs.front());
  EXPECT_THROW(MakeTauReport(recs, RankFilter::kAtLeast3, 100, 1), Error);
  EXPECT_NO_THROW(MakeTauReport(recs, RankFilter::kAll, 100, 1));
}

TEST(StratifiedCurvesTest, TwoBinsPlusUnfiltered) {
  std::vector<StratifiedItem> items;
  for (int r = 1; r <= 4; ++r) {
    items.push_back({"a", r, 0.1, r < 3});
    items.push_back({"b", r, 0.3, true});
    items.push_back({"c", r, 0.5, false});
  }
  const std::vector<Interval> bins = {{0.0, 0.2}, {0.2, 0.4}};
  const auto curves = StratifiedCurves(items, bins);
  ASSERT_EQ(curves.size(), 3u);
  EXPECT_FALSE(curves[0].bin.has_value());
  ASSERT_EQ(curves[0].points.size(), 4u);
  EXPECT_EQ(curves[0].points[0].n, 3);
  EXPECT_DOUBLE_EQ(curves[0].points[0].accuracy, 2.0 / 3.0);
  ASSERT_TRUE(curves[1].bin.has_value());
  EXPECT_EQ(*curves[1].bin, bins[0]);
  EXPECT_EQ(curves[1].points[3].correct, 0);
  ASSERT_TRUE(curves[1].tau.has_value());
  EXPECT_LT(curves[1].tau->tau, 0.0);
  // Every item in the second bin is correct: all ties.
  ASSERT_TRUE(curves[2].tau.has_value());
  EXPECT_EQ(curves[2].tau->concordant, 0);
  EXPECT_EQ(curves[2].tau->discordant, 0);
  EXPECT_EQ(curves[2].tau->tau, 0.0);
}

TEST(StratifiedCurvesTest, EmptyBinIsOmitted) {
  std::vector<StratifiedItem> items = {{"a", 1, 0.05, true}, {"a", 2, 0.1, false}};
  const std::vector<Interval> bins = {{0.0, 0.2}, {0.2, 0.4}};
  const auto curves = StratifiedCurves(items, bins);
  ASSERT_EQ(curves.size(), 2u);
  EXPECT_EQ(*curves[1].bin, bins[0]);
}

}  // namespace
}  // namespace paraprobe
