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

#include "paraprobe/syntax_rank.h"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/tree_edit.h"

namespace paraprobe {

std::vector<RankedParaphrase> RankByDistance(
    const DepTree& original, std::span<const ParaphraseCandidate> candidates,
    std::span<const int> teds) {
  if (candidates.empty()) {
    throw Error(ErrorKind::kStructure, "no candidates to rank");
  }
  if (teds.size() != candidates.size()) {
    throw Error(ErrorKind::kStructure,
                fmt::format("{} distances for {} candidates", teds.size(),
                            candidates.size()));
  }
  std::vector<int> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return teds[x] < teds[y]; });

  std::vector<RankedParaphrase> ranked;
  ranked.reserve(order.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const int i = order[pos];
    ranked.push_back(RankedParaphrase{
        .text = candidates[i].text,
        .tree = candidates[i].tree,
        .generation_index = i,
        .ted = teds[i],
        .ted_norm = NormalizedTed(teds[i], original, candidates[i].tree),
        .rank = static_cast<int>(pos) + 1,
    });
  }
  return ranked;
}

std::vector<RankedParaphrase> RankParaphrases(
    const DepTree& original, std::span<const ParaphraseCandidate> candidates) {
  std::vector<int> teds;
  teds.reserve(candidates.size());
  for (const ParaphraseCandidate& c : candidates) {
    teds.push_back(TreeEditDistance(original, c.tree));
  }
  return RankByDistance(original, candidates, teds);
}

}  // namespace paraprobe
