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

#ifndef PARAPROBE_SYNTAX_RANK_H_
#define PARAPROBE_SYNTAX_RANK_H_

#include <span>
#include <string>
#include <vector>

#include "paraprobe/dep_tree.h"

namespace paraprobe {

struct ParaphraseCandidate {
  std::string text;
  DepTree tree;
};

struct RankedParaphrase {
  std::string text;
  DepTree tree;
  int generation_index = 0;  // 0-based position in generator output
  int ted = 0;
  double ted_norm = 0.0;
  int rank = 0;  // 1 = syntactically closest to the original
  double cosine = 0.0;
  bool retained = false;
};

// Scores every candidate against `original` and assigns ranks 1..m in
// ascending TED order; ties keep generation order. The result is returned in
// rank order. Candidates must be non-empty.
std::vector<RankedParaphrase> RankParaphrases(
    const DepTree& original, std::span<const ParaphraseCandidate> candidates);

// Same ranking from precomputed distances (e.g. a cache hit). `teds[i]` is the
// distance of candidates[i].
std::vector<RankedParaphrase> RankByDistance(
    const DepTree& original, std::span<const ParaphraseCandidate> candidates,
    std::span<const int> teds);

}  // namespace paraprobe

#endif  // PARAPROBE_SYNTAX_RANK_H_
