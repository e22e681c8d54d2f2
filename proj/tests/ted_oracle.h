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

// Exhaustive ordered-tree edit distance for small trees. Test-only: this is
// the independent reference the Zhang-Shasha implementation is checked
// against, so it shares no code with src/tree_edit.cc.
//
// Every edit script corresponds to an ordered mapping M between the node sets
// (Tai 1979): pairs are one-to-one, and for any two pairs (i1, j1), (i2, j2)
// the preorder and postorder relations of i1/i2 agree with those of j1/j2
// (equivalently, ancestry and left-to-right order are preserved). The script
// cost is (#mapped pairs with different labels) + (#unmapped nodes of a) +
// (#unmapped nodes of b). Enumerating every valid mapping gives the exact
// minimum together with the composition of every optimal script.

#ifndef PARAPROBE_TESTS_TED_ORACLE_H_
#define PARAPROBE_TESTS_TED_ORACLE_H_

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "paraprobe/dep_tree.h"

namespace paraprobe::testing {

struct EditComposition {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;

  int cost() const { return substitutions + deletions + insertions; }
  auto operator<=>(const EditComposition&) const = default;
};

struct OracleResult {
  int distance = 0;
  std::set<EditComposition> optimal_scripts;
};

class BruteForceTed {
 public:
  BruteForceTed(const DepTree& a, const DepTree& b) : a_(Index(a)), b_(Index(b)) {}

  OracleResult Solve() {
    best_ = static_cast<int>(a_.size() + b_.size());
    used_.assign(b_.size(), false);
    Search(0, 0, 0);
    return {best_, optimal_};
  }

 private:
  struct Node {
    std::string label;
    int pre = 0;
    int post = 0;
  };

  static std::vector<Node> Index(const DepTree& t) {
    std::vector<Node> nodes(t.size());
    int pre = 0;
    int post = 0;
    auto walk = [&](auto&& self, int v) -> void {
      nodes[v].label = t.label(v);
      nodes[v].pre = pre++;
      for (int c : t.children(v)) self(self, c);
      nodes[v].post = post++;
    };
    walk(walk, t.root());
    return nodes;
  }

  bool Compatible(size_t i, size_t j) const {
    for (const auto& [pi, pj] : mapping_) {
      if ((a_[pi].pre < a_[i].pre) != (b_[pj].pre < b_[j].pre)) return false;
      if ((a_[pi].post < a_[i].post) != (b_[pj].post < b_[j].post)) return false;
    }
    return true;
  }

  // Decides the fate of a-node i given `subs` relabels and `dels` deletions so
  // far.
  void Search(size_t i, int subs, int dels) {
    const int mapped = static_cast<int>(mapping_.size());
    if (i == a_.size()) {
      const int ins = static_cast<int>(b_.size()) - mapped;
      const int cost = subs + dels + ins;
      if (cost < best_) {
        best_ = cost;
        optimal_.clear();
      }
      if (cost == best_) optimal_.insert({subs, dels, ins});
      return;
    }
    // Remaining a-nodes can absorb at most that many b-nodes.
    const int remaining = static_cast<int>(a_.size() - i);
    const int lower = subs + dels +
                      std::max(0, static_cast<int>(b_.size()) - mapped - remaining);
    if (lower > best_) return;

    for (size_t j = 0; j < b_.size(); ++j) {
      if (used_[j] || !Compatible(i, j)) continue;
      used_[j] = true;
      mapping_.emplace_back(i, j);
      Search(i + 1, subs + (a_[i].label == b_[j].label ? 0 : 1), dels);
      mapping_.pop_back();
      used_[j] = false;
    }
    Search(i + 1, subs, dels + 1);
  }

  std::vector<Node> a_;
  std::vector<Node> b_;
  std::vector<bool> used_;
  std::vector<std::pair<size_t, size_t>> mapping_;
  int best_ = 0;
  std::set<EditComposition> optimal_;
};

inline OracleResult BruteForceTreeEditDistance(const DepTree& a, const DepTree& b) {
  return BruteForceTed(a, b).Solve();
}

}  // namespace paraprobe::testing

#endif  // PARAPROBE_TESTS_TED_ORACLE_H_
