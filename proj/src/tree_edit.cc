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

#include "paraprobe/tree_edit.h"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace paraprobe {
namespace {

// Postorder view of a tree. Arrays are 1-based to match the usual statement
// of the algorithm; index 0 is unused.
struct PostorderTree {
  std::vector<int> label;     // interned label per postorder node
  std::vector<int> leftmost;  // postorder index of the leftmost leaf descendant
  std::vector<int> keyroots;  // ascending

  int size() const { return static_cast<int>(label.size()) - 1; }
};

PostorderTree Flatten(const DepTree& tree,
                      std::unordered_map<std::string, int>& interner) {
  PostorderTree out;
  const int n = static_cast<int>(tree.size());
  out.label.assign(n + 1, 0);
  out.leftmost.assign(n + 1, 0);

  // Iterative postorder so deep chains cannot overflow the stack.
  int next = 0;
  struct Frame {
    int node;
    size_t child;
    int first_leaf;
  };
  std::vector<Frame> stack = {{tree.root(), 0, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    auto kids = tree.children(top.node);
    if (top.child < kids.size()) {
      const int c = kids[top.child++];
      stack.push_back({c, 0, 0});
      continue;
    }
    const int idx = ++next;
    const auto [it, inserted] = interner.try_emplace(
        tree.label(top.node), static_cast<int>(interner.size()));
    out.label[idx] = it->second;
    out.leftmost[idx] = kids.empty() ? idx : top.first_leaf;
    const int finished_leftmost = out.leftmost[idx];
    stack.pop_back();
    if (!stack.empty() && stack.back().child == 1) {
      stack.back().first_leaf = finished_leftmost;
    }
  }

  // A keyroot is the highest node among those sharing its leftmost leaf.
  std::vector<int> highest(n + 1, 0);
  for (int i = 1; i <= n; ++i) highest[out.leftmost[i]] = i;
  for (int i = 1; i <= n; ++i) {
    if (highest[out.leftmost[i]] == i) out.keyroots.push_back(i);
  }
  return out;
}

int ZhangShasha(const PostorderTree& a, const PostorderTree& b) {
  const int n = a.size();
  const int m = b.size();
  std::vector<int> treedist((n + 1) * (m + 1), 0);
  auto td = [&](int i, int j) -> int& { return treedist[i * (m + 1) + j]; };
  std::vector<int> forest;

  for (int i : a.keyroots) {
    for (int j : b.keyroots) {
      const int li = a.leftmost[i];
      const int lj = b.leftmost[j];
      const int rows = i - li + 2;
      const int cols = j - lj + 2;
      forest.assign(static_cast<size_t>(rows) * cols, 0);
      // fd(x, y) covers a[li..li+x-1] and b[lj..lj+y-1].
      auto fd = [&](int x, int y) -> int& { return forest[x * cols + y]; };
      for (int x = 1; x < rows; ++x) fd(x, 0) = fd(x - 1, 0) + 1;
      for (int y = 1; y < cols; ++y) fd(0, y) = fd(0, y - 1) + 1;
      for (int x = 1; x < rows; ++x) {
        const int ai = li + x - 1;
        for (int y = 1; y < cols; ++y) {
          const int bj = lj + y - 1;
          const int del = fd(x - 1, y) + 1;
          const int ins = fd(x, y - 1) + 1;
          if (a.leftmost[ai] == li && b.leftmost[bj] == lj) {
            const int sub = fd(x - 1, y - 1) + (a.label[ai] == b.label[bj] ? 0 : 1);
            fd(x, y) = std::min({del, ins, sub});
            td(ai, bj) = fd(x, y);
          } else {
            const int px = a.leftmost[ai] - li;
            const int py = b.leftmost[bj] - lj;
            fd(x, y) = std::min({del, ins, fd(px, py) + td(ai, bj)});
          }
        }
      }
    }
  }
  return td(n, m);
}

}  // namespace

int TreeEditDistance(const DepTree& a, const DepTree& b) {
  std::unordered_map<std::string, int> interner;
  const PostorderTree pa = Flatten(a, interner);
  const PostorderTree pb = Flatten(b, interner);
  return ZhangShasha(pa, pb);
}

double NormalizedTed(int ted, const DepTree& a, const DepTree& b) {
  return static_cast<double>(ted) / static_cast<double>(a.size() + b.size());
}

std::vector<int> BatchTreeEditDistance(const DepTree& original,
                                       std::span<const DepTree> candidates) {
  const auto count = static_cast<long>(candidates.size());
  std::vector<int> out(candidates.size(), 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    out[i] = TreeEditDistance(original, candidates[i]);
  }
  return out;
}

std::vector<int> BatchTreeEditDistanceSerial(const DepTree& original,
                                             std::span<const DepTree> candidates) {
  std::vector<int> out;
  out.reserve(candidates.size());
  for (const DepTree& c : candidates) out.push_back(TreeEditDistance(original, c));
  return out;
}

}  // namespace paraprobe
