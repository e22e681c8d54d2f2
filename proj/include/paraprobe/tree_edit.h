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

#ifndef PARAPROBE_TREE_EDIT_H_
#define PARAPROBE_TREE_EDIT_H_

#include <span>
#include <vector>

#include "paraprobe/dep_tree.h"

namespace paraprobe {

// Ordered-tree edit distance (Zhang & Shasha, 1989) with unit costs: inserting
// or deleting a node costs 1, relabeling costs 0 when labels are equal and 1
// otherwise. Runs in O(|a| |b| min(depth, leaves)^2) time and O(|a| |b|) space.
int TreeEditDistance(const DepTree& a, const DepTree& b);

// TED normalized by the combined node count, so the result lies in [0, 1].
double NormalizedTed(int ted, const DepTree& a, const DepTree& b);

// Distances from `original` to every candidate. The parallel form splits the
// candidates across OpenMP threads; the serial form is the reference it is
// tested against. Both return results in candidate order.
std::vector<int> BatchTreeEditDistance(const DepTree& original,
                                       std::span<const DepTree> candidates);
std::vector<int> BatchTreeEditDistanceSerial(const DepTree& original,
                                             std::span<const DepTree> candidates);

}  // namespace paraprobe

#endif  // PARAPROBE_TREE_EDIT_H_
