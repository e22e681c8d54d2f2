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

#ifndef PARAPROBE_DEP_TREE_H_
#define PARAPROBE_DEP_TREE_H_

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paraprobe {

// One token of a dependency parse. `lemma` may be empty (CoNLL-U "_").
struct DepNode {
  std::string form;
  std::string lemma;
  std::string upos;
};

// Node identity used by tree edit distance: lowercased lemma (or surface form
// when the lemma is missing) followed by "(UPOS)", e.g. "have(VERB)".
std::string NodeLabel(const DepNode& node);

// An ordered, rooted dependency tree. Node i (0-based) is the token with
// CoNLL-U ID i + 1; children are kept in ascending token order, which is the
// sibling order used by ordered-tree edit distance.
class DepTree {
 public:
  // `heads[i]` is the CoNLL-U HEAD of token i + 1: 0 for the root, otherwise
  // the 1-based ID of its parent. Throws Error(kStructure) on multiple or
  // missing roots, cycles and out-of-range heads.
  static DepTree Create(std::vector<DepNode> nodes, std::span<const int> heads);

  // Convenience for tests and synthetic trees: node i gets `labels[i]` as its
  // lemma and "X" as UPOS unless the label already carries "(POS)".
  static DepTree FromLabels(std::span<const std::string> labels,
                            std::span<const int> heads);

  size_t size() const { return nodes_.size(); }
  int root() const { return root_; }
  const DepNode& node(int i) const { return nodes_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  // -1 for the root.
  int parent(int i) const { return parents_[i]; }
  std::span<const int> children(int i) const { return children_[i]; }

  // Metadata carried over from CoNLL-U comments, if present.
  const std::string& sent_id() const { return sent_id_; }
  const std::string& text() const { return text_; }
  void set_sent_id(std::string id) { sent_id_ = std::move(id); }
  void set_text(std::string text) { text_ = std::move(text); }

  // Bracket notation, e.g. "have(VERB){singer(NOUN){...}do(AUX)}". Useful in
  // test failure output.
  std::string ToBracketString() const;

 private:
  DepTree() = default;

  std::vector<DepNode> nodes_;
  std::vector<std::string> labels_;
  std::vector<int> parents_;
  std::vector<std::vector<int>> children_;
  int root_ = -1;
  std::string sent_id_;
  std::string text_;
};

// One sentence block from a CoNLL-U document plus any '#' comments that
// preceded it ("parser", "sent_id", ... keyed without the leading '#').
struct ConlluSentence {
  DepTree tree;
  std::vector<std::pair<std::string, std::string>> comments;
};

// Parses CoNLL-U text: ten tab-separated columns, blank-line separated
// sentences, '#' comments. Multiword-token ranges ("3-4") and empty nodes
// ("5.1") are skipped. Malformed lines throw Error(kParse) naming the 1-based
// line number; cycles and multiple roots throw Error(kStructure).
std::vector<ConlluSentence> ReadConllu(std::string_view text);

// Same as ReadConllu but returns only the trees.
std::vector<DepTree> ReadConlluTrees(std::string_view text);

}  // namespace paraprobe

#endif  // PARAPROBE_DEP_TREE_H_
