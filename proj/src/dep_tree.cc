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

#include "paraprobe/dep_tree.h"

#include <algorithm>
#include <charconv>
#include <utility>

#include <fmt/format.h>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

std::string NodeLabel(const DepNode& node) {
  const std::string& base =
      (node.lemma.empty() || node.lemma == "_") ? node.form : node.lemma;
  return fmt::format("{}({})", AsciiLower(base), node.upos);
}

DepTree DepTree::Create(std::vector<DepNode> nodes, std::span<const int> heads) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw Error(ErrorKind::kStructure, "dependency tree is empty");
  if (static_cast<int>(heads.size()) != n) {
    throw Error(ErrorKind::kStructure,
                fmt::format("got {} heads for {} tokens", heads.size(), n));
  }
  DepTree tree;
  tree.parents_.assign(n, -1);
  tree.children_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    const int head = heads[i];
    if (head < 0 || head > n) {
      throw Error(ErrorKind::kStructure,
                  fmt::format("token {} has out-of-range head {}", i + 1, head));
    }
    if (head == i + 1) {
      throw Error(ErrorKind::kStructure,
                  fmt::format("token {} is its own head", i + 1));
    }
    if (head == 0) {
      if (tree.root_ >= 0) {
        throw Error(ErrorKind::kStructure,
                    fmt::format("multiple roots: tokens {} and {}",
                                tree.root_ + 1, i + 1));
      }
      tree.root_ = i;
    } else {
      tree.parents_[i] = head - 1;
      // Pushing in token order keeps every child list sorted.
      tree.children_[head - 1].push_back(i);
    }
  }
  if (tree.root_ < 0) throw Error(ErrorKind::kStructure, "no root token");

  // One root plus n - 1 parent links form a tree iff every node reaches the
  // root.
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {tree.root_};
  int visited = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    ++visited;
    for (int c : tree.children_[v]) stack.push_back(c);
  }
  if (visited != n) {
    const auto stray = std::find(seen.begin(), seen.end(), 0) - seen.begin();
    throw Error(ErrorKind::kStructure,
                fmt::format("cycle in HEAD column: token {} does not reach the root",
                            stray + 1));
  }

  tree.labels_.reserve(n);
  for (const DepNode& node : nodes) tree.labels_.push_back(NodeLabel(node));
  tree.nodes_ = std::move(nodes);
  return tree;
}

DepTree DepTree::FromLabels(std::span<const std::string> labels,
                            std::span<const int> heads) {
  std::vector<DepNode> nodes;
  nodes.reserve(labels.size());
  for (const std::string& label : labels) {
    const size_t open = label.rfind('(');
    if (open != std::string::npos && open > 0 && label.back() == ')') {
      std::string lemma = label.substr(0, open);
      std::string pos = label.substr(open + 1, label.size() - open - 2);
      nodes.push_back({lemma, lemma, std::move(pos)});
    } else {
      nodes.push_back({label, label, "X"});
    }
  }
  return Create(std::move(nodes), heads);
}

std::string DepTree::ToBracketString() const {
  std::string out;
  auto emit = [&](auto&& self, int v) -> void {
    out += labels_[v];
    if (children_[v].empty()) return;
    out += '{';
    for (int c : children_[v]) self(self, c);
    out += '}';
  };
  emit(emit, root_);
  return out;
}

namespace {

struct PendingSentence {
  int first_line = 0;
  std::vector<DepNode> nodes;
  std::vector<int> heads;
  std::vector<std::pair<std::string, std::string>> comments;
};

void Flush(PendingSentence& pending, std::vector<ConlluSentence>& out) {
  if (pending.nodes.empty()) {
    pending.comments.clear();
    return;
  }
  try {
    DepTree tree = DepTree::Create(std::move(pending.nodes), pending.heads);
    for (const auto& [key, value] : pending.comments) {
      if (key == "sent_id") tree.set_sent_id(value);
      if (key == "text") tree.set_text(value);
    }
    out.push_back({std::move(tree), std::move(pending.comments)});
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("sentence starting at line {}: {}",
                                      pending.first_line, e.what()));
  }
  pending = PendingSentence{};
}

bool ParseInt(std::string_view text, int& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<ConlluSentence> ReadConllu(std::string_view text) {
  std::vector<ConlluSentence> out;
  PendingSentence pending;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (StripAscii(line).empty()) {
      Flush(pending, out);
      continue;
    }
    if (line.front() == '#') {
      std::string_view body = StripAscii(line.substr(1));
      const size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        pending.comments.emplace_back(std::string(body), std::string());
      } else {
        pending.comments.emplace_back(std::string(StripAscii(body.substr(0, eq))),
                                      std::string(StripAscii(body.substr(eq + 1))));
      }
      continue;
    }
    std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != 10) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: expected 10 tab-separated columns, got {}",
                              line_no, cols.size()));
    }
    // Multiword-token ranges and empty nodes do not take part in the tree.
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    int id = 0;
    int head = 0;
    if (!ParseInt(cols[0], id)) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: non-numeric ID '{}'", line_no, cols[0]));
    }
    if (!ParseInt(cols[6], head)) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: non-numeric HEAD '{}'", line_no, cols[6]));
    }
    if (pending.nodes.empty()) pending.first_line = line_no;
    if (id != static_cast<int>(pending.nodes.size()) + 1) {
      throw Error(ErrorKind::kParse,
                  fmt::format("line {}: token ID {} out of sequence", line_no, id));
    }
    pending.nodes.push_back({std::string(cols[1]),
                             cols[2] == "_" ? std::string() : std::string(cols[2]),
                             std::string(cols[3])});
    pending.heads.push_back(head);
  }
  Flush(pending, out);
  return out;
}

std::vector<DepTree> ReadConlluTrees(std::string_view text) {
  std::vector<ConlluSentence> sentences = ReadConllu(text);
  std::vector<DepTree> trees;
  trees.reserve(sentences.size());
  for (ConlluSentence& s : sentences) trees.push_back(std::move(s.tree));
  return trees;
}

}  // namespace paraprobe
