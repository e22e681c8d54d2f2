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

// File handoff with the external dependency parser. For each example the
// pipeline writes a request file with one JSON line
//   {"example_id": "...", "sentences": ["<original>", "<candidate 1>", ...]}
// and expects "<conllu_dir>/<example_id>.conllu" back with one sentence
// block per request sentence, in order, each tagged
//   # sent_id = <example_id>:<position>
// where position 0 is the original question. A block the parser could not
// produce may be left as comments only; that candidate is then skipped.

#ifndef PARAPROBE_PARSE_IMPORT_H_
#define PARAPROBE_PARSE_IMPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paraprobe/dep_tree.h"

namespace paraprobe {

struct ParseRequest {
  std::string example_id;
  std::vector<std::string> sentences;

  bool operator==(const ParseRequest&) const = default;
};

std::string SentId(std::string_view example_id, int position);

std::string ParseRequestLine(const ParseRequest& request);

// Reads every request line of a request file. Throws Error(kParse) on
// malformed lines, empty sentence lists and empty sentences.
std::vector<ParseRequest> ReadParseRequests(std::string_view text);

struct ImportedParses {
  DepTree original;
  // One slot per candidate; nullopt where the parser produced no tree.
  std::vector<std::optional<DepTree>> candidates;
  std::string parser;  // from a "# parser = ..." comment, if any
};

// Matches CoNLL-U sentences to `request` by sent_id. Throws Error(kParse)
// for unknown, duplicate or missing sent_ids on parsed blocks and when a
// "# text" comment disagrees with the requested sentence; throws
// Error(kStructure) when the original question has no tree.
ImportedParses ImportConllu(std::string_view conllu, const ParseRequest& request);

std::filesystem::path ConlluPathFor(const std::filesystem::path& dir,
                                    std::string_view example_id);
std::filesystem::path RequestPathFor(const std::filesystem::path& dir,
                                     std::string_view example_id);

}  // namespace paraprobe

#endif  // PARAPROBE_PARSE_IMPORT_H_
