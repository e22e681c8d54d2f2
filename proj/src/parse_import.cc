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

#include "paraprobe/parse_import.h"

#include <charconv>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "paraprobe/errors.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

std::string SentId(std::string_view example_id, int position) {
  return fmt::format("{}:{}", example_id, position);
}

std::string ParseRequestLine(const ParseRequest& request) {
  return nlohmann::json{{"example_id", request.example_id}, {"sentences", request.sentences}}
      .dump();
}

std::vector<ParseRequest> ReadParseRequests(std::string_view text) {
  std::vector<ParseRequest> out;
  int line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    if (StripAscii(line).empty()) continue;
    ParseRequest req;
    try {
      const auto doc = nlohmann::json::parse(line);
      req.example_id = doc.at("example_id").get<std::string>();
      req.sentences = doc.at("sentences").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse, fmt::format("request line {}: {}", line_no, e.what()));
    }
    if (req.sentences.empty()) {
      throw Error(ErrorKind::kParse, fmt::format("request line {}: no sentences", line_no));
    }
    for (const std::string& s : req.sentences) {
      if (StripAscii(s).empty()) {
        throw Error(ErrorKind::kParse, fmt::format("request line {}: empty sentence", line_no));
      }
    }
    out.push_back(std::move(req));
  }
  return out;
}

ImportedParses ImportConllu(std::string_view conllu, const ParseRequest& request) {
  const std::string prefix = request.example_id + ":";
  std::vector<std::optional<DepTree>> slots(request.sentences.size());
  std::string parser;
  for (ConlluSentence& sentence : ReadConllu(conllu)) {
    for (const auto& [key, value] : sentence.comments) {
      if (key == "parser" && parser.empty()) parser = value;
    }
    const std::string& id = sentence.tree.sent_id();
    int position = -1;
    if (id.rfind(prefix, 0) == 0) {
      const char* begin = id.data() + prefix.size();
      const char* end = id.data() + id.size();
      auto [ptr, ec] = std::from_chars(begin, end, position);
      if (ec != std::errc() || ptr != end) position = -1;
    }
    if (position < 0 || position >= static_cast<int>(slots.size())) {
      throw Error(ErrorKind::kParse,
                  fmt::format("{}: unexpected sent_id '{}'", request.example_id, id));
    }
    if (slots[position]) {
      throw Error(ErrorKind::kParse,
                  fmt::format("{}: duplicate sent_id '{}'", request.example_id, id));
    }
    if (!sentence.tree.text().empty() &&
        sentence.tree.text() != request.sentences[position]) {
      throw Error(ErrorKind::kParse,
                  fmt::format("{}: text of '{}' does not match the request (\"{}\" vs \"{}\")",
                              request.example_id, id, sentence.tree.text(),
                              request.sentences[position]));
    }
    slots[position] = std::move(sentence.tree);
  }
  if (!slots[0]) {
    throw Error(ErrorKind::kStructure,
                fmt::format("{}: the original question has no parse", request.example_id));
  }
  ImportedParses out{.original = std::move(*slots[0]), .parser = std::move(parser)};
  out.candidates.assign(std::make_move_iterator(slots.begin() + 1),
                        std::make_move_iterator(slots.end()));
  return out;
}

std::filesystem::path ConlluPathFor(const std::filesystem::path& dir,
                                    std::string_view example_id) {
  return dir / (SafeFileName(example_id) + ".conllu");
}

std::filesystem::path RequestPathFor(const std::filesystem::path& dir,
                                     std::string_view example_id) {
  return dir / (SafeFileName(example_id) + ".jsonl");
}

}  // namespace paraprobe
