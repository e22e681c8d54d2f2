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

#include "paraprobe/semantic_filter.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <fmt/format.h>

#include "paraprobe/errors.h"

namespace paraprobe {

void ValidateFilterConfig(const FilterConfig& config) {
  if (!(config.cosine_threshold >= -1.0 && config.cosine_threshold <= 1.0)) {
    throw Error(ErrorKind::kConfig,
                fmt::format("cosine_threshold {} outside [-1, 1]", config.cosine_threshold));
  }
  for (size_t i = 0; i < config.jaccard_bins.size(); ++i) {
    const Interval& bin = config.jaccard_bins[i];
    if (!(bin.lo < bin.hi)) {
      throw Error(ErrorKind::kConfig, fmt::format("empty Jaccard bin [{}, {})", bin.lo, bin.hi));
    }
    if (i > 0 && bin.lo < config.jaccard_bins[i - 1].hi) {
      throw Error(ErrorKind::kConfig, "Jaccard bins must be ascending and non-overlapping");
    }
  }
  if (config.length_bins < 1 || config.jaccard_hist_bins < 1) {
    throw Error(ErrorKind::kConfig, "histogram bin counts must be positive");
  }
}

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::kNumeric,
                fmt::format("dimension mismatch: {} vs {}", u.size(), v.size()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw Error(ErrorKind::kNumeric, "zero vector");
  return std::clamp(dot / std::sqrt(uu * vv), -1.0, 1.0);
}

std::vector<RankedParaphrase> ApplyCosineFilter(std::vector<RankedParaphrase> ranked,
                                                const std::string& original_text,
                                                EmbedClient& client,
                                                const FilterConfig& config) {
  std::vector<std::string> texts = {original_text};
  for (const RankedParaphrase& p : ranked) texts.push_back(p.text);
  std::vector<Embedding> vectors;
  try {
    vectors = client.Embed(texts);
    if (vectors.size() != texts.size()) {
      throw Error(ErrorKind::kFilter, fmt::format("embedder returned {} vectors for {} texts",
                                                  vectors.size(), texts.size()));
    }
    for (size_t i = 0; i < ranked.size(); ++i) {
      ranked[i].cosine = CosineSimilarity(vectors[0], vectors[i + 1]);
      ranked[i].retained = ranked[i].cosine >= config.cosine_threshold;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kFilter) throw;
    throw Error(ErrorKind::kFilter, fmt::format("embedding failed: {}", e.what()));
  }
  return ranked;
}

namespace {

// Decodes one UTF-8 code point at `pos`, advancing it. Invalid bytes decode
// as themselves so tokenization never fails on bad input.
char32_t DecodeUtf8(std::string_view s, size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  int extra = 0;
  char32_t cp = b0;
  if (b0 >= 0xF0 && b0 < 0xF8) {
    extra = 3;
    cp = b0 & 0x07;
  } else if (b0 >= 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  }
  if (b0 >= 0xF8 || pos + extra >= s.size()) {
    ++pos;
    return b0;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

bool IsUnicodeSpace(char32_t c) {
  return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 ||
         c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool IsPunctuation(char32_t c) {
  if (c < 0x80) return std::ispunct(static_cast<int>(c)) != 0;
  return c == 0xA1 || c == 0xAB || c == 0xB7 || c == 0xBB || c == 0xBF ||
         (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0xFF01 && c <= 0xFF0F);
}

struct CodePoint {
  char32_t value;
  size_t begin;
  size_t end;
};

void EmitToken(std::string_view text, std::span<const CodePoint> piece,
               std::vector<std::string>& out) {
  size_t first = 0;
  size_t last = piece.size();
  while (first < last && IsPunctuation(piece[first].value)) ++first;
  while (last > first && IsPunctuation(piece[last - 1].value)) --last;
  if (first == last) return;
  std::string token(text.substr(piece[first].begin, piece[last - 1].end - piece[first].begin));
  for (char& ch : token) {
    if (static_cast<unsigned char>(ch) < 0x80) {
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
  }
  out.push_back(std::move(token));
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::vector<CodePoint> piece;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t begin = pos;
    const char32_t c = DecodeUtf8(text, pos);
    if (IsUnicodeSpace(c)) {
      EmitToken(text, piece, tokens);
      piece.clear();
    } else {
      piece.push_back({c, begin, pos});
    }
  }
  EmitToken(text, piece, tokens);
  return tokens;
}

double Jaccard(std::string_view a, std::string_view b) {
  const std::vector<std::string> ta = Tokenize(a);
  const std::vector<std::string> tb = Tokenize(b);
  if (ta.empty() || tb.empty()) {
    throw Error(ErrorKind::kTokenization, "Jaccard input has no tokens");
  }
  const std::set<std::string> sa(ta.begin(), ta.end());
  const std::set<std::string> sb(tb.begin(), tb.end());
  size_t common = 0;
  for (const std::string& t : sa) common += sb.count(t);
  const size_t uni = sa.size() + sb.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

OverlapRecord MakeOverlapRecord(std::string example_id, int rank,
                                std::string_view original,
                                std::string_view paraphrase) {
  return OverlapRecord{
      .example_id = std::move(example_id),
      .rank = rank,
      .jaccard = Jaccard(original, paraphrase),
      .orig_len = static_cast<int>(Tokenize(original).size()),
      .para_len = static_cast<int>(Tokenize(paraphrase).size()),
  };
}

DistributionTables BuildDistributionTables(std::span<const OverlapRecord> records,
                                           const std::set<int>& ranks,
                                           const FilterConfig& config) {
  DistributionTables tables;
  std::vector<const OverlapRecord*> selected;
  for (const OverlapRecord& r : records) {
    if (ranks.contains(r.rank)) selected.push_back(&r);
  }
  if (selected.empty()) return tables;

  int min_len = selected.front()->para_len;
  int max_len = min_len;
  for (const OverlapRecord* r : selected) {
    min_len = std::min(min_len, r->para_len);
    max_len = std::max(max_len, r->para_len);
  }
  const int span = max_len - min_len + 1;
  const int width = (span + config.length_bins - 1) / config.length_bins;
  const int length_bins = (span + width - 1) / width;
  const int jbins = config.jaccard_hist_bins;

  for (int rank : ranks) {
    std::vector<int> length_counts(length_bins, 0);
    std::vector<int> jaccard_counts(jbins, 0);
    for (const OverlapRecord* r : selected) {
      if (r->rank != rank) continue;
      ++length_counts[(r->para_len - min_len) / width];
      const int j = std::min(jbins - 1, static_cast<int>(std::floor(r->jaccard * jbins)));
      ++jaccard_counts[std::max(0, j)];
    }
    for (int b = 0; b < length_bins; ++b) {
      tables.lengths.push_back({rank, static_cast<double>(min_len + b * width),
                                static_cast<double>(min_len + (b + 1) * width),
                                length_counts[b]});
    }
    for (int b = 0; b < jbins; ++b) {
      tables.jaccard.push_back({rank, static_cast<double>(b) / jbins,
                                static_cast<double>(b + 1) / jbins, jaccard_counts[b]});
    }
  }
  return tables;
}

std::vector<HistogramRow> CosineHistogram(std::span<const double> cosines, int bins) {
  if (bins < 1) throw Error(ErrorKind::kCalibration, "need at least one bin");
  std::vector<int> counts(bins, 0);
  for (double c : cosines) {
    const int b = static_cast<int>(std::floor((c + 1.0) / 2.0 * bins));
    ++counts[std::clamp(b, 0, bins - 1)];
  }
  std::vector<HistogramRow> rows;
  for (int b = 0; b < bins; ++b) {
    rows.push_back({0, -1.0 + 2.0 * b / bins, -1.0 + 2.0 * (b + 1) / bins, counts[b]});
  }
  return rows;
}

}  // namespace paraprobe
