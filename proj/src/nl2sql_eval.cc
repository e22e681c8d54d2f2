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

#include "paraprobe/nl2sql_eval.h"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"
#include "paraprobe/parallel.h"
#include "paraprobe/prompt_assets.h"
#include "paraprobe/text_util.h"

namespace paraprobe {

std::string_view Nl2SqlPromptTemplate() { return assets::kNl2SqlPrompt; }

std::string BuildNl2SqlPrompt(std::string_view question,
                              std::span<const std::string> context_turns,
                              std::string_view schema_text) {
  std::string context;
  if (!context_turns.empty()) {
    context = "Dialogue context:\n";
    for (const std::string& turn : context_turns) context += turn + "\n";
    context += "\n";
  }
  return FillTemplate(Nl2SqlPromptTemplate(), {{"schema_definitions", std::string(schema_text)},
                                               {"dialogue_context", context},
                                               {"question", std::string(question)}});
}

std::string ExtractSql(std::string_view reply) {
  std::string_view sql = reply;
  const size_t fence = reply.find("```");
  if (fence != std::string_view::npos) {
    // Skip the info string ("sql", "sqlite", ...) on the opening line.
    size_t body = reply.find('\n', fence + 3);
    body = body == std::string_view::npos ? reply.size() : body + 1;
    const size_t close = reply.find("```", body);
    sql = reply.substr(body, close == std::string_view::npos ? std::string_view::npos
                                                             : close - body);
  }
  sql = StripAscii(sql);
  if (sql.empty()) throw Error(ErrorKind::kPrediction, "model reply contains no SQL");
  return std::string(sql);
}

std::string PredictSql(std::string_view question, std::span<const std::string> context_turns,
                       std::string_view schema_text, TextGenClient& client) {
  std::string reply;
  try {
    reply = client.Complete({.user = BuildNl2SqlPrompt(question, context_turns, schema_text)});
  } catch (const Error& e) {
    throw Error(ErrorKind::kPrediction, e.what());
  }
  return ExtractSql(reply);
}

PredictFn DirectPredictor(TextGenClient& client) {
  return [&client](const Example& example, const std::string& question) {
    return PredictSql(question, example.context_turns, example.schema_text, client);
  };
}

PairedEvaluator::PairedEvaluator(const Benchmark& benchmark, ExecLimits limits, int workers)
    : benchmark_(benchmark), limits_(limits), workers_(workers) {}

const GoldStatus& PairedEvaluator::Gold(const Example& example) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = gold_.find(example.id);
    if (it != gold_.end()) return it->second;
  }
  GoldStatus status;
  status.ordered = HasOrderBy(example.gold_sql);
  try {
    status.result = ExecuteSql(benchmark_.DatabasePath(example.db_id), example.gold_sql, limits_);
    status.usable = true;
  } catch (const Error& e) {
    status.error = fmt::format("{}: {}", ErrorKindName(e.kind()), e.what());
    spdlog::warn("{}: gold SQL unusable: {}", example.id, status.error);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return gold_.emplace(example.id, std::move(status)).first->second;
}

ItemOutcome PairedEvaluator::Score(const Example& example, int rank,
                                   const std::string& question, const std::string& model_id,
                                   const PredictFn& predict) {
  ItemOutcome out{.model_id = model_id,
                  .example_id = example.id,
                  .rank = rank,
                  .question = question};
  const GoldStatus& gold = Gold(example);
  try {
    if (!gold.usable) throw Error(ErrorKind::kExecution, "gold SQL unusable");
    out.predicted_sql = predict(example, question);
    const ResultSet pred =
        ExecuteSql(benchmark_.DatabasePath(example.db_id), out.predicted_sql, limits_);
    out.correct = ResultsEquivalent(gold.result, pred, gold.ordered);
  } catch (const Error& e) {
    out.error_class = std::string(ErrorKindName(e.kind()));
    out.error_message = e.what();
  } catch (const std::exception& e) {
    out.error_class = "internal";
    out.error_message = e.what();
  }
  return out;
}

std::optional<RankEvaluation> PairedEvaluator::EvaluateRank(const ParaphraseIndex& paraphrases,
                                                            int rank,
                                                            const std::string& model_id,
                                                            const PredictFn& predict) {
  if (rank < 1) throw Error(ErrorKind::kConfig, "rank must be >= 1");
  struct Pair {
    const Example* example;
    const RankedParaphrase* paraphrase;
  };
  std::vector<Pair> subset;
  for (const Example& ex : benchmark_.examples) {
    const auto it = paraphrases.find(ex.id);
    if (it == paraphrases.end() || !Gold(ex).usable) continue;
    for (const RankedParaphrase& p : it->second) {
      if (p.rank == rank && p.retained) {
        subset.push_back({&ex, &p});
        break;
      }
    }
  }
  if (subset.empty()) {
    spdlog::info("{}: no example retains a rank-{} paraphrase; rank skipped", model_id, rank);
    return std::nullopt;
  }

  std::vector<const Example*> missing;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const Pair& pair : subset) {
      if (!originals_.contains({model_id, pair.example->id})) missing.push_back(pair.example);
    }
  }
  std::vector<ItemOutcome> fresh(missing.size());
  ParallelFor(missing.size(), workers_, [&](size_t i) {
    fresh[i] = Score(*missing[i], 0, missing[i]->question, model_id, predict);
  });
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (ItemOutcome& o : fresh) originals_.emplace(std::pair{model_id, o.example_id}, std::move(o));
  }

  RankEvaluation eval;
  eval.para_items.resize(subset.size());
  ParallelFor(subset.size(), workers_, [&](size_t i) {
    eval.para_items[i] =
        Score(*subset[i].example, rank, subset[i].paraphrase->text, model_id, predict);
  });

  PairedEvalRecord& rec = eval.record;
  rec.model_id = model_id;
  rec.dataset = benchmark_.release_tag;
  rec.rank = rank;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const Pair& pair : subset) {
      const ItemOutcome& o = originals_.at({model_id, pair.example->id});
      eval.orig_ids.push_back(o.example_id);
      rec.correct_orig += o.correct ? 1 : 0;
    }
  }
  for (const ItemOutcome& o : eval.para_items) {
    eval.para_ids.push_back(o.example_id);
    rec.correct_para += o.correct ? 1 : 0;
  }
  if (eval.orig_ids != eval.para_ids) {
    throw Error(ErrorKind::kStatistics,
                fmt::format("{} rank {}: original and paraphrase subsets differ", model_id, rank));
  }
  rec.n_pairs = static_cast<int>(subset.size());
  rec.acc_orig = static_cast<double>(rec.correct_orig) / rec.n_pairs;
  rec.acc_para = static_cast<double>(rec.correct_para) / rec.n_pairs;
  rec.delta = PairedDelta(rec.correct_para, rec.correct_orig, rec.n_pairs);
  return eval;
}

std::vector<ItemOutcome> PairedEvaluator::OriginalOutcomes(const std::string& model_id) const {
  std::vector<ItemOutcome> out;
  std::lock_guard<std::mutex> lock(mu_);
  for (const Example& ex : benchmark_.examples) {
    const auto it = originals_.find({model_id, ex.id});
    if (it != originals_.end()) out.push_back(it->second);
  }
  return out;
}

}  // namespace paraprobe
