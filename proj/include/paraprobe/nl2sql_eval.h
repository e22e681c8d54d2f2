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

#ifndef PARAPROBE_NL2SQL_EVAL_H_
#define PARAPROBE_NL2SQL_EVAL_H_

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paraprobe/ingest.h"
#include "paraprobe/records.h"
#include "paraprobe/sql_exec.h"
#include "paraprobe/syntax_rank.h"
#include "paraprobe/text_gen_client.h"

namespace paraprobe {

std::string_view Nl2SqlPromptTemplate();

std::string BuildNl2SqlPrompt(std::string_view question,
                              std::span<const std::string> context_turns,
                              std::string_view schema_text);

// Contents of the first fenced code block, else the whole reply, trimmed.
// Throws Error(kPrediction) when that leaves nothing.
std::string ExtractSql(std::string_view reply);

// One model call for `question`; client failures become Error(kPrediction).
std::string PredictSql(std::string_view question, std::span<const std::string> context_turns,
                       std::string_view schema_text, TextGenClient& client);

// Produces SQL for `question` asked in the setting of `example` (its schema
// and dialogue context). Throws on failure. The pipeline wraps PredictSql
// with its stage cache behind this hook.
using PredictFn = std::function<std::string(const Example& example, const std::string& question)>;

PredictFn DirectPredictor(TextGenClient& client);

struct ItemOutcome {
  std::string model_id;
  std::string example_id;
  int rank = 0;  // 0 for the original question
  std::string question;
  std::string predicted_sql;
  bool correct = false;
  std::string error_class;  // empty when the prediction executed
  std::string error_message;
};

struct GoldStatus {
  bool usable = false;
  bool ordered = false;
  std::string error;
  ResultSet result;
};

struct RankEvaluation {
  PairedEvalRecord record;
  // Example ids counted into acc_orig and acc_para, gathered independently so
  // tests can check the pairing.
  std::vector<std::string> orig_ids;
  std::vector<std::string> para_ids;
  std::vector<ItemOutcome> para_items;
};

using ParaphraseIndex = std::map<std::string, std::vector<RankedParaphrase>>;

class PairedEvaluator {
 public:
  PairedEvaluator(const Benchmark& benchmark, ExecLimits limits, int workers = 1);

  // Executes the example's gold SQL once and caches the outcome. An example
  // whose gold SQL fails is unusable and leaves every denominator.
  const GoldStatus& Gold(const Example& example);

  // Predicts, executes and scores one question. Never throws: prediction,
  // execution, timeout and truncation failures score 0 with error_class set.
  ItemOutcome Score(const Example& example, int rank, const std::string& question,
                    const std::string& model_id, const PredictFn& predict);

  // Paired accuracy at `rank` over the usable examples that retain a
  // paraphrase of that rank. Original-question outcomes are computed once per
  // (model, example) and reused across ranks. Returns nullopt, with a log
  // line, when no example qualifies.
  std::optional<RankEvaluation> EvaluateRank(const ParaphraseIndex& paraphrases, int rank,
                                             const std::string& model_id,
                                             const PredictFn& predict);

  // Cached original-question outcomes of `model_id`, in benchmark order.
  std::vector<ItemOutcome> OriginalOutcomes(const std::string& model_id) const;

 private:
  const Benchmark& benchmark_;
  ExecLimits limits_;
  int workers_;
  mutable std::mutex mu_;
  std::map<std::string, GoldStatus> gold_;
  std::map<std::pair<std::string, std::string>, ItemOutcome> originals_;
};

}  // namespace paraprobe

#endif  // PARAPROBE_NL2SQL_EVAL_H_
