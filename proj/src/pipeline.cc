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
#include "paraprobe/pipeline.h"

#include <sqlite3.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <utility>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "paraprobe/embed_client.h"
#include "paraprobe/errors.h"
#include "paraprobe/ingest.h"
#include "paraprobe/nl2sql_eval.h"
#include "paraprobe/parallel.h"
#include "paraprobe/paraphrase.h"
#include "paraprobe/parse_import.h"
#include "paraprobe/rank_stats.h"
#include "paraprobe/stage_cache.h"
#include "paraprobe/syntax_rank.h"
#include "paraprobe/text_gen_client.h"
#include "paraprobe/text_util.h"
#include "paraprobe/tree_edit.h"
#include "bundle_writer.h"

#ifndef PARAPROBE_VERSION
#define PARAPROBE_VERSION "0.0.0"
#endif

namespace paraprobe {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 8> kStageNames = {
    "ingest", "paraphrase", "parse-import", "rank", "filter", "evaluate", "stats", "report",
};

// Thrown by a stage that leaves nothing for later stages to work on.
struct StageFailure {
  std::string message;
};

struct ExampleState {
  const Example* example = nullptr;
  std::optional<ParaphraseSet> paraphrases;
  std::optional<ImportedParses> parses;
  std::vector<RankedParaphrase> ranked;
  std::optional<Exclusion> excluded;
  std::vector<Exclusion> skipped_items;
  std::map<std::string, std::string> keys;  // stage -> cache key
};

class Run {
 public:
  explicit Run(const RunConfig& config) : config_(config), cache_(config.cache_dir) {}

  RunSummary Execute(Stage until);
  CalibrationReport Calibrate(int sample_size, int bins);

 private:
  void RunStage(Stage stage);
  void Ingest();
  void Paraphrase();
  void ImportParses();
  void Rank();
  void Filter();
  void Evaluate();
  void Stats();
  void Report();

  // Fills `cosine` for the paraphrases of states_[i] for every i in
  // `indices`. Embedding failures exclude the example.
  void EmbedCosines(const std::vector<size_t>& indices);

  std::vector<size_t> Active() const;
  void Exclude(ExampleState& s, Stage stage, std::string error_class, std::string message);
  void RequireSomeActive(Stage stage) const;
  std::vector<RankedRow> RankedView() const;
  std::string PredictKey(const json& fingerprint, const Example& ex,
                         const std::string& question) const;
  void Finish(RunSummary& summary);

  const RunConfig& config_;
  StageCache cache_;
  BundleWriter writer_{config_.output_dir};
  std::optional<Benchmark> bench_;
  std::vector<ExampleState> states_;
  std::optional<PairedEvaluator> evaluator_;
  std::vector<std::string> completed_;
  std::map<std::string, int> calls_;
  json fingerprints_ = json::object();

  std::vector<RankEvaluation> evaluations_;
  std::map<std::string, std::vector<ItemOutcome>> originals_;
  std::vector<TauReport> taus_;
};

std::vector<size_t> Run::Active() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < states_.size(); ++i) {
    if (!states_[i].excluded) out.push_back(i);
  }
  return out;
}

void Run::Exclude(ExampleState& s, Stage stage, std::string error_class, std::string message) {
  spdlog::warn("{} excluded at {}: {}", s.example->id, StageName(stage), message);
  s.excluded = Exclusion{.example_id = s.example->id,
                         .stage = std::string(StageName(stage)),
                         .error_class = std::move(error_class),
                         .message = std::move(message)};
}

std::vector<RankedRow> Run::RankedView() const {
  std::vector<RankedRow> rows;
  for (size_t i : Active()) rows.push_back({&states_[i].example->id, &states_[i].ranked});
  return rows;
}

void Run::RequireSomeActive(Stage stage) const {
  if (Active().empty()) {
    throw StageFailure{fmt::format("{}: every example was excluded", StageName(stage))};
  }
}

void Run::RunStage(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return Ingest();
    case Stage::kParaphrase: return Paraphrase();
    case Stage::kParseImport: return ImportParses();
    case Stage::kRank: return Rank();
    case Stage::kFilter: return Filter();
    case Stage::kEvaluate: return Evaluate();
    case Stage::kStats: return Stats();
    case Stage::kReport: return Report();
  }
}

void Run::Ingest() {
  try {
    bench_ = LoadBenchmark(config_.benchmark_path, config_.benchmark_format, config_.ingest);
  } catch (const Error& e) {
    throw StageFailure{fmt::format("ingest: {}", e.what())};
  }
  if (bench_->examples.empty()) throw StageFailure{"ingest: the benchmark has no examples"};
  states_.resize(bench_->examples.size());
  for (size_t i = 0; i < states_.size(); ++i) states_[i].example = &bench_->examples[i];
  spdlog::info("ingested {} examples from {}", states_.size(), bench_->release_tag);
  writer_.Examples(bench_->examples);
}

void Run::Paraphrase() {
  const json fp = ClientFingerprint(config_.generator, config_.base_dir);
  fingerprints_["generator"] = fp;
  const auto client = MakeTextGenClient(config_.generator, config_.base_dir);
  const GenConfig& gen = config_.generation;
  const std::vector<size_t> active = Active();
  ParallelFor(active.size(), config_.workers, [&](size_t n) {
    ExampleState& s = states_[active[n]];
    const std::string key = StageCache::Key(
        "paraphrase", {{"client", fp},
                       {"prompt", BuildPrompt(*s.example, gen)},
                       {"num_queries", gen.num_queries},
                       {"temperature", gen.temperature},
                       {"max_attempts", gen.max_attempts}});
    s.keys["paraphrase"] = key;
    json value;
    if (auto hit = cache_.Get("paraphrase", key)) {
      value = std::move(*hit);
    } else {
      try {
        const ParaphraseSet set = GenerateParaphrases(*s.example, *client, gen);
        value = {{"candidates", set.candidates},
                 {"generator_model", set.generator_model},
                 {"shortfall", set.shortfall},
                 {"attempts", set.attempts}};
      } catch (const Error& e) {
        value = {{"error_class", ErrorKindName(e.kind())}, {"error", e.what()}};
      }
      cache_.Put("paraphrase", key, value);
    }
    if (value.contains("error")) {
      Exclude(s, Stage::kParaphrase, value["error_class"], value["error"]);
      return;
    }
    s.paraphrases = ParaphraseSet{
        .example_id = s.example->id,
        .candidates = value["candidates"].get<std::vector<std::string>>(),
        .generator_model = value["generator_model"],
        .shortfall = value["shortfall"],
        .attempts = value["attempts"],
    };
  });
  calls_["generator"] = client->calls();
  RequireSomeActive(Stage::kParaphrase);

  std::vector<const ParaphraseSet*> sets;
  for (size_t i : Active()) {
    const ExampleState& s = states_[i];
    sets.push_back(&*s.paraphrases);
    ParseRequest request{s.example->id, {s.example->question}};
    for (const std::string& c : s.paraphrases->candidates) request.sentences.push_back(c);
    writer_.File(RequestPathFor(config_.request_dir, s.example->id),
                 ParseRequestLine(request) + "\n");
  }
  writer_.ParaphraseSets(sets);
}

void Run::ImportParses() {
  const std::vector<size_t> active = Active();
  ParallelFor(active.size(), config_.workers, [&](size_t n) {
    ExampleState& s = states_[active[n]];
    const std::filesystem::path path = ConlluPathFor(config_.conllu_dir, s.example->id);
    if (!std::filesystem::exists(path)) {
      Exclude(s, Stage::kParseImport, "io",
              fmt::format("no parse file {}", path.filename().string()));
      return;
    }
    ParseRequest request{s.example->id, {s.example->question}};
    for (const std::string& c : s.paraphrases->candidates) request.sentences.push_back(c);
    try {
      s.parses = ImportConllu(ReadFile(path), request);
    } catch (const Error& e) {
      Exclude(s, Stage::kParseImport, std::string(ErrorKindName(e.kind())), e.what());
      return;
    }
    int parsed = 0;
    for (size_t k = 0; k < s.parses->candidates.size(); ++k) {
      if (s.parses->candidates[k]) {
        ++parsed;
        continue;
      }
      s.skipped_items.push_back({.example_id = s.example->id,
                                 .stage = "parse-import",
                                 .error_class = "parse",
                                 .message = "no parse for this paraphrase",
                                 .item = fmt::format("candidate {}", k)});
    }
    if (parsed == 0) {
      Exclude(s, Stage::kParseImport, "structure", "no paraphrase has a parse");
    }
  });
  RequireSomeActive(Stage::kParseImport);
}

void Run::Rank() {
  const std::vector<size_t> active = Active();
  ParallelFor(active.size(), config_.workers, [&](size_t n) {
    ExampleState& s = states_[active[n]];
    const ImportedParses& parses = *s.parses;
    std::vector<ParaphraseCandidate> candidates;
    std::vector<DepTree> trees;
    std::vector<int> generation_index;
    json brackets = json::array();
    for (size_t k = 0; k < parses.candidates.size(); ++k) {
      if (!parses.candidates[k]) continue;
      candidates.push_back({s.paraphrases->candidates[k], *parses.candidates[k]});
      trees.push_back(*parses.candidates[k]);
      generation_index.push_back(static_cast<int>(k));
      brackets.push_back(trees.back().ToBracketString());
    }
    const std::string key = StageCache::Key(
        "rank", {{"original", parses.original.ToBracketString()}, {"candidates", brackets}});
    s.keys["rank"] = key;
    std::vector<int> teds;
    if (auto hit = cache_.Get("rank", key)) {
      teds = (*hit)["teds"].get<std::vector<int>>();
    } else {
      teds = BatchTreeEditDistance(parses.original, trees);
      cache_.Put("rank", key, {{"teds", teds}});
    }
    s.ranked = RankByDistance(parses.original, candidates, teds);
    for (RankedParaphrase& p : s.ranked) p.generation_index = generation_index[p.generation_index];
  });
  writer_.Paraphrases(RankedView(), /*filtered=*/false);
}

void Run::EmbedCosines(const std::vector<size_t>& indices) {
  const json fp = ClientFingerprint(config_.embedder, config_.base_dir);
  fingerprints_["embedder"] = fp;
  const auto client = MakeEmbedClient(config_.embedder, config_.base_dir);
  FilterConfig probe = config_.filter;
  probe.cosine_threshold = -1.0;
  ParallelFor(indices.size(), config_.workers, [&](size_t n) {
    ExampleState& s = states_[indices[n]];
    json texts = json::array({s.example->question});
    for (const RankedParaphrase& p : s.ranked) texts.push_back(p.text);
    const std::string key = StageCache::Key("embed", {{"client", fp}, {"texts", texts}});
    s.keys["embed"] = key;
    json value;
    if (auto hit = cache_.Get("embed", key)) {
      value = std::move(*hit);
    } else {
      try {
        const auto scored = ApplyCosineFilter(s.ranked, s.example->question, *client, probe);
        json cosines = json::array();
        for (const RankedParaphrase& p : scored) cosines.push_back(p.cosine);
        value = {{"cosines", cosines}};
      } catch (const Error& e) {
        value = {{"error_class", ErrorKindName(e.kind())}, {"error", e.what()}};
      }
      cache_.Put("embed", key, value);
    }
    if (value.contains("error")) {
      Exclude(s, Stage::kFilter, value["error_class"], value["error"]);
      return;
    }
    const auto cosines = value["cosines"].get<std::vector<double>>();
    for (size_t i = 0; i < s.ranked.size(); ++i) s.ranked[i].cosine = cosines.at(i);
  });
  calls_["embedder"] = client->calls();
}

void Run::Filter() {
  EmbedCosines(Active());
  const double threshold = *config_.cosine_threshold;
  int kept = 0;
  int total = 0;
  for (size_t i : Active()) {
    for (RankedParaphrase& p : states_[i].ranked) {
      p.retained = p.cosine >= threshold;
      kept += p.retained ? 1 : 0;
      ++total;
    }
  }
  spdlog::info("cosine filter at {:.3f} keeps {} of {} paraphrases", threshold, kept, total);
  RequireSomeActive(Stage::kFilter);
  writer_.Paraphrases(RankedView(), /*filtered=*/true);
}

std::string Run::PredictKey(const json& fingerprint, const Example& ex,
                            const std::string& question) const {
  return StageCache::Key(
      "predict", {{"client", fingerprint},
                  {"prompt", BuildNl2SqlPrompt(question, ex.context_turns, ex.schema_text)}});
}

void Run::Evaluate() {
  evaluator_.emplace(*bench_, config_.limits, config_.workers);
  ParaphraseIndex index;
  for (size_t i : Active()) index[states_[i].example->id] = states_[i].ranked;
  fingerprints_["models"] = json::object();

  for (const json& spec : config_.models) {
    const std::string model_id = spec["model"];
    const json fp = ClientFingerprint(spec, config_.base_dir);
    fingerprints_["models"][model_id] = fp;
    const auto client = MakeTextGenClient(spec, config_.base_dir);
    const PredictFn predict = [&](const Example& ex, const std::string& question) {
      const std::string key = PredictKey(fp, ex, question);
      json value;
      if (auto hit = cache_.Get("predict", key)) {
        value = std::move(*hit);
      } else {
        try {
          value = {{"reply", client->Complete(
                                 {.user = BuildNl2SqlPrompt(question, ex.context_turns,
                                                            ex.schema_text)})}};
        } catch (const Error& e) {
          value = {{"error", e.what()}};
        }
        cache_.Put("predict", key, value);
      }
      if (value.contains("error")) {
        throw Error(ErrorKind::kPrediction, value["error"].get<std::string>());
      }
      return ExtractSql(value["reply"].get<std::string>());
    };

    for (int rank = 1; rank <= config_.generation.num_queries; ++rank) {
      if (auto eval = evaluator_->EvaluateRank(index, rank, model_id, predict)) {
        evaluations_.push_back(std::move(*eval));
      }
    }
    calls_["model:" + model_id] = client->calls();

    std::vector<ItemOutcome> originals = evaluator_->OriginalOutcomes(model_id);
    const bool all_failed =
        !originals.empty() &&
        std::all_of(originals.begin(), originals.end(),
                    [](const ItemOutcome& o) { return o.error_class == "prediction"; });
    originals_[model_id] = std::move(originals);
    if (all_failed) {
      throw StageFailure{fmt::format("evaluate: every prediction of {} failed ({})", model_id,
                                     originals_[model_id].front().error_message)};
    }
  }

  int usable = 0;
  for (const Example& ex : bench_->examples) usable += evaluator_->Gold(ex).usable ? 1 : 0;
  spdlog::info("{} of {} gold queries execute", usable, bench_->examples.size());

  std::vector<ItemRow> rows;
  for (const json& spec : config_.models) {
    const std::string model_id = spec["model"];
    const json& fp = fingerprints_["models"][model_id];
    const auto key_of = [&](const ItemOutcome& o) {
      const Example& ex = *std::find_if(bench_->examples.begin(), bench_->examples.end(),
                                        [&](const Example& e) { return e.id == o.example_id; });
      return PredictKey(fp, ex, o.question);
    };
    for (const ItemOutcome& o : originals_[model_id]) rows.push_back({&o, key_of(o)});
    for (const RankEvaluation& eval : evaluations_) {
      if (eval.record.model_id != model_id) continue;
      for (const ItemOutcome& o : eval.para_items) rows.push_back({&o, key_of(o)});
    }
  }
  writer_.PairedEval(evaluations_);
  writer_.Items(rows);
}

void Run::Stats() {
  for (const json& spec : config_.models) {
    const std::string model_id = spec["model"];
    std::vector<PairedEvalRecord> records;
    for (const RankEvaluation& eval : evaluations_) {
      if (eval.record.model_id == model_id) records.push_back(eval.record);
    }
    for (RankFilter filter : {RankFilter::kAll, RankFilter::kAtLeast3}) {
      try {
        TauReport report =
            MakeTauReport(records, filter, config_.bootstrap_resamples, config_.seed);
        report.model_id = model_id;
        report.dataset = bench_->release_tag;
        taus_.push_back(std::move(report));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kStatistics) throw;
        spdlog::warn("{} ({}): no tau: {}", model_id, RankFilterName(filter), e.what());
      }
    }
  }
  writer_.Tau(taus_);
}

void Run::Report() {
  std::vector<OverlapRecord> overlaps;
  std::map<std::pair<std::string, int>, double> jaccard;
  for (size_t i : Active()) {
    const ExampleState& s = states_[i];
    for (const RankedParaphrase& p : s.ranked) {
      if (!p.retained) continue;
      try {
        overlaps.push_back(MakeOverlapRecord(s.example->id, p.rank, s.example->question, p.text));
        jaccard[{s.example->id, p.rank}] = overlaps.back().jaccard;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kTokenization) throw;
        spdlog::warn("{} rank {}: no overlap score: {}", s.example->id, p.rank, e.what());
      }
    }
  }
  writer_.Overlap(overlaps);
  writer_.Distributions(
      BuildDistributionTables(overlaps, config_.histogram_ranks, config_.filter));

  std::vector<std::pair<std::string, std::vector<StratumCurve>>> curves;
  for (const json& spec : config_.models) {
    const std::string model_id = spec["model"];
    std::vector<StratifiedItem> items;
    for (const RankEvaluation& eval : evaluations_) {
      if (eval.record.model_id != model_id) continue;
      for (const ItemOutcome& o : eval.para_items) {
        const auto it = jaccard.find({o.example_id, o.rank});
        if (it == jaccard.end()) continue;
        items.push_back({o.example_id, o.rank, it->second, o.correct});
      }
    }
    curves.emplace_back(model_id, StratifiedCurves(items, config_.filter.jaccard_bins));
  }
  writer_.Stratified(curves);
}

RunSummary Run::Execute(Stage until) {
  if (until >= Stage::kFilter && !config_.cosine_threshold) {
    throw Error(ErrorKind::kConfig,
                "filter.cosine_threshold is not set; run calibrate and pick one");
  }
  std::filesystem::create_directories(config_.output_dir);
  RunSummary summary;
  try {
    for (int s = 0; s <= static_cast<int>(until); ++s) {
      const Stage stage = static_cast<Stage>(s);
      spdlog::info("stage {}", StageName(stage));
      RunStage(stage);
      completed_.emplace_back(StageName(stage));
    }
  } catch (const StageFailure& failure) {
    spdlog::error("{}", failure.message);
    summary.fatal = failure.message;
  }
  Finish(summary);
  return summary;
}

void Run::Finish(RunSummary& summary) {
  summary.completed_stages = completed_;
  summary.examples = static_cast<int>(states_.size());
  for (const ExampleState& s : states_) {
    if (s.excluded) summary.exclusions.push_back(*s.excluded);
    for (const Exclusion& e : s.skipped_items) summary.exclusions.push_back(e);
  }
  writer_.Exclusions(summary.exclusions);

  json manifest = {
      {"tool", "paraprobe"},
      {"version", PARAPROBE_VERSION},
      {"completed_stages", completed_},
      {"fatal", summary.fatal ? json(*summary.fatal) : json(nullptr)},
      {"seed", config_.seed},
      {"bootstrap_resamples", config_.bootstrap_resamples},
      {"sqlite_version", sqlite3_libversion()},
      {"prompt_sha256",
       {{"paraphrase", Sha256Hex(ParaphrasePromptTemplate())},
        {"nl2sql", Sha256Hex(Nl2SqlPromptTemplate())}}},
      {"clients", fingerprints_},
  };
  json config = config_.snapshot;
  config.erase("output_dir");
  config.erase("cache_dir");
  manifest["config"] = config;
  if (bench_) {
    manifest["dataset"] = {{"name", bench_->name},
                           {"release_tag", bench_->release_tag},
                           {"examples", bench_->examples.size()}};
  }
  std::set<std::string> parsers;
  json keys = json::object();
  for (const ExampleState& s : states_) {
    if (s.parses && !s.parses->parser.empty()) parsers.insert(s.parses->parser);
    if (!s.keys.empty()) keys[s.example->id] = s.keys;
  }
  manifest["parsers"] = parsers;
  manifest["stage_keys"] = keys;
  summary.files = writer_.Manifest(manifest);

  summary.client_calls = calls_;
  summary.cache_hits = cache_.hits();
  summary.cache_misses = cache_.misses();
}

CalibrationReport Run::Calibrate(int sample_size, int bins) {
  if (sample_size < 1) throw Error(ErrorKind::kCalibration, "sample size must be positive");
  CalibrationReport report;
  report.requested = sample_size;
  try {
    for (Stage stage : {Stage::kIngest, Stage::kParaphrase, Stage::kParseImport, Stage::kRank}) {
      RunStage(stage);
      completed_.emplace_back(StageName(stage));
    }
  } catch (const StageFailure& failure) {
    throw Error(ErrorKind::kCalibration, failure.message);
  }

  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i : Active()) {
    for (size_t k = 0; k < states_[i].ranked.size(); ++k) pairs.emplace_back(i, k);
  }
  report.available = static_cast<int>(pairs.size());
  if (pairs.empty()) throw Error(ErrorKind::kCalibration, "no paraphrase pairs to sample");
  if (sample_size > report.available) {
    spdlog::warn("asked for {} pairs but only {} exist; using all of them", sample_size,
                 report.available);
  }
  report.sampled = std::min(sample_size, report.available);

  // Partial Fisher-Yates with rejection-sampled bounded draws, so the sample
  // depends only on the seed and not on the standard library's distributions.
  std::mt19937_64 rng(SplitMix64(config_.seed));
  for (int i = 0; i < report.sampled; ++i) {
    const uint64_t range = pairs.size() - i;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(pairs[i], pairs[i + draw % range]);
  }
  pairs.resize(report.sampled);

  std::set<size_t> needed;
  for (const auto& [i, k] : pairs) needed.insert(i);
  EmbedCosines({needed.begin(), needed.end()});
  for (const auto& [i, k] : pairs) {
    if (states_[i].excluded) continue;
    report.cosines.push_back(states_[i].ranked[k].cosine);
  }
  report.histogram = CosineHistogram(report.cosines, bins);
  writer_.Calibration(report.histogram);
  completed_.emplace_back("calibrate");
  Finish(report.summary);
  return report;
}

std::string SweepLabel(size_t index, const json& value) {
  const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  return fmt::format("{:02d}_{}", index, SafeFileName(text));
}

}  // namespace

std::string_view StageName(Stage stage) { return kStageNames[static_cast<int>(stage)]; }

Stage ParseStage(std::string_view name) {
  for (size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  throw Error(ErrorKind::kConfig, fmt::format("unknown stage '{}'", name));
}

int RunSummary::TotalClientCalls() const {
  int total = 0;
  for (const auto& [name, n] : client_calls) total += n;
  return total;
}

RunSummary RunPipeline(const RunConfig& config, Stage until) {
  Run run(config);
  return run.Execute(until);
}

CalibrationReport Calibrate(const RunConfig& config, int sample_size, int bins) {
  Run run(config);
  return run.Calibrate(sample_size, bins);
}

std::vector<SweepPoint> RunSweep(const json& config_doc, const std::filesystem::path& base_dir,
                                 const std::string& json_pointer,
                                 const std::vector<json>& values,
                                 const std::filesystem::path& out_root) {
  if (values.empty()) throw Error(ErrorKind::kConfig, "sweep needs at least one value");
  json::json_pointer pointer;
  try {
    pointer = json::json_pointer(json_pointer);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, fmt::format("bad JSON pointer '{}': {}", json_pointer, e.what()));
  }
  // Setting a missing leaf is allowed (optional fields such as the cosine
  // threshold), but its parent must exist so a typo is not silently added.
  if (pointer.empty() ||
      (!config_doc.contains(pointer) && (!config_doc.contains(pointer.parent_pointer()) ||
                                         !config_doc.at(pointer.parent_pointer()).is_object()))) {
    throw Error(ErrorKind::kConfig, fmt::format("'{}' does not name a config field", json_pointer));
  }
  // Resolve the shared cache once so every variant reuses it.
  const RunConfig base = ParseRunConfig(config_doc, base_dir);
  const std::filesystem::path root = std::filesystem::absolute(out_root);

  std::vector<SweepPoint> points;
  std::string index = "index,value,output_dir,completed_stages,fatal\n";
  for (size_t i = 0; i < values.size(); ++i) {
    json doc = config_doc;
    doc[pointer] = values[i];
    const std::string label = SweepLabel(i, values[i]);
    doc["output_dir"] = (root / label).string();
    doc["cache_dir"] = std::filesystem::absolute(base.cache_dir).string();
    spdlog::info("sweep {} = {}", json_pointer, values[i].dump());
    const RunConfig config = ParseRunConfig(doc, base_dir);
    SweepPoint point{values[i], config.output_dir, RunPipeline(config)};
    index += fmt::format("{},{},{},{},{}\n", i, CsvField(values[i].dump()), label,
                         point.summary.completed_stages.size(),
                         CsvField(point.summary.fatal.value_or("")));
    points.push_back(std::move(point));
  }
  WriteFile(root / "sweep.csv", index);
  return points;
}

}  // namespace paraprobe
