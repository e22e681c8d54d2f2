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
#include "bundle_writer.h"

#include <fmt/format.h>

#include "paraprobe/text_util.h"

namespace paraprobe {

using nlohmann::json;

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out(text);
  ReplaceAll(out, "\"", "\"\"");
  return "\"" + out + "\"";
}

std::string Real(double value) {
  // Print -0 as 0 so that equal results render identically.
  return fmt::format("{:.6f}", value == 0.0 ? 0.0 : value);
}

namespace {

std::string Jsonl(const std::vector<json>& rows) {
  std::string out;
  for (const json& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

std::string HistogramCsv(const std::vector<HistogramRow>& rows) {
  std::string out = "rank,bin_lo,bin_hi,count\n";
  for (const HistogramRow& r : rows) {
    out += fmt::format("{},{},{},{}\n", r.rank, Real(r.bin_lo), Real(r.bin_hi), r.count);
  }
  return out;
}

}  // namespace

void BundleWriter::Write(const std::string& name, std::string_view contents) {
  WriteFile(dir_ / name, contents);
  files_.insert(name);
}

void BundleWriter::File(const std::filesystem::path& path, std::string_view contents) {
  WriteFile(path, contents);
  const std::filesystem::path rel =
      std::filesystem::weakly_canonical(path).lexically_relative(
          std::filesystem::weakly_canonical(dir_));
  if (!rel.empty() && *rel.begin() != "..") files_.insert(rel.generic_string());
}

void BundleWriter::Examples(const std::vector<Example>& examples) {
  std::vector<json> rows;
  for (const Example& ex : examples) {
    rows.push_back({{"example_id", ex.id},
                    {"db_id", ex.db_id},
                    {"question", ex.question},
                    {"context_turns", ex.context_turns},
                    {"gold_sql", ex.gold_sql},
                    {"schema_sha256", Sha256Hex(ex.schema_text)}});
  }
  Write("examples.jsonl", Jsonl(rows));
}

void BundleWriter::ParaphraseSets(const std::vector<const ParaphraseSet*>& sets) {
  std::vector<json> rows;
  for (const ParaphraseSet* set : sets) {
    rows.push_back({{"example_id", set->example_id},
                    {"generator_model", set->generator_model},
                    {"candidates", set->candidates},
                    {"shortfall", set->shortfall},
                    {"attempts", set->attempts}});
  }
  Write("paraphrase_sets.jsonl", Jsonl(rows));
}

void BundleWriter::Paraphrases(const std::vector<RankedRow>& rows, bool filtered) {
  std::vector<json> out;
  for (const RankedRow& row : rows) {
    for (const RankedParaphrase& p : *row.ranked) {
      json r = {{"example_id", *row.example_id},
                {"rank", p.rank},
                {"generation_index", p.generation_index},
                {"text", p.text},
                {"ted", p.ted},
                {"ted_norm", p.ted_norm},
                {"tree", p.tree.ToBracketString()}};
      if (filtered) {
        r["cosine"] = p.cosine;
        r["retained"] = p.retained;
      }
      out.push_back(std::move(r));
    }
  }
  Write("paraphrases.jsonl", Jsonl(out));
}

void BundleWriter::PairedEval(const std::vector<RankEvaluation>& evaluations) {
  std::string out =
      "model_id,dataset,rank,n_pairs,correct_orig,correct_para,acc_orig,acc_para,delta\n";
  for (const RankEvaluation& e : evaluations) {
    const PairedEvalRecord& r = e.record;
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", CsvField(r.model_id), CsvField(r.dataset),
                       r.rank, r.n_pairs, r.correct_orig, r.correct_para, Real(r.acc_orig),
                       Real(r.acc_para), Real(r.delta));
  }
  Write("paired_eval.csv", out);
}

void BundleWriter::Items(const std::vector<ItemRow>& rows) {
  std::vector<json> out;
  for (const ItemRow& row : rows) {
    const ItemOutcome& o = *row.outcome;
    out.push_back({{"model_id", o.model_id},
                   {"example_id", o.example_id},
                   {"rank", o.rank},
                   {"question", o.question},
                   {"predicted_sql", o.predicted_sql},
                   {"correct", o.correct},
                   {"error_class", o.error_class},
                   {"error_message", o.error_message},
                   {"cache_key", row.cache_key}});
  }
  Write("items.jsonl", Jsonl(out));
}

void BundleWriter::Tau(const std::vector<TauReport>& reports) {
  std::string out =
      "model_id,dataset,rank_filter,tau,ci_lo,ci_hi,n,n_concordant,n_discordant,resamples,"
      "seed,estimate_outside_ci\n";
  std::string resamples = "model_id,dataset,rank_filter,b,tau_star\n";
  for (const TauReport& r : reports) {
    const std::string head = fmt::format("{},{},{}", CsvField(r.model_id), CsvField(r.dataset),
                                         RankFilterName(r.filter));
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", head, Real(r.estimate.tau),
                       Real(r.ci_lo), Real(r.ci_hi), r.estimate.n, r.estimate.concordant,
                       r.estimate.discordant, r.resample_count, r.seed,
                       r.estimate_outside_ci ? "true" : "false");
    for (size_t b = 0; b < r.resamples.size(); ++b) {
      resamples += fmt::format("{},{},{}\n", head, b, Real(r.resamples[b]));
    }
  }
  Write("tau.csv", out);
  Write("tau_resamples.csv", resamples);
}

void BundleWriter::Overlap(const std::vector<OverlapRecord>& records) {
  std::string out = "example_id,rank,jaccard,orig_len,para_len\n";
  for (const OverlapRecord& r : records) {
    out += fmt::format("{},{},{},{},{}\n", CsvField(r.example_id), r.rank, Real(r.jaccard),
                       r.orig_len, r.para_len);
  }
  Write("overlap.csv", out);
}

void BundleWriter::Distributions(const DistributionTables& tables) {
  Write("length_hist.csv", HistogramCsv(tables.lengths));
  Write("jaccard_hist.csv", HistogramCsv(tables.jaccard));
}

void BundleWriter::Stratified(
    const std::vector<std::pair<std::string, std::vector<StratumCurve>>>& curves) {
  std::string out = "model_id,stratum,bin_lo,bin_hi,rank,n,correct,accuracy\n";
  std::string taus = "model_id,stratum,bin_lo,bin_hi,tau,n,n_concordant,n_discordant\n";
  for (const auto& [model_id, model_curves] : curves) {
    for (const StratumCurve& c : model_curves) {
      const std::string stratum =
          c.bin ? fmt::format("jaccard,{},{}", Real(c.bin->lo), Real(c.bin->hi)) : "all,,";
      const std::string head = fmt::format("{},{}", CsvField(model_id), stratum);
      for (const AccuracyPoint& p : c.points) {
        out += fmt::format("{},{},{},{},{}\n", head, p.rank, p.n, p.correct, Real(p.accuracy));
      }
      if (c.tau) {
        taus += fmt::format("{},{},{},{},{}\n", head, Real(c.tau->tau), c.tau->n,
                            c.tau->concordant, c.tau->discordant);
      }
    }
  }
  Write("stratified.csv", out);
  Write("stratified_tau.csv", taus);
}

void BundleWriter::Exclusions(const std::vector<Exclusion>& exclusions) {
  std::vector<json> rows;
  for (const Exclusion& e : exclusions) {
    json row = {{"example_id", e.example_id},
                {"stage", e.stage},
                {"error_class", e.error_class},
                {"message", e.message}};
    if (!e.item.empty()) row["item"] = e.item;
    rows.push_back(std::move(row));
  }
  Write("exclusions.jsonl", Jsonl(rows));
}

void BundleWriter::Calibration(const std::vector<HistogramRow>& histogram) {
  std::string out = "bin_lo,bin_hi,count\n";
  for (const HistogramRow& r : histogram) {
    out += fmt::format("{},{},{}\n", Real(r.bin_lo), Real(r.bin_hi), r.count);
  }
  Write("calibration.csv", out);
}

std::vector<std::string> BundleWriter::Manifest(json manifest) {
  files_.insert("manifest.json");
  manifest["files"] = files_;
  Write("manifest.json", manifest.dump(2) + "\n");
  return {files_.begin(), files_.end()};
}

}  // namespace paraprobe
