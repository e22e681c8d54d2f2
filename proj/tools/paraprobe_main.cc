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
// Command-line front end. Every subcommand reads one JSON run config; stage
// subcommands run the pipeline through that stage.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "paraprobe/errors.h"
#include "paraprobe/pipeline.h"
#include "paraprobe/run_config.h"
#include "paraprobe/text_util.h"

namespace {

using paraprobe::Error;
using paraprobe::RunConfig;
using paraprobe::RunSummary;
using paraprobe::Stage;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStageFailure = 2;

struct CommonOptions {
  std::string config_path;
  std::string output_dir;
  std::string cache_dir;
  int workers = 0;
  bool verbose = false;
};

RunConfig LoadConfig(const CommonOptions& opts) {
  RunConfig config = paraprobe::LoadRunConfig(opts.config_path);
  if (!opts.output_dir.empty()) {
    config.output_dir = opts.output_dir;
    config.request_dir = config.output_dir / "parse_requests";
  }
  if (!opts.cache_dir.empty()) config.cache_dir = opts.cache_dir;
  if (opts.workers > 0) config.workers = opts.workers;
  return config;
}

void PrintSummary(const RunSummary& summary) {
  fmt::print("stages completed: {}\n", fmt::join(summary.completed_stages, ", "));
  fmt::print("examples: {}, exclusions: {}\n", summary.examples, summary.exclusions.size());
  for (const auto& [client, calls] : summary.client_calls) {
    fmt::print("client calls ({}): {}\n", client, calls);
  }
  fmt::print("cache: {} hits, {} misses\n", summary.cache_hits, summary.cache_misses);
  if (summary.fatal) fmt::print(stderr, "stage failure: {}\n", *summary.fatal);
}

int RunThrough(const CommonOptions& opts, Stage until) {
  const RunSummary summary = paraprobe::RunPipeline(LoadConfig(opts), until);
  PrintSummary(summary);
  return summary.fatal ? kExitStageFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paraphrase-based contamination probe for NL2SQL benchmarks"};
  app.require_subcommand(1);
  CommonOptions opts;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", opts.config_path, "Run config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", opts.output_dir, "Override the config's output_dir");
    cmd->add_option("--cache", opts.cache_dir, "Override the config's cache_dir");
    cmd->add_option("-j,--workers", opts.workers, "Override the config's worker count")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("-v,--verbose", opts.verbose, "Debug logging");
  };

  struct StageCommand {
    Stage stage;
    const char* help;
  };
  const std::vector<StageCommand> stage_commands = {
      {Stage::kIngest, "Load the benchmark and render schemas"},
      {Stage::kParaphrase, "Generate paraphrases and write parse requests"},
      {Stage::kParseImport, "Import CoNLL-U parses for the originals and paraphrases"},
      {Stage::kRank, "Rank paraphrases by tree edit distance"},
      {Stage::kFilter, "Apply the cosine-similarity filter"},
      {Stage::kEvaluate, "Run paired execution-accuracy evaluation"},
      {Stage::kStats, "Kendall tau with bootstrap intervals"},
      {Stage::kReport, "Overlap histograms and stratified curves"},
  };
  std::optional<Stage> chosen;
  for (const StageCommand& sc : stage_commands) {
    CLI::App* cmd = app.add_subcommand(std::string(paraprobe::StageName(sc.stage)), sc.help);
    add_common(cmd);
    cmd->callback([&chosen, stage = sc.stage] { chosen = stage; });
  }
  CLI::App* run = app.add_subcommand("run", "Run every stage");
  add_common(run);
  run->callback([&chosen] { chosen = Stage::kReport; });

  int sample = 200;
  int bins = 20;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Histogram of cosine similarity for choosing a threshold");
  add_common(calibrate);
  calibrate->add_option("-n,--sample", sample, "Number of (original, paraphrase) pairs")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--bins", bins, "Histogram bins over [-1, 1]")
      ->check(CLI::PositiveNumber);

  std::string pointer;
  std::vector<std::string> raw_values;
  std::string sweep_root;
  CLI::App* sweep = app.add_subcommand("sweep", "Re-run the pipeline over values of one field");
  add_common(sweep);
  sweep->add_option("--param", pointer, "JSON pointer, e.g. /filter/cosine_threshold")
      ->required();
  sweep->add_option("--values", raw_values, "Values as JSON literals")->required();
  sweep->add_option("--out-root", sweep_root, "Directory for the per-value bundles")
      ->required();

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(opts.verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (chosen) return RunThrough(opts, *chosen);
    if (calibrate->parsed()) {
      const auto report = paraprobe::Calibrate(LoadConfig(opts), sample, bins);
      fmt::print("sampled {} of {} pairs (asked for {})\n", report.sampled, report.available,
                 report.requested);
      for (const auto& row : report.histogram) {
        fmt::print("[{:+.2f}, {:+.2f})  {:5d}  {}\n", row.bin_lo, row.bin_hi, row.count,
                   std::string(static_cast<size_t>(std::min(row.count, 60)), '#'));
      }
      return kExitOk;
    }
    if (sweep->parsed()) {
      std::vector<nlohmann::json> values;
      for (const std::string& v : raw_values) {
        values.push_back(nlohmann::json::parse(v, nullptr, /*allow_exceptions=*/false));
        if (values.back().is_discarded()) values.back() = v;  // bare words are strings
      }
      const std::filesystem::path config_path(opts.config_path);
      auto doc = nlohmann::json::parse(paraprobe::ReadFile(config_path));
      if (!opts.cache_dir.empty()) {
        doc["cache_dir"] = std::filesystem::absolute(opts.cache_dir).string();
      }
      const auto points = paraprobe::RunSweep(
          doc, config_path.parent_path().empty() ? "." : config_path.parent_path(), pointer,
          values, sweep_root);
      int status = kExitOk;
      for (const auto& p : points) {
        fmt::print("{} -> {}{}\n", p.value.dump(), p.output_dir.string(),
                   p.summary.fatal ? " (failed: " + *p.summary.fatal + ")" : "");
        if (p.summary.fatal) status = kExitStageFailure;
      }
      return status;
    }
  } catch (const Error& e) {
    fmt::print(stderr, "error ({}): {}\n", paraprobe::ErrorKindName(e.kind()), e.what());
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
