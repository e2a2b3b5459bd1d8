// Copyright 2026 The SIT Authors.
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

// Command-line front end: generate, translate, detect, evaluate, sweep and
// experiment stages over persisted JSON-lines artifacts.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "sit/errors.h"
#include "sit/pipeline.h"

namespace {

using sit::RunConfig;

void AddCorpusFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--corpus", config->corpus,
                  "Plain-text corpus, one sentence per line, or a .conllu file");
  app->add_option("--lexicon", config->lexicon, "POS lexicon TSV (word<TAB>TAG)");
  app->add_option("--max-words", config->max_words, "Drop longer sentences");
}

void AddGenerationFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--backend", config->backend, "Substitution backend")
      ->check(CLI::IsMember({"dictionary", "mlm"}));
  app->add_option("--dict", config->dict, "Substitution table TSV");
  app->add_option("--mlm-url", config->mlm_url, "Fill-mask service base URL");
  app->add_option("--gen-k", config->gen_k, "Variants kept per masked position");
}

void AddTranslationFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--translator", config->translator, "Translation engine")
      ->check(CLI::IsMember({"http", "mock"}));
  app->add_option("--engine-url", config->engine_url, "HTTP translator base URL");
  app->add_option("--engine", config->engine, "Engine id recorded in outputs");
  app->add_option("--api-key-header", config->api_key_header,
                  "Header carrying $SIT_API_KEY");
  app->add_option("--mock-lexicon", config->mock_lexicon,
                  "Mock translator word map TSV");
  app->add_option("--fault-plan", config->fault_plan, "Fault plan JSON");
  app->add_option("--cache", config->cache, "Persistent translation cache");
  app->add_option("--concurrency", config->concurrency, "Parallel requests");
  app->add_option("--rate", config->rate_per_second,
                  "Request rate limit per second, 0 for none");
  app->add_option("--retries", config->retries, "Attempts per request");
  app->add_option("--backoff-ms", config->backoff_ms, "Initial retry backoff");
}

void AddLanguageFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--source-lang", config->source_lang, "Source language");
  app->add_option("--target-lang", config->target_lang, "Target language");
}

void AddStructureFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--parser", config->parser, "Structure source")
      ->check(CLI::IsMember({"adapter", "preparsed", "stub"}));
  app->add_option("--adapter-cmd", config->adapter_command,
                  "Parser executable reading one sentence per line");
  app->add_option("--adapter-arg", config->adapter_args,
                  "Argument passed to the parser (repeatable)");
  app->add_option("--adapter-timeout", config->adapter_timeout_s,
                  "Parser timeout in seconds");
  app->add_option("--preparsed", config->preparsed,
                  "CoNLL-U or PTB file aligned with the translations");
  app->add_option("--relations", config->relations,
                  "Stub parser word-to-relation TSV");
  app->add_flag("--include-preterminals", config->include_preterminals,
                "Count POS preterminals in constituency sets");
}

void AddDetectionFlags(CLI::App* app, RunConfig* config, int64_t* threshold) {
  app->add_option("--metric", config->metric, "Distance metric")
      ->check(CLI::IsMember({"raw", "constituency", "dependency"}));
  app->add_option("--threshold", *threshold,
                  "Report variants strictly farther than this");
  app->add_option("--report-k", config->report_k, "Variants reported per issue");
}

void AddOutputFlags(CLI::App* app, RunConfig* config) {
  app->add_option("--out", config->out, "Output directory");
  app->add_option("--seed", config->seed, "Seed for randomized steps");
  app->add_flag("--timestamps", config->timestamps,
                "Record wall-clock time in reports");
}

int64_t ParseInt(std::string_view text) {
  int64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw sit::ConfigError("bad threshold '" + std::string(text) + "'");
  }
  return value;
}

// "A..B" for an inclusive range, otherwise a comma-separated list.
std::vector<int64_t> ParseThresholds(std::string_view text) {
  std::vector<int64_t> out;
  if (const size_t dots = text.find(".."); dots != std::string_view::npos) {
    const int64_t lo = ParseInt(text.substr(0, dots));
    const int64_t hi = ParseInt(text.substr(dots + 2));
    if (lo > hi) throw sit::ConfigError("empty threshold range");
    for (int64_t t = lo; t <= hi; ++t) out.push_back(t);
    return out;
  }
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(ParseInt(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::filesystem::path OrDefault(const std::string& path, const RunConfig& config,
                                const char* file) {
  return path.empty() ? std::filesystem::path(config.out) / file
                      : std::filesystem::path(path);
}

void PrintDiagnostics(const std::vector<std::string>& diagnostics) {
  for (const std::string& d : diagnostics) std::cerr << "  " << d << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-invariance testing for machine translation"};
  app.require_subcommand(1);

  RunConfig config;
  int64_t threshold = 0;
  std::string variants_path;
  std::string translations_path;
  std::string report_path;
  std::string labels_path;
  std::string thresholds_arg = "0..20";
  size_t eval_k = 1;
  sit::ExperimentOptions experiment;
  std::vector<std::string> kinds;

  CLI::App* generate = app.add_subcommand("generate", "Write variants.jsonl");
  AddCorpusFlags(generate, &config);
  AddGenerationFlags(generate, &config);
  AddOutputFlags(generate, &config);

  CLI::App* translate = app.add_subcommand("translate", "Write translations.jsonl");
  translate->add_option("--variants", variants_path,
                        "Variants file (default <out>/variants.jsonl)");
  AddTranslationFlags(translate, &config);
  AddLanguageFlags(translate, &config);
  AddOutputFlags(translate, &config);

  CLI::App* detect = app.add_subcommand("detect", "Write report.json and report.md");
  detect->add_option("--translations", translations_path,
                     "Translations file (default <out>/translations.jsonl)");
  AddStructureFlags(detect, &config);
  AddDetectionFlags(detect, &config, &threshold);
  AddLanguageFlags(detect, &config);
  AddOutputFlags(detect, &config);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Top-k accuracy of a report");
  evaluate->add_option("--report", report_path, "Report JSON")->required();
  evaluate->add_option("--labels", labels_path, "Labels JSON")->required();
  evaluate->add_option("--k", eval_k, "Variants considered per issue");

  CLI::App* sweep = app.add_subcommand("sweep", "Write sweep.csv");
  sweep->add_option("--translations", translations_path,
                    "Translations file (default <out>/translations.jsonl)");
  sweep->add_option("--thresholds", thresholds_arg, "A..B or a comma list");
  sweep->add_option("--labels", labels_path, "Labels JSON for the accuracy column");
  sweep->add_option("--fault-plan", config.fault_plan,
                    "Fault plan used as ground truth when --labels is absent");
  AddStructureFlags(sweep, &config);
  AddDetectionFlags(sweep, &config, &threshold);
  AddOutputFlags(sweep, &config);

  CLI::App* run_experiment =
      app.add_subcommand("experiment", "Closed-loop fault injection run");
  run_experiment->add_option("--synthetic", experiment.synthetic_sentences,
                             "Synthetic sentences when --corpus is absent");
  run_experiment->add_option("--faults", experiment.faults, "Faults to inject");
  run_experiment->add_option("--kinds", kinds, "Fault kinds to draw from")
      ->delimiter(',');
  AddCorpusFlags(run_experiment, &config);
  run_experiment->add_option("--dict", config.dict, "Substitution table TSV");
  run_experiment->add_option("--gen-k", config.gen_k, "Variants per position");
  run_experiment->add_option("--mock-lexicon", config.mock_lexicon,
                             "Mock translator word map TSV");
  run_experiment->add_option("--relations", config.relations,
                             "Stub parser word-to-relation TSV");
  run_experiment->add_option("--fault-plan", config.fault_plan,
                             "Fault plan JSON instead of a random plan");
  AddDetectionFlags(run_experiment, &config, &threshold);
  AddLanguageFlags(run_experiment, &config);
  AddOutputFlags(run_experiment, &config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sit::kExitConfig;
  }

  for (CLI::App* sub : {detect, sweep, run_experiment}) {
    if (sub->parsed() && sub->count("--threshold") > 0) config.threshold = threshold;
  }

  try {
    if (generate->parsed()) {
      const sit::GenerateSummary s = sit::RunGenerate(config);
      std::cout << "generated " << s.variants << " variants for " << s.originals
                << " originals (" << s.filtered << " filtered, " << s.failed
                << " failed) -> " << s.output.string() << "\n";
    } else if (translate->parsed()) {
      const sit::TranslateSummary s = sit::RunTranslate(
          config, OrDefault(variants_path, config, sit::kVariantsFile));
      std::cout << "translated " << s.requests << " requests (" << s.engine_calls
                << " engine calls, " << s.from_cache << " from cache, " << s.failed
                << " failed) -> " << s.output.string() << "\n";
      PrintDiagnostics(s.diagnostics);
    } else if (detect->parsed()) {
      const sit::IssueReport report = sit::RunDetect(
          config, OrDefault(translations_path, config, sit::kTranslationsFile));
      std::cout << report.issues.size() << " issues over "
                << report.metadata.originals << " originals -> "
                << (std::filesystem::path(config.out) / sit::kReportJsonFile).string()
                << "\n";
    } else if (evaluate->parsed()) {
      const sit::AccuracyReport r = sit::RunEvaluate(report_path, labels_path, eval_k);
      std::cout << "top-" << r.k << " accuracy: " << r.accuracy.ToPercent(1) << " ("
                << r.buggy_count << "/" << r.issue_count << ")\n";
    } else if (sweep->parsed()) {
      const auto points = sit::RunSweep(
          config, OrDefault(translations_path, config, sit::kTranslationsFile),
          ParseThresholds(thresholds_arg), labels_path);
      std::cout << points.size() << " thresholds -> "
                << (std::filesystem::path(config.out) / sit::kSweepFile).string()
                << "\n";
    } else if (run_experiment->parsed()) {
      if (!kinds.empty()) {
        experiment.kinds.clear();
        for (const std::string& k : kinds) {
          const auto kind = sit::ParseFaultKind(k);
          if (!kind) throw sit::ConfigError("unknown fault kind '" + k + "'");
          experiment.kinds.push_back(*kind);
        }
      }
      const sit::ExperimentReport r = sit::RunExperiment(config, experiment);
      std::cout << r.detection.issues.size() << " issues; recall "
                << r.recall.ToPercent(1) << " (" << r.detected_faulty << "/"
                << r.faulty_originals << ")";
      if (r.precision) std::cout << "; precision " << r.precision->ToPercent(1);
      if (r.accuracy) {
        std::cout << "; top-" << r.accuracy->k << " accuracy "
                  << r.accuracy->accuracy.ToPercent(1);
      }
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sit::ExitCodeFor(e);
  }
  return sit::kExitOk;
}
