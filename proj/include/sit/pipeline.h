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

#ifndef SIT_PIPELINE_H_
#define SIT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sit/evaluation.h"
#include "sit/issue_detector.h"
#include "sit/report.h"

namespace sit {

// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitTranslation = 3,
  kExitRepresentation = 4,
};

// Maps a caught exception onto an exit code.
int ExitCodeFor(const std::exception& e);

struct RunConfig {
  std::string corpus;
  std::string lexicon;
  size_t max_words = kDefaultMaxWords;

  std::string backend = "dictionary";  // dictionary | mlm
  std::string dict;
  std::string mlm_url;

  std::string translator = "mock";  // http | mock
  std::string engine_url;
  // Engine id recorded in pairs and cache keys; derived when empty.
  std::string engine;
  std::string api_key_header = "X-API-Key";
  std::string mock_lexicon;
  std::string fault_plan;
  std::string cache;
  std::string source_lang = "en";
  std::string target_lang = "zh";
  int concurrency = 4;
  double rate_per_second = 0;
  int retries = 3;
  int64_t backoff_ms = 500;

  std::string parser = "stub";  // adapter | preparsed | stub
  std::string adapter_command;
  std::vector<std::string> adapter_args;
  int64_t adapter_timeout_s = 120;
  std::string preparsed;
  std::string relations;
  bool include_preterminals = false;

  std::string metric = "dependency";  // raw | constituency | dependency
  std::optional<int64_t> threshold;
  size_t gen_k = 5;
  size_t report_k = kDefaultReportK;
  std::string out = ".";
  uint64_t seed = 0;
  bool timestamps = false;

  // Throws ConfigError when a field is out of range or a selection is
  // unknown.
  void Validate() const;
  Metric ParsedMetric() const;
  int64_t EffectiveThreshold() const;
  std::string EngineId() const;

  nlohmann::json ToJson() const;
  // 16 hex digits of FNV-1a over the canonical JSON of every field.
  std::string Hash() const;
};

inline constexpr char kVariantsFile[] = "variants.jsonl";
inline constexpr char kTranslationsFile[] = "translations.jsonl";
inline constexpr char kReportJsonFile[] = "report.json";
inline constexpr char kReportMarkdownFile[] = "report.md";
inline constexpr char kSweepFile[] = "sweep.csv";
inline constexpr char kExperimentFile[] = "experiment.json";
inline constexpr char kFaultPlanFile[] = "fault_plan.json";

struct GenerateSummary {
  size_t originals = 0;
  size_t variants = 0;
  size_t filtered = 0;
  size_t failed = 0;
  std::filesystem::path output;
};

// Loads corpus, lexicon and backend and writes one JSON line per original to
// <out>/variants.jsonl. A corpus ending in ".conllu" is read as pre-tagged
// input whose UPOS column overrides the lexicon.
GenerateSummary RunGenerate(const RunConfig& config);

struct TranslateSummary {
  size_t requests = 0;
  size_t failed = 0;
  size_t engine_calls = 0;
  size_t from_cache = 0;
  std::vector<std::string> diagnostics;
  std::filesystem::path output;
};

// Translates every original and variant of a variants file and writes one
// JSON line per pair to <out>/translations.jsonl. Throws TranslationFailure
// after writing when every request failed.
TranslateSummary RunTranslate(const RunConfig& config,
                              const std::filesystem::path& variants_path);

// Reads a translations file and builds target structures with the
// configured parser. Throws RepresentationError when parser output does not
// line up with the translations.
std::vector<OriginalRecord> BuildRecords(
    const RunConfig& config, const std::filesystem::path& translations_path);

// Detection over BuildRecords; writes <out>/report.json and report.md.
IssueReport RunDetect(const RunConfig& config,
                      const std::filesystem::path& translations_path);

AccuracyReport RunEvaluate(const std::filesystem::path& report_path,
                           const std::filesystem::path& labels_path, size_t k);

// Writes <out>/sweep.csv. Accuracy labels come from `labels_path` when set,
// else from config.fault_plan; without either the accuracy column is NA.
std::vector<SweepPoint> RunSweep(const RunConfig& config,
                                 const std::filesystem::path& translations_path,
                                 const std::vector<int64_t>& thresholds,
                                 const std::filesystem::path& labels_path = {});

struct ExperimentOptions {
  // Synthetic sentence count, used when config.corpus is empty.
  size_t synthetic_sentences = 100;
  // Faults to plan when config.fault_plan is empty.
  size_t faults = 30;
  std::vector<FaultKind> kinds = {FaultKind::kUnderTranslation,
                                  FaultKind::kOverTranslation};
};

// Closed-loop fault-injection run through mock translator and stub parser.
// Writes experiment.json, fault_plan.json, report.json and report.md.
ExperimentReport RunExperiment(const RunConfig& config,
                               const ExperimentOptions& options);

}  // namespace sit

#endif  // SIT_PIPELINE_H_
