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

#ifndef SIT_EVALUATION_H_
#define SIT_EVALUATION_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sit/distance_metrics.h"
#include "sit/issue_detector.h"
#include "sit/text_corpus.h"
#include "sit/translation_gateway.h"
#include "sit/variant_generator.h"

namespace sit {

// Exact non-negative fraction, always reduced, denominator > 0.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t numerator, int64_t denominator);

  int64_t numerator() const { return num_; }
  int64_t denominator() const { return den_; }
  double ToDouble() const { return static_cast<double>(num_) / den_; }
  // Decimal rendering rounded half-up, e.g. ToFixed(4) == "0.6950".
  std::string ToFixed(int decimals) const;
  // Same rounding on the percentage, e.g. "69.5%".
  std::string ToPercent(int decimals = 1) const;

  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& other) const;

 private:
  int64_t num_ = 0;
  int64_t den_ = 1;
};

// Position 0 marks the original pair as buggy; j >= 1 the j-th reported
// variant.
struct IssueLabel {
  int64_t issue_id = 0;
  std::set<int> buggy_positions;
};

struct AccuracyReport {
  size_t k = 1;
  size_t issue_count = 0;
  size_t buggy_count = 0;
  Rational accuracy;
};

// An issue is buggy at k when its label contains 0 or any j in
// [1, min(k, reported)]. Issues without a label are not buggy. Throws
// UndefinedAccuracyError for an empty issue list.
AccuracyReport TopkAccuracy(std::span<const Issue> issues,
                            std::span<const IssueLabel> labels, size_t k);

std::vector<IssueLabel> ParseLabels(std::string_view json_text);
std::vector<IssueLabel> LoadLabels(const std::filesystem::path& path);
std::string SerializeLabels(std::span<const IssueLabel> labels);

struct SweepPoint {
  int64_t threshold = 0;
  size_t issue_count = 0;
  // Absent when no issue is reported at this threshold.
  std::optional<Rational> top1_accuracy;
};

// Reruns selection per threshold over distances computed once. Thresholds
// must be ascending.
std::vector<SweepPoint> ThresholdSweep(std::span<const ScoredOriginal> scored,
                                       std::span<const int64_t> thresholds,
                                       std::span<const IssueLabel> labels,
                                       size_t k);

// CSV with header `threshold,issue_count,top1_accuracy`; undefined accuracy
// is written as `NA`.
std::string SweepCsv(std::span<const SweepPoint> points);

using FaultPlan = std::vector<FaultSpec>;

// JSON array of {"original_id","position","replacement","kind","detail"}.
FaultPlan ParseFaultPlan(std::string_view json_text);
FaultPlan LoadFaultPlan(const std::filesystem::path& path);
std::string SerializeFaultPlan(const FaultPlan& plan);

// An original sentence after tagging and variant generation.
struct GeneratedOriginal {
  int64_t id = 0;
  TaggedSentence sentence;
  std::vector<Variant> variants;
  std::vector<std::string> diagnostics;
};

VariantRef RefOf(int64_t original_id, const Variant& variant);

// Maps each planned fault to the exact variant text it corrupts. Throws
// ConfigError for a fault naming a variant that was not generated or two
// faults on the same text.
std::unordered_map<std::string, FaultSpec> ResolveFaults(
    const FaultPlan& plan, std::span<const GeneratedOriginal> generated);

// Picks `count` distinct originals with seeded randomness (skipping those in
// `exclude`) and corrupts one variant of each. The fault kind is drawn from
// `kinds`; the detail names the variant's replacement token.
FaultPlan PlanFaults(std::span<const GeneratedOriginal> generated, size_t count,
                     std::span<const FaultKind> kinds, uint64_t seed,
                     const std::set<int64_t>& exclude = {});

// One OVER_TRANSLATION per entry in `extra_copies`, each padding a variant's
// translation with that many duplicated words, on originals outside
// `exclude`.
FaultPlan PlanNearMisses(std::span<const GeneratedOriginal> generated,
                         std::span<const size_t> extra_copies, uint64_t seed,
                         const std::set<int64_t>& exclude = {});

// Ground-truth labels: every reported variant that carries a planned fault
// is marked buggy. Originals are never faulted, so position 0 never appears.
std::vector<IssueLabel> LabelsFromFaults(std::span<const Issue> issues,
                                         const std::set<VariantRef>& faulty);

// Same, but ranks every scored variant in report order without any
// threshold. Survivors of any threshold form a prefix of that order, so the
// labels stay valid across a sweep.
std::vector<IssueLabel> LabelsFromFaults(std::span<const ScoredOriginal> scored,
                                         const std::set<VariantRef>& faulty);

struct ExperimentInputs {
  std::vector<std::string> sentences;
  // Stable ids parallel to `sentences`; 1..n when empty.
  std::vector<int64_t> ids;
  PosLexicon pos_lexicon;
  SubstitutionTable substitutions;
  WordMap target_lexicon;
  // Target word -> dependency relation for the stub parser.
  WordMap dependency_labels;
  // Target word -> phrase label; falls back to dependency_labels if empty.
  WordMap constituency_labels;
};

struct ExperimentConfig {
  Metric metric = Metric::kDependencyL1;
  int64_t threshold = 0;
  size_t gen_k = 5;
  size_t report_k = 1;
  uint64_t seed = 0;
  std::string source_lang = "en";
  std::string target_lang = "zh";
};

std::vector<GeneratedOriginal> GenerateAll(const ExperimentInputs& inputs,
                                           size_t gen_k);

// Translation and parsing output for a whole experiment, ready to detect.
struct PreparedExperiment {
  std::vector<GeneratedOriginal> generated;
  std::vector<OriginalRecord> records;
  std::set<VariantRef> faulty;
  std::set<int64_t> faulty_originals;
};

// Generates variants, translates everything through the mock translator
// with the plan's faults injected and builds stub-parser structures for
// `config.metric`.
PreparedExperiment PrepareExperiment(const ExperimentInputs& inputs,
                                     const FaultPlan& plan,
                                     const ExperimentConfig& config);

struct ExperimentReport {
  ExperimentConfig config;
  size_t originals = 0;
  size_t faulty_originals = 0;
  size_t detected_faulty = 0;
  size_t issues_with_fault = 0;
  // Detected faulty originals over faulty originals; 1 when there are none.
  Rational recall;
  // Issues carrying a planned fault over issues; absent with zero issues.
  std::optional<Rational> precision;
  // At config.report_k over the ground-truth labels; absent with zero
  // issues.
  std::optional<AccuracyReport> accuracy;
  DetectionResult detection;
  std::vector<IssueLabel> labels;
};

ExperimentReport ScoreExperiment(const PreparedExperiment& prepared,
                                 const ExperimentConfig& config);

// PrepareExperiment followed by detection and scoring.
ExperimentReport RunFaultInjectionExperiment(const ExperimentInputs& inputs,
                                             const FaultPlan& plan,
                                             const ExperimentConfig& config);

}  // namespace sit

#endif  // SIT_EVALUATION_H_
