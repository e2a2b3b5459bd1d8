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

#ifndef SIT_ISSUE_DETECTOR_H_
#define SIT_ISSUE_DETECTOR_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sit/distance_metrics.h"
#include "sit/structure_repr.h"
#include "sit/translation_gateway.h"
#include "sit/variant_generator.h"

namespace sit {

// Default thresholds. The relation metrics use the small setting that finds
// the most issues; 15 is the high-precision setting. The raw threshold has
// no empirical backing and is a tunable.
inline constexpr int64_t kDefaultRelationThreshold = 4;
inline constexpr int64_t kHighPrecisionRelationThreshold = 15;
inline constexpr int64_t kDefaultRawThreshold = 10;
inline constexpr size_t kDefaultReportK = 3;

int64_t DefaultThreshold(Metric metric);

struct ScoredVariant {
  Variant variant;
  TranslationPair pair;
  // Between this variant's target structure and the original's target
  // structure.
  Distance dist;
};

struct Issue {
  int64_t id = 0;
  TranslationPair original;
  // Farthest first, at most k entries, every dist.value > threshold.
  std::vector<ScoredVariant> reported;
  Metric metric = Metric::kDependencyL1;
  int64_t threshold = 0;
};

struct VariantCandidate {
  Variant variant;
  TranslationPair pair;
  StructureRepr repr;
};

// Everything known about one original after translation and parsing.
struct OriginalRecord {
  int64_t id = 0;
  std::optional<TranslationPair> original;
  std::optional<StructureRepr> original_repr;
  std::vector<VariantCandidate> variants;
  // Non-empty when an upstream stage failed for the original itself.
  std::string failure;
};

// An original with the distance of every variant already computed. Sweeps
// reuse these across thresholds.
struct ScoredOriginal {
  int64_t id = 0;
  TranslationPair original;
  Metric metric = Metric::kDependencyL1;
  std::vector<ScoredVariant> scored;
};

struct DetectionDiagnostics {
  // Originals without any variant to compare against.
  std::vector<int64_t> untestable;
  // Originals dropped because an upstream stage failed.
  std::vector<std::pair<int64_t, std::string>> skipped;
  // Testable originals that produced no issue.
  size_t clean = 0;
};

struct DetectionResult {
  std::vector<Issue> issues;
  DetectionDiagnostics diagnostics;
};

struct DetectionConfig {
  int64_t threshold = kDefaultRelationThreshold;
  size_t k = kDefaultReportK;
};

// Total order used for reports: distance descending, then source position
// ascending, then replacement token.
bool ReportOrder(const ScoredVariant& a, const ScoredVariant& b);

std::vector<ScoredVariant> ScoreVariants(
    const StructureRepr& original_repr,
    std::span<const VariantCandidate> variants);

// Keeps variants strictly farther than `threshold` and reports the k
// farthest. Returns nullopt when nothing survives.
std::optional<Issue> SelectIssue(const ScoredOriginal& original,
                                 int64_t threshold, size_t k);

std::optional<Issue> Detect(int64_t id, const TranslationPair& original,
                            const StructureRepr& original_repr,
                            std::span<const VariantCandidate> variants,
                            int64_t threshold, size_t k);

// Scores every testable original. Failed and variant-less originals are
// recorded in `diagnostics`.
std::vector<ScoredOriginal> ScoreAll(std::span<const OriginalRecord> records,
                                     DetectionDiagnostics* diagnostics);

DetectionResult DetectScored(std::span<const ScoredOriginal> scored,
                             const DetectionConfig& config);

// ScoreAll followed by DetectScored; originals are processed in parallel and
// issues come back in input order.
DetectionResult RunDetection(std::span<const OriginalRecord> records,
                             const DetectionConfig& config);

}  // namespace sit

#endif  // SIT_ISSUE_DETECTOR_H_
