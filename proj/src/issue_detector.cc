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

#include "sit/issue_detector.h"

#include <algorithm>

#include "parallel.h"
#include "sit/errors.h"

namespace sit {

int64_t DefaultThreshold(Metric metric) {
  return metric == Metric::kRawLevenshtein ? kDefaultRawThreshold
                                           : kDefaultRelationThreshold;
}

bool ReportOrder(const ScoredVariant& a, const ScoredVariant& b) {
  if (a.dist.value != b.dist.value) return a.dist.value > b.dist.value;
  if (a.variant.source_position != b.variant.source_position) {
    return a.variant.source_position < b.variant.source_position;
  }
  return a.variant.replacement_token < b.variant.replacement_token;
}

std::vector<ScoredVariant> ScoreVariants(
    const StructureRepr& original_repr,
    std::span<const VariantCandidate> variants) {
  std::vector<ScoredVariant> scored;
  scored.reserve(variants.size());
  for (const VariantCandidate& candidate : variants) {
    scored.push_back(ScoredVariant{candidate.variant, candidate.pair,
                                   ComputeDistance(original_repr, candidate.repr)});
  }
  return scored;
}

std::optional<Issue> SelectIssue(const ScoredOriginal& original,
                                 int64_t threshold, size_t k) {
  if (k == 0) throw ConfigError("report k must be positive");
  if (threshold < 0) throw ConfigError("threshold must be non-negative");
  std::vector<const ScoredVariant*> survivors;
  for (const ScoredVariant& v : original.scored) {
    if (v.dist.value > threshold) survivors.push_back(&v);
  }
  if (survivors.empty()) return std::nullopt;
  std::stable_sort(survivors.begin(), survivors.end(),
                   [](const ScoredVariant* a, const ScoredVariant* b) {
                     return ReportOrder(*a, *b);
                   });
  Issue issue;
  issue.id = original.id;
  issue.original = original.original;
  issue.metric = original.metric;
  issue.threshold = threshold;
  const size_t n = std::min(k, survivors.size());
  issue.reported.reserve(n);
  for (size_t i = 0; i < n; ++i) issue.reported.push_back(*survivors[i]);
  return issue;
}

std::optional<Issue> Detect(int64_t id, const TranslationPair& original,
                            const StructureRepr& original_repr,
                            std::span<const VariantCandidate> variants,
                            int64_t threshold, size_t k) {
  ScoredOriginal scored{id, original, MetricFor(original_repr.kind()),
                        ScoreVariants(original_repr, variants)};
  return SelectIssue(scored, threshold, k);
}

std::vector<ScoredOriginal> ScoreAll(std::span<const OriginalRecord> records,
                                     DetectionDiagnostics* diagnostics) {
  std::vector<std::optional<ScoredOriginal>> slots(records.size());
  internal::ParallelFor(records.size(), [&](size_t i) {
    const OriginalRecord& record = records[i];
    if (!record.failure.empty() || !record.original || !record.original_repr ||
        record.variants.empty()) {
      return;
    }
    slots[i] = ScoredOriginal{record.id, *record.original,
                              MetricFor(record.original_repr->kind()),
                              ScoreVariants(*record.original_repr, record.variants)};
  });

  std::vector<ScoredOriginal> scored;
  scored.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const OriginalRecord& record = records[i];
    if (slots[i]) {
      scored.push_back(std::move(*slots[i]));
      continue;
    }
    if (diagnostics == nullptr) continue;
    if (!record.failure.empty()) {
      diagnostics->skipped.emplace_back(record.id, record.failure);
    } else if (!record.original || !record.original_repr) {
      diagnostics->skipped.emplace_back(record.id, "missing translation");
    } else {
      diagnostics->untestable.push_back(record.id);
    }
  }
  return scored;
}

DetectionResult DetectScored(std::span<const ScoredOriginal> scored,
                             const DetectionConfig& config) {
  std::vector<std::optional<Issue>> slots(scored.size());
  internal::ParallelFor(scored.size(), [&](size_t i) {
    slots[i] = SelectIssue(scored[i], config.threshold, config.k);
  });
  DetectionResult result;
  for (std::optional<Issue>& slot : slots) {
    if (slot) {
      result.issues.push_back(std::move(*slot));
    } else {
      ++result.diagnostics.clean;
    }
  }
  return result;
}

DetectionResult RunDetection(std::span<const OriginalRecord> records,
                             const DetectionConfig& config) {
  DetectionDiagnostics diagnostics;
  const std::vector<ScoredOriginal> scored = ScoreAll(records, &diagnostics);
  DetectionResult result = DetectScored(scored, config);
  diagnostics.clean = result.diagnostics.clean;
  result.diagnostics = std::move(diagnostics);
  return result;
}

}  // namespace sit
