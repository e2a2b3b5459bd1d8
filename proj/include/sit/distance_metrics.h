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

#ifndef SIT_DISTANCE_METRICS_H_
#define SIT_DISTANCE_METRICS_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "sit/structure_repr.h"

namespace sit {

enum class Metric { kRawLevenshtein, kConstituencyL1, kDependencyL1 };

// "RAW_LEVENSHTEIN", "CONSTITUENCY_L1", "DEPENDENCY_L1".
std::string_view MetricName(Metric metric);
// Short CLI names: "raw", "constituency", "dependency".
std::string_view MetricFlagName(Metric metric);
std::optional<Metric> ParseMetricFlag(std::string_view name);

Metric MetricFor(ReprKind kind);
ReprKind ReprKindFor(Metric metric);

struct Distance {
  int64_t value = 0;
  Metric metric = Metric::kRawLevenshtein;

  bool operator==(const Distance&) const = default;
};

// Unit-cost edit distance over Unicode scalar values.
int64_t Levenshtein(std::string_view a, std::string_view b);
int64_t Levenshtein(std::u32string_view a, std::u32string_view b);

// Sum over the label union of |count_a - count_b|.
int64_t RelationDistance(const RelationMultiset& a, const RelationMultiset& b);

// Dispatches on the representation kind; mixed kinds raise
// MetricMismatchError.
Distance ComputeDistance(const StructureRepr& a, const StructureRepr& b);

}  // namespace sit

#endif  // SIT_DISTANCE_METRICS_H_
