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

#include "sit/distance_metrics.h"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "sit/errors.h"
#include "sit/utf8.h"

namespace sit {

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kRawLevenshtein:
      return "RAW_LEVENSHTEIN";
    case Metric::kConstituencyL1:
      return "CONSTITUENCY_L1";
    case Metric::kDependencyL1:
      return "DEPENDENCY_L1";
  }
  return "?";
}

std::string_view MetricFlagName(Metric metric) {
  return ReprKindName(ReprKindFor(metric));
}

std::optional<Metric> ParseMetricFlag(std::string_view name) {
  if (name == "raw") return Metric::kRawLevenshtein;
  if (name == "constituency") return Metric::kConstituencyL1;
  if (name == "dependency") return Metric::kDependencyL1;
  return std::nullopt;
}

Metric MetricFor(ReprKind kind) {
  switch (kind) {
    case ReprKind::kRaw:
      return Metric::kRawLevenshtein;
    case ReprKind::kConstituency:
      return Metric::kConstituencyL1;
    case ReprKind::kDependency:
      return Metric::kDependencyL1;
  }
  return Metric::kRawLevenshtein;
}

ReprKind ReprKindFor(Metric metric) {
  switch (metric) {
    case Metric::kRawLevenshtein:
      return ReprKind::kRaw;
    case Metric::kConstituencyL1:
      return ReprKind::kConstituency;
    case Metric::kDependencyL1:
      return ReprKind::kDependency;
  }
  return ReprKind::kRaw;
}

int64_t Levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Single row over the shorter string.
  std::vector<int64_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int64_t>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    int64_t diagonal = row[0];
    row[0] = static_cast<int64_t>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int64_t above = row[j];
      const int64_t substitute = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitute});
      diagonal = above;
    }
  }
  return row[b.size()];
}

int64_t Levenshtein(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  return Levenshtein(utf8::Decode(a), utf8::Decode(b));
}

int64_t RelationDistance(const RelationMultiset& a, const RelationMultiset& b) {
  // Merge walk over the two sorted label maps.
  auto ia = a.counts().begin();
  auto ib = b.counts().begin();
  const auto ea = a.counts().end();
  const auto eb = b.counts().end();
  int64_t total = 0;
  while (ia != ea || ib != eb) {
    if (ib == eb || (ia != ea && ia->first < ib->first)) {
      total += ia->second;
      ++ia;
    } else if (ia == ea || ib->first < ia->first) {
      total += ib->second;
      ++ib;
    } else {
      total += std::llabs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return total;
}

Distance ComputeDistance(const StructureRepr& a, const StructureRepr& b) {
  if (a.kind() != b.kind()) {
    throw MetricMismatchError("cannot compare " +
                              std::string(ReprKindName(a.kind())) + " with " +
                              std::string(ReprKindName(b.kind())) +
                              " representation");
  }
  const Metric metric = MetricFor(a.kind());
  if (a.kind() == ReprKind::kRaw) {
    return Distance{Levenshtein(a.raw(), b.raw()), metric};
  }
  return Distance{RelationDistance(a.multiset(), b.multiset()), metric};
}

}  // namespace sit
