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
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sit/errors.h"

namespace sit {
namespace {

// Dependency repr at distance `d` from {root:1}.
StructureRepr At(int64_t d) {
  RelationMultiset m{{"root", 1}};
  m.Add("extra", d);
  return StructureRepr::Dependency(std::move(m));
}

VariantCandidate Candidate(size_t position, std::string replacement, int64_t d) {
  VariantCandidate c{{}, {}, At(d)};
  c.variant.source_position = position;
  c.variant.replacement_token = replacement;
  c.pair.source = "src " + std::to_string(position) + " " + replacement;
  c.pair.target = "tgt";
  return c;
}

OriginalRecord Record(int64_t id, std::vector<VariantCandidate> variants) {
  OriginalRecord r;
  r.id = id;
  r.original = TranslationPair{"orig", "orig-t", "mock", false};
  r.original_repr = At(0);
  r.variants = std::move(variants);
  return r;
}

std::vector<int64_t> Distances(const Issue& issue) {
  std::vector<int64_t> out;
  for (const auto& s : issue.reported) out.push_back(s.dist.value);
  return out;
}

std::optional<Issue> DetectRecord(const OriginalRecord& r, int64_t threshold, size_t k) {
  return Detect(r.id, *r.original, *r.original_repr, r.variants, threshold, k);
}

TEST(DetectTest, FilterAndSort) {
  const OriginalRecord r = Record(
      1, {Candidate(0, "a", 2), Candidate(1, "b", 5), Candidate(2, "c", 7),
          Candidate(3, "d", 1)});
  const auto issue = DetectRecord(r, 4, 2);
  ASSERT_TRUE(issue.has_value());
  EXPECT_EQ(Distances(*issue), (std::vector<int64_t>{7, 5}));
  EXPECT_EQ(issue->threshold, 4);
  EXPECT_EQ(issue->metric, Metric::kDependencyL1);
}

TEST(DetectTest, NothingAboveThreshold) {
  const OriginalRecord r = Record(
      1, {Candidate(0, "a", 2), Candidate(1, "b", 5), Candidate(2, "c", 7),
          Candidate(3, "d", 1)});
  EXPECT_FALSE(DetectRecord(r, 10, 2).has_value());
}

TEST(DetectTest, TieBreakByPositionThenReplacement) {
  const OriginalRecord r = Record(1, {Candidate(3, "x", 5), Candidate(1, "y", 5)});
  const auto issue = DetectRecord(r, 0, 1);
  ASSERT_TRUE(issue.has_value());
  EXPECT_EQ(issue->reported[0].variant.source_position, 1u);

  const OriginalRecord same_pos =
      Record(1, {Candidate(2, "zeta", 5), Candidate(2, "alpha", 5)});
  EXPECT_EQ(DetectRecord(same_pos, 0, 1)->reported[0].variant.replacement_token,
            "alpha");
}

TEST(DetectTest, StrictThreshold) {
  const OriginalRecord r = Record(1, {Candidate(0, "a", 4)});
  EXPECT_FALSE(DetectRecord(r, 4, 3).has_value());
  EXPECT_TRUE(DetectRecord(r, 3, 3).has_value());
}

TEST(DetectTest, RejectsBadConfig) {
  const OriginalRecord r = Record(1, {Candidate(0, "a", 4)});
  EXPECT_THROW(DetectRecord(r, 0, 0), ConfigError);
  EXPECT_THROW(DetectRecord(r, -1, 1), ConfigError);
}

TEST(DetectTest, DistanceIsTargetSide) {
  // Sources differ; targets parse identically, so nothing is reported.
  OriginalRecord r = Record(1, {Candidate(0, "a", 0)});
  r.variants[0].pair.source = "completely different source text";
  EXPECT_FALSE(DetectRecord(r, 0, 1).has_value());
}

TEST(RunDetectionTest, CleanCorpus) {
  std::vector<OriginalRecord> records;
  for (int i = 1; i <= 200; ++i) {
    records.push_back(Record(i, {Candidate(0, "a", 1), Candidate(1, "b", 2)}));
  }
  const DetectionResult r = RunDetection(records, {4, 3});
  EXPECT_TRUE(r.issues.empty());
  EXPECT_EQ(r.diagnostics.clean, 200u);
}

TEST(RunDetectionTest, ThirtyFaultsAtThresholdZero) {
  std::vector<OriginalRecord> records;
  for (int i = 1; i <= 100; ++i) {
    std::vector<VariantCandidate> vs;
    for (size_t p = 0; p < 5; ++p) vs.push_back(Candidate(p, "r", 0));
    if (i % 10 < 3) vs[2] = Candidate(2, "r", 1);
    records.push_back(Record(i, std::move(vs)));
  }
  const DetectionResult r = RunDetection(records, {0, 1});
  ASSERT_EQ(r.issues.size(), 30u);
  EXPECT_EQ(r.diagnostics.clean, 70u);
  for (size_t i = 1; i < r.issues.size(); ++i) {
    EXPECT_LT(r.issues[i - 1].id, r.issues[i].id);
  }
}

TEST(RunDetectionTest, FailuresAndUntestable) {
  std::vector<OriginalRecord> records;
  records.push_back(Record(1, {Candidate(0, "a", 3)}));
  OriginalRecord failed;
  failed.id = 2;
  failed.failure = "translation failed: HTTP 500";
  records.push_back(failed);
  records.push_back(Record(3, {}));
  const DetectionResult r = RunDetection(records, {0, 1});
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].id, 1);
  ASSERT_EQ(r.diagnostics.skipped.size(), 1u);
  EXPECT_EQ(r.diagnostics.skipped[0].first, 2);
  EXPECT_EQ(r.diagnostics.untestable, std::vector<int64_t>{3});
  EXPECT_EQ(r.diagnostics.clean, 0u);
}

TEST(RunDetectionTest, MixedKindsRaise) {
  OriginalRecord r = Record(1, {Candidate(0, "a", 1)});
  r.variants[0].repr = StructureRepr::Raw("x");
  EXPECT_THROW(RunDetection(std::vector<OriginalRecord>{r}, {0, 1}),
               MetricMismatchError);
}

std::vector<OriginalRecord> RandomRecords(std::mt19937_64& rng, size_t n) {
  std::vector<OriginalRecord> records;
  for (size_t i = 0; i < n; ++i) {
    std::vector<VariantCandidate> vs;
    const size_t m = rng() % 8;
    for (size_t j = 0; j < m; ++j) {
      vs.push_back(Candidate(rng() % 6, std::string(1, "abc"[rng() % 3]),
                             static_cast<int64_t>(rng() % 12)));
    }
    records.push_back(Record(static_cast<int64_t>(i + 1), std::move(vs)));
  }
  return records;
}

TEST(RunDetectionTest, InvariantsProperty) {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 50; ++trial) {
    const auto records = RandomRecords(rng, 150);
    const size_t k = 1 + rng() % 4;
    std::set<int64_t> previous;
    bool first = true;
    for (int64_t t = 0; t <= 12; ++t) {
      const DetectionResult r = RunDetection(records, {t, k});
      std::set<int64_t> ids;
      for (const Issue& issue : r.issues) {
        ids.insert(issue.id);
        ASSERT_GE(issue.reported.size(), 1u);
        ASSERT_LE(issue.reported.size(), k);
        for (size_t j = 0; j < issue.reported.size(); ++j) {
          ASSERT_GT(issue.reported[j].dist.value, t);
          if (j) ASSERT_FALSE(ReportOrder(issue.reported[j], issue.reported[j - 1]));
        }
      }
      if (!first) {
        ASSERT_TRUE(std::includes(previous.begin(), previous.end(), ids.begin(),
                                  ids.end()));
      }
      previous = std::move(ids);
      first = false;
    }
  }
}

TEST(RunDetectionTest, DeterministicProperty) {
  std::mt19937_64 rng(223);
  const auto records = RandomRecords(rng, 500);
  const DetectionResult a = RunDetection(records, {2, 3});
  const DetectionResult b = RunDetection(records, {2, 3});
  ASSERT_EQ(a.issues.size(), b.issues.size());
  for (size_t i = 0; i < a.issues.size(); ++i) {
    ASSERT_EQ(a.issues[i].id, b.issues[i].id);
    ASSERT_EQ(Distances(a.issues[i]), Distances(b.issues[i]));
    for (size_t j = 0; j < a.issues[i].reported.size(); ++j) {
      ASSERT_EQ(a.issues[i].reported[j].variant.source_position,
                b.issues[i].reported[j].variant.source_position);
    }
  }
}

TEST(DefaultThresholdTest, Values) {
  EXPECT_EQ(DefaultThreshold(Metric::kDependencyL1), 4);
  EXPECT_EQ(DefaultThreshold(Metric::kConstituencyL1), 4);
  EXPECT_EQ(DefaultThreshold(Metric::kRawLevenshtein), 10);
  EXPECT_EQ(kHighPrecisionRelationThreshold, 15);
  EXPECT_EQ(kDefaultReportK, 3u);
}

}  // namespace
}  // namespace sit
