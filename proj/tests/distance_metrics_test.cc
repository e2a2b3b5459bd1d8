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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "sit/errors.h"
#include "sit/utf8.h"
#include "test_util.h"

namespace sit {
namespace {

using testing::OracleLevenshtein;
using testing::OracleRelationDistance;

TEST(OracleTest, KittenSitting) {
  // k->s, e->i, +g.
  EXPECT_EQ(OracleLevenshtein(U"kitten", U"sitting"), 3);
  EXPECT_EQ(OracleLevenshtein(U"", U"abc"), 3);
  EXPECT_EQ(OracleRelationDistance({{"NP", 2}, {"VP", 1}, {"PP", 1}},
                                   {{"NP", 1}, {"VP", 1}}),
            2);
}

TEST(LevenshteinTest, Examples) {
  EXPECT_EQ(Levenshtein("kitten", "sitting"), 3);
  EXPECT_EQ(Levenshtein("", "abc"), 3);
  EXPECT_EQ(Levenshtein("abc", ""), 3);
  EXPECT_EQ(Levenshtein("", ""), 0);
  EXPECT_EQ(Levenshtein("same", "same"), 0);
}

TEST(LevenshteinTest, CountsCodePointsNotBytes) {
  EXPECT_EQ(Levenshtein("狗", "猫"), 1);
  EXPECT_EQ(Levenshtein("大狗", "狗"), 1);
  EXPECT_EQ(Levenshtein("a b", "ab"), 1);
  EXPECT_EQ(Levenshtein("\xF0\x9F\x98\x80", ""), 1);
}

TEST(LevenshteinTest, MatchesOracleProperty) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const std::u32string a = testing::RandomCodePoints(rng, 40);
    const std::u32string b = testing::RandomCodePoints(rng, 40);
    ASSERT_EQ(Levenshtein(utf8::Encode(a), utf8::Encode(b)), OracleLevenshtein(a, b));
  }
}

TEST(RelationDistanceTest, Examples) {
  EXPECT_EQ(RelationDistance({{"NP", 2}, {"VP", 1}}, {{"NP", 2}, {"VP", 1}}), 0);
  EXPECT_EQ(RelationDistance({{"NP", 2}, {"VP", 1}, {"PP", 1}}, {{"NP", 1}, {"VP", 1}}),
            2);
  EXPECT_EQ(RelationDistance({}, {{"nsubj", 1}, {"obj", 1}}), 2);
}

TEST(RelationDistanceTest, MatchesOracleProperty) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 1000; ++i) {
    const RelationMultiset a = testing::RandomMultiset(rng);
    const RelationMultiset b = testing::RandomMultiset(rng);
    ASSERT_EQ(RelationDistance(a, b), OracleRelationDistance(a, b));
  }
}

TEST(ComputeDistanceTest, Dispatch) {
  EXPECT_EQ(ComputeDistance(StructureRepr::Raw("abc"), StructureRepr::Raw("abc")),
            (Distance{0, Metric::kRawLevenshtein}));
  EXPECT_EQ(ComputeDistance(StructureRepr::Dependency({{"root", 1}, {"nsubj", 1}}),
                            StructureRepr::Dependency({{"root", 1}, {"obj", 1}})),
            (Distance{2, Metric::kDependencyL1}));
  EXPECT_EQ(ComputeDistance(StructureRepr::Constituency({{"NP", 1}}),
                            StructureRepr::Constituency({})),
            (Distance{1, Metric::kConstituencyL1}));
}

TEST(ComputeDistanceTest, MismatchedKinds) {
  EXPECT_THROW(ComputeDistance(StructureRepr::Raw("a"),
                               StructureRepr::Dependency({{"root", 1}})),
               MetricMismatchError);
  EXPECT_THROW(ComputeDistance(StructureRepr::Constituency({}),
                               StructureRepr::Dependency({})),
               MetricMismatchError);
}

TEST(MetricNamesTest, FlagsAndNames) {
  EXPECT_EQ(ParseMetricFlag("raw"), Metric::kRawLevenshtein);
  EXPECT_EQ(ParseMetricFlag("constituency"), Metric::kConstituencyL1);
  EXPECT_EQ(ParseMetricFlag("dependency"), Metric::kDependencyL1);
  EXPECT_FALSE(ParseMetricFlag("tree").has_value());
  EXPECT_EQ(MetricName(Metric::kDependencyL1), "DEPENDENCY_L1");
  EXPECT_EQ(MetricFlagName(Metric::kRawLevenshtein), "raw");
}

StructureRepr RandomRepr(std::mt19937_64& rng, ReprKind kind) {
  switch (kind) {
    case ReprKind::kRaw:
      return StructureRepr::Raw(utf8::Encode(testing::RandomCodePoints(rng, 12)));
    case ReprKind::kConstituency:
      return StructureRepr::Constituency(testing::RandomMultiset(rng));
    case ReprKind::kDependency:
      break;
  }
  return StructureRepr::Dependency(testing::RandomMultiset(rng));
}

class MetricAxiomsTest : public ::testing::TestWithParam<ReprKind> {};

TEST_P(MetricAxiomsTest, HoldOverRandomTriples) {
  std::mt19937_64 rng(107 + static_cast<int>(GetParam()));
  for (int i = 0; i < 500; ++i) {
    const StructureRepr x = RandomRepr(rng, GetParam());
    const StructureRepr y = i % 7 == 0 ? x : RandomRepr(rng, GetParam());
    const StructureRepr z = RandomRepr(rng, GetParam());
    const int64_t xy = ComputeDistance(x, y).value;
    ASSERT_EQ(xy, ComputeDistance(y, x).value);
    ASSERT_EQ(ComputeDistance(x, x).value, 0);
    ASSERT_EQ(xy == 0, x == y);
    ASSERT_LE(ComputeDistance(x, z).value, xy + ComputeDistance(y, z).value);
    ASSERT_GE(xy, 0);
  }
}

INSTANTIATE_TEST_SUITE_P(AllMetrics, MetricAxiomsTest,
                         ::testing::Values(ReprKind::kRaw, ReprKind::kConstituency,
                                           ReprKind::kDependency));

}  // namespace
}  // namespace sit
