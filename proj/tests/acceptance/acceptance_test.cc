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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../test_util.h"
#include "sit/distance_metrics.h"
#include "sit/evaluation.h"
#include "sit/pipeline.h"
#include "sit/report.h"
#include "sit/structure_repr.h"
#include "sit/synthetic.h"
#include "sit/utf8.h"

namespace sit {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

constexpr uint64_t kSeed = 42;
const FaultKind kStructural[] = {FaultKind::kUnderTranslation,
                                 FaultKind::kOverTranslation};

ExperimentConfig DepConfig(Metric metric = Metric::kDependencyL1) {
  ExperimentConfig c;
  c.metric = metric;
  c.threshold = 0;
  c.gen_k = 5;
  c.report_k = 1;
  c.seed = kSeed;
  return c;
}

Outcome MetricOracles() {
  const auto start = Clock::now();
  std::mt19937_64 rng(kSeed);
  size_t lev_mismatch = 0;
  size_t rel_mismatch = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::u32string a = testing::RandomCodePoints(rng, 40);
    const std::u32string b = testing::RandomCodePoints(rng, 40);
    lev_mismatch += Levenshtein(utf8::Encode(a), utf8::Encode(b)) !=
                    testing::OracleLevenshtein(a, b);
  }
  for (int i = 0; i < 1000; ++i) {
    const RelationMultiset a = testing::RandomMultiset(rng);
    const RelationMultiset b = testing::RandomMultiset(rng);
    rel_mismatch += RelationDistance(a, b) != testing::OracleRelationDistance(a, b);
  }
  const double secs = Seconds(start);
  return {lev_mismatch == 0 && rel_mismatch == 0 && secs < 2.0,
          "levenshtein mismatches " + std::to_string(lev_mismatch) +
              "/1000, relation mismatches " + std::to_string(rel_mismatch) +
              "/1000, " + Fmt(secs) + " s (limit 2 s)"};
}

StructureRepr RandomRepr(std::mt19937_64& rng, ReprKind kind) {
  if (kind == ReprKind::kRaw) {
    return StructureRepr::Raw(utf8::Encode(testing::RandomCodePoints(rng, 12)));
  }
  RelationMultiset m = testing::RandomMultiset(rng);
  return kind == ReprKind::kConstituency ? StructureRepr::Constituency(std::move(m))
                                         : StructureRepr::Dependency(std::move(m));
}

Outcome MetricAxioms() {
  std::mt19937_64 rng(kSeed + 1);
  std::ostringstream detail;
  bool pass = true;
  for (ReprKind kind : {ReprKind::kRaw, ReprKind::kConstituency, ReprKind::kDependency}) {
    size_t violations = 0;
    size_t equal_pairs = 0;
    for (int i = 0; i < 500; ++i) {
      const StructureRepr x = RandomRepr(rng, kind);
      // Every fifth triple repeats x so equal pairs are exercised.
      const StructureRepr y = i % 5 == 0 ? x : RandomRepr(rng, kind);
      const StructureRepr z = RandomRepr(rng, kind);
      const int64_t xy = ComputeDistance(x, y).value;
      const int64_t yx = ComputeDistance(y, x).value;
      const int64_t xz = ComputeDistance(x, z).value;
      const int64_t yz = ComputeDistance(y, z).value;
      equal_pairs += x == y;
      violations += xy != yx;
      violations += ComputeDistance(x, x).value != 0;
      violations += (xy == 0) != (x == y);
      violations += xz > xy + yz;
    }
    pass = pass && violations == 0;
    detail << ReprKindName(kind) << " " << violations << " violations ("
           << equal_pairs << " equal pairs); ";
  }
  return {pass, detail.str() + "500 triples per metric"};
}

Outcome NullCase() {
  const ExperimentInputs inputs = MakeSyntheticSuite(100, kSeed);
  std::ostringstream detail;
  bool pass = true;
  size_t variants = 0;
  for (const auto& g : GenerateAll(inputs, 5)) variants += g.variants.size();
  for (Metric m : {Metric::kRawLevenshtein, Metric::kConstituencyL1,
                   Metric::kDependencyL1}) {
    const ExperimentReport r = RunFaultInjectionExperiment(inputs, {}, DepConfig(m));
    pass = pass && r.detection.issues.empty() && r.originals == 100;
    detail << MetricName(m) << " " << r.detection.issues.size() << " issues; ";
  }
  pass = pass && variants == 500;
  return {pass, std::to_string(inputs.sentences.size()) + " sentences x " +
                    std::to_string(variants / 100) + " variants, threshold 0: " +
                    detail.str()};
}

Outcome FaultInjection() {
  const auto start = Clock::now();
  const ExperimentInputs inputs = MakeSyntheticSuite(100, kSeed);
  const auto generated = GenerateAll(inputs, 5);
  const FaultPlan plan = PlanFaults(generated, 30, kStructural, kSeed);
  const ExperimentReport r = RunFaultInjectionExperiment(inputs, plan, DepConfig());
  const ExperimentReport again = RunFaultInjectionExperiment(inputs, plan, DepConfig());
  const double secs = Seconds(start);
  const bool deterministic =
      ExperimentReportToJson(r).dump() == ExperimentReportToJson(again).dump();
  const bool exact = r.detection.issues.size() == 30 && r.recall == Rational(1, 1) &&
                     r.precision == Rational(1, 1) && r.accuracy &&
                     r.accuracy->accuracy == Rational(1, 1);
  std::string detail = std::to_string(r.detection.issues.size()) +
                       " issues, recall " + r.recall.ToFixed(3) + ", precision " +
                       (r.precision ? r.precision->ToFixed(3) : "NA") +
                       ", top-1 accuracy " +
                       (r.accuracy ? r.accuracy->accuracy.ToFixed(3) : "NA") +
                       ", deterministic " + (deterministic ? "yes" : "no") + ", " +
                       Fmt(secs) + " s (limit 5 s)";
  return {exact && deterministic && secs < 5.0, detail};
}

Outcome UnclearLogicBlindSpot() {
  const ExperimentInputs inputs = MakeSyntheticSuite(100, kSeed);
  const auto generated = GenerateAll(inputs, 5);
  const FaultKind reorder[] = {FaultKind::kUnclearLogic};
  const FaultPlan plan = PlanFaults(generated, 10, reorder, kSeed);
  const PreparedExperiment prepared = PrepareExperiment(inputs, plan, DepConfig());
  const ExperimentReport r = ScoreExperiment(prepared, DepConfig());
  // The reordered targets differ as strings but not as relation bags.
  size_t zero_distance = 0;
  size_t reordered = 0;
  for (const OriginalRecord& record : prepared.records) {
    for (const VariantCandidate& v : record.variants) {
      if (!prepared.faulty.count(RefOf(record.id, v.variant))) continue;
      zero_distance += ComputeDistance(*record.original_repr, v.repr).value == 0;
      reordered += v.pair.target != MockTranslate(v.pair.source, inputs.target_lexicon);
    }
  }
  const bool pass = prepared.faulty.size() == 10 && zero_distance == 10 &&
                    reordered == 10 && r.detection.issues.empty() &&
                    r.recall == Rational(0, 1);
  return {pass, "10 reorder faults: " + std::to_string(reordered) +
                    " targets reordered, " + std::to_string(zero_distance) +
                    " at distance 0, " + std::to_string(r.detection.issues.size()) +
                    " reported (expected miss), recall " + r.recall.ToFixed(3)};
}

Outcome ThresholdSweepShape() {
  const ExperimentInputs inputs = MakeSyntheticSuite(100, kSeed);
  const auto generated = GenerateAll(inputs, 5);
  FaultPlan plan = PlanFaults(generated, 30, kStructural, kSeed);
  std::set<int64_t> used;
  for (const FaultSpec& f : plan) used.insert(f.target.original_id);
  const std::vector<size_t> copies = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const FaultPlan near = PlanNearMisses(generated, copies, kSeed, used);
  plan.insert(plan.end(), near.begin(), near.end());
  const PreparedExperiment prepared = PrepareExperiment(inputs, plan, DepConfig());
  const auto scored = ScoreAll(prepared.records, nullptr);
  std::vector<int64_t> thresholds;
  for (int64_t t = 0; t <= 20; ++t) thresholds.push_back(t);
  const auto points = ThresholdSweep(scored, thresholds,
                                     LabelsFromFaults(scored, prepared.faulty), 1);
  const std::string csv = SweepCsv(points);
  const size_t rows = static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  bool non_increasing = true;
  bool zero_from_ten = true;
  std::string counts;
  for (size_t i = 0; i < points.size(); ++i) {
    if (i && points[i].issue_count > points[i - 1].issue_count) non_increasing = false;
    if (points[i].threshold >= 10 && points[i].issue_count != 0) zero_from_ten = false;
    counts += (i ? "," : "") + std::to_string(points[i].issue_count);
  }
  const bool pass = non_increasing && zero_from_ten && points[0].issue_count == 40 &&
                    rows == 21;
  return {pass, "issue counts [" + counts + "], " + std::to_string(rows) + " CSV rows"};
}

Outcome AccuracyArithmetic() {
  auto issues = [](size_t n) {
    std::vector<Issue> out(n);
    for (size_t i = 0; i < n; ++i) {
      out[i].id = static_cast<int64_t>(i + 1);
      out[i].reported.resize(3);
    }
    return out;
  };
  std::vector<IssueLabel> seventy;
  for (int i = 1; i <= 70; ++i) seventy.push_back({i, {1}});
  const std::vector<IssueLabel> four = {{1, {1}}, {2, {0}}, {3, {2}}, {4, {}}};
  const Rational a = TopkAccuracy(issues(100), seventy, 1).accuracy;
  const Rational b = TopkAccuracy(issues(4), four, 1).accuracy;
  const Rational c = TopkAccuracy(issues(4), four, 3).accuracy;
  const bool pass = a == Rational(70, 100) && b == Rational(1, 2) &&
                    c == Rational(3, 4) && a.ToPercent(1) == "70.0%" &&
                    b.ToPercent(1) == "50.0%" && c.ToPercent(1) == "75.0%";
  return {pass, "70/100 k=1 -> " + a.ToPercent(1) + "; {{1},{0},{2},{}} k=1 -> " +
                    b.ToPercent(1) + ", k=3 -> " + c.ToPercent(1)};
}

Outcome FormatRoundTrips() {
  std::mt19937_64 rng(kSeed + 2);
  size_t ptb_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const ConstituencyTree tree = testing::RandomTree(rng);
    const std::string text = SerializePtb(tree);
    const ConstituencyTree back = ParsePtb(text);
    ptb_failures += !(back == tree) || SerializePtb(back) != text;
  }
  const auto graphs =
      ParseConllu(testing::ReadText(testing::DataPath("ud_fixture.conllu")));
  size_t total_mismatch = 0;
  std::string totals;
  for (const DependencyGraph& g : graphs) {
    const int64_t total = DependencyMultiset(g).Total();
    total_mismatch += total != static_cast<int64_t>(g.nodes.size());
    totals += (totals.empty() ? "" : ",") + std::to_string(total);
  }
  const bool pass = ptb_failures == 0 && graphs.size() == 10 && total_mismatch == 0;
  return {pass, "PTB round-trip failures " + std::to_string(ptb_failures) +
                    "/200; CoNLL-U " + std::to_string(graphs.size()) +
                    " sentences, totals [" + totals + "] vs token counts, " +
                    std::to_string(total_mismatch) + " mismatches"};
}

// Every word gets its synonym plus one other word of the same tag, giving
// ten variants per five-slot sentence.
void WidenSubstitutions(ExperimentInputs* inputs) {
  std::map<PosTag, std::vector<std::string>> by_tag;
  std::vector<std::string> words;
  for (const auto& [word, repl] : inputs->substitutions) words.push_back(word);
  std::sort(words.begin(), words.end());
  for (const std::string& w : words) by_tag[inputs->pos_lexicon.Lookup(w)].push_back(w);
  for (const std::string& w : words) {
    auto& repl = inputs->substitutions[w];
    const auto& peers = by_tag[inputs->pos_lexicon.Lookup(w)];
    for (size_t i = 0; i < peers.size(); ++i) {
      const std::string& p = peers[(std::find(peers.begin(), peers.end(), w) -
                                    peers.begin() + 1 + static_cast<ptrdiff_t>(i) * 3) %
                                   peers.size()];
      if (p != w && p != repl[0]) {
        repl.push_back(p);
        break;
      }
    }
  }
}

// One CoNLL-U block per successful translation, labels from the relation
// lexicon, first token as root.
std::string ConlluFor(const std::filesystem::path& translations,
                      const WordMap& relations) {
  std::string out;
  std::istringstream in(testing::ReadText(translations));
  std::string line;
  while (std::getline(in, line)) {
    const nlohmann::json record = nlohmann::json::parse(line);
    if (!record.contains("target")) continue;
    const auto tokens = Tokenize(record["target"].get<std::string>());
    for (size_t i = 0; i < tokens.size(); ++i) {
      const auto it = relations.find(tokens[i].text);
      const std::string label = it == relations.end() ? "dep" : it->second;
      out += std::to_string(i + 1) + "\t" + tokens[i].text + "\t_\tX\t_\t_\t" +
             (i == 0 ? "0" : "1") + "\t" + label + "\t_\t_\n";
    }
    out += "\n";
  }
  return out;
}

Outcome PipelineDeterminismAndScale() {
  testing::TempDir dir;
  ExperimentInputs inputs = MakeSyntheticSuite(200, kSeed);
  WidenSubstitutions(&inputs);
  testing::WriteSuiteFiles(inputs, dir.path());

  RunConfig config;
  config.corpus = (dir / "corpus.txt").string();
  config.lexicon = (dir / "lexicon.tsv").string();
  config.dict = (dir / "dict.tsv").string();
  config.gen_k = 2;
  config.mock_lexicon = (dir / "zh.tsv").string();
  config.cache = (dir / "cache.json").string();
  config.out = (dir / "out").string();
  config.seed = kSeed;
  const GenerateSummary gen = RunGenerate(config);

  const FaultPlan plan = PlanFaults(GenerateAll(inputs, 2), 20, kStructural, kSeed);
  testing::WriteText(dir / "plan.json", SerializeFaultPlan(plan));
  config.fault_plan = (dir / "plan.json").string();
  const std::filesystem::path variants = std::filesystem::path(config.out) / kVariantsFile;
  RunTranslate(config, variants);
  const TranslateSummary warm = RunTranslate(config, variants);

  const std::filesystem::path translations =
      std::filesystem::path(config.out) / kTranslationsFile;
  testing::WriteText(dir / "targets.conllu", ConlluFor(translations, inputs.dependency_labels));
  config.parser = "preparsed";
  config.preparsed = (dir / "targets.conllu").string();
  config.threshold = 0;

  const auto start = Clock::now();
  const IssueReport first = RunDetect(config, translations);
  const std::string first_bytes =
      testing::ReadText(std::filesystem::path(config.out) / kReportJsonFile);
  const IssueReport second = RunDetect(config, translations);
  const double secs = Seconds(start) / 2;
  const std::string second_bytes =
      testing::ReadText(std::filesystem::path(config.out) / kReportJsonFile);

  const bool pass = gen.originals == 200 && gen.variants == 2000 &&
                    warm.engine_calls == 0 && secs < 5.0 &&
                    first_bytes == second_bytes && first.issues.size() == 20 &&
                    second.issues.size() == 20;
  return {pass, std::to_string(gen.originals) + " originals x " +
                    std::to_string(gen.variants / std::max<size_t>(gen.originals, 1)) +
                    " variants, warm-cache engine calls " +
                    std::to_string(warm.engine_calls) + ", detect " + Fmt(secs) +
                    " s per run (limit 5 s), " + std::to_string(first.issues.size()) +
                    " issues, report.json byte-identical " +
                    (first_bytes == second_bytes ? "yes" : "no")};
}

}  // namespace
}  // namespace sit

int main() {
  const std::vector<std::pair<const char*, std::function<sit::Outcome()>>> criteria = {
      {"metric oracle equivalence", sit::MetricOracles},
      {"metric axioms", sit::MetricAxioms},
      {"structure-invariance null case", sit::NullCase},
      {"fault-injection detection", sit::FaultInjection},
      {"reorder blind spot", sit::UnclearLogicBlindSpot},
      {"threshold sweep", sit::ThresholdSweepShape},
      {"top-k accuracy arithmetic", sit::AccuracyArithmetic},
      {"format round-trips", sit::FormatRoundTrips},
      {"pipeline determinism and scale", sit::PipelineDeterminismAndScale},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    sit::Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s  %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
