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

#include "sit/evaluation.h"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sit/errors.h"
#include "sit/structure_repr.h"

namespace sit {

using json = nlohmann::json;

namespace {

json ParseJsonOrThrow(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(what) + ": invalid JSON at byte " +
                      std::to_string(e.byte));
  }
}

int64_t IntField(const json& record, const char* name, const char* what) {
  if (!record.is_object() || !record.contains(name) ||
      !record[name].is_number_integer()) {
    throw ConfigError(std::string(what) + ": record lacks integer '" + name +
                      "'");
  }
  return record[name].get<int64_t>();
}

std::string StringField(const json& record, const char* name, const char* what) {
  if (!record.is_object() || !record.contains(name) ||
      !record[name].is_string()) {
    throw ConfigError(std::string(what) + ": record lacks string '" + name +
                      "'");
  }
  return record[name].get<std::string>();
}

size_t Below(std::mt19937_64& rng, size_t n) {
  return static_cast<size_t>(rng() % n);
}

// Seeded Fisher-Yates over the eligible originals.
std::vector<const GeneratedOriginal*> ShuffledEligible(
    std::span<const GeneratedOriginal> generated, const std::set<int64_t>& exclude,
    std::mt19937_64& rng) {
  std::vector<const GeneratedOriginal*> eligible;
  for (const GeneratedOriginal& g : generated) {
    if (!g.variants.empty() && !exclude.contains(g.id)) eligible.push_back(&g);
  }
  for (size_t i = eligible.size(); i > 1; --i) {
    std::swap(eligible[i - 1], eligible[Below(rng, i)]);
  }
  return eligible;
}

void SortPlan(FaultPlan* plan) {
  std::sort(plan->begin(), plan->end(),
            [](const FaultSpec& a, const FaultSpec& b) { return a.target < b.target; });
}

}  // namespace

Rational::Rational(int64_t numerator, int64_t denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  const __int128 lhs = static_cast<__int128>(num_) * other.den_;
  const __int128 rhs = static_cast<__int128>(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::ToFixed(int decimals) const {
  __int128 unit = 1;
  for (int i = 0; i < decimals; ++i) unit *= 10;
  const __int128 scaled = static_cast<__int128>(num_) * unit;
  const __int128 den = den_;
  // Half-up rounding of a non-negative value.
  const __int128 rounded = (2 * scaled + den) / (2 * den);
  std::string out = std::to_string(static_cast<int64_t>(rounded / unit));
  if (decimals > 0) {
    const std::string frac = std::to_string(static_cast<int64_t>(rounded % unit));
    out += "." + std::string(static_cast<size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

std::string Rational::ToPercent(int decimals) const {
  return Rational(num_ * 100, den_).ToFixed(decimals) + "%";
}

AccuracyReport TopkAccuracy(std::span<const Issue> issues,
                            std::span<const IssueLabel> labels, size_t k) {
  if (issues.empty()) {
    throw UndefinedAccuracyError("top-k accuracy is undefined for zero issues");
  }
  if (k == 0) throw ConfigError("k must be positive");
  std::unordered_map<int64_t, std::set<int>> positions;
  for (const IssueLabel& label : labels) {
    positions[label.issue_id].insert(label.buggy_positions.begin(),
                                     label.buggy_positions.end());
  }
  AccuracyReport report;
  report.k = k;
  report.issue_count = issues.size();
  for (const Issue& issue : issues) {
    const auto it = positions.find(issue.id);
    if (it == positions.end()) continue;
    const int limit = static_cast<int>(std::min(k, issue.reported.size()));
    const bool buggy = std::any_of(it->second.begin(), it->second.end(),
                                   [limit](int p) { return p >= 0 && p <= limit; });
    if (buggy) ++report.buggy_count;
  }
  report.accuracy = Rational(static_cast<int64_t>(report.buggy_count),
                             static_cast<int64_t>(report.issue_count));
  return report;
}

std::vector<IssueLabel> ParseLabels(std::string_view json_text) {
  const json parsed = ParseJsonOrThrow(json_text, "labels");
  if (!parsed.is_array()) throw ConfigError("labels: expected a JSON array");
  std::vector<IssueLabel> labels;
  for (const json& record : parsed) {
    IssueLabel label;
    label.issue_id = IntField(record, "issue_id", "labels");
    if (!record.contains("buggy_positions") ||
        !record["buggy_positions"].is_array()) {
      throw ConfigError("labels: record lacks array 'buggy_positions'");
    }
    for (const json& p : record["buggy_positions"]) {
      if (!p.is_number_integer() || p.get<int64_t>() < 0) {
        throw ConfigError("labels: positions must be non-negative integers");
      }
      label.buggy_positions.insert(p.get<int>());
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<IssueLabel> LoadLabels(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const CorpusLoadError& e) {
    throw ConfigError(std::string("labels: ") + e.what());
  }
  return ParseLabels(text);
}

std::string SerializeLabels(std::span<const IssueLabel> labels) {
  json out = json::array();
  for (const IssueLabel& label : labels) {
    out.push_back({{"issue_id", label.issue_id},
                   {"buggy_positions", label.buggy_positions}});
  }
  return out.dump() + "\n";
}

std::vector<SweepPoint> ThresholdSweep(std::span<const ScoredOriginal> scored,
                                       std::span<const int64_t> thresholds,
                                       std::span<const IssueLabel> labels,
                                       size_t k) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw ConfigError("sweep thresholds must be ascending");
  }
  std::vector<std::future<SweepPoint>> pending;
  pending.reserve(thresholds.size());
  for (const int64_t threshold : thresholds) {
    pending.push_back(std::async(std::launch::async, [&, threshold] {
      const DetectionResult result = DetectScored(scored, {threshold, k});
      SweepPoint point{threshold, result.issues.size(), std::nullopt};
      if (!result.issues.empty()) {
        point.top1_accuracy = TopkAccuracy(result.issues, labels, 1).accuracy;
      }
      return point;
    }));
  }
  std::vector<SweepPoint> points;
  points.reserve(pending.size());
  for (auto& f : pending) points.push_back(f.get());
  return points;
}

std::string SweepCsv(std::span<const SweepPoint> points) {
  std::ostringstream out;
  out << "threshold,issue_count,top1_accuracy\n";
  for (const SweepPoint& p : points) {
    out << p.threshold << ',' << p.issue_count << ',';
    if (p.top1_accuracy) {
      out << p.top1_accuracy->ToFixed(4);
    } else {
      out << "NA";
    }
    out << '\n';
  }
  return out.str();
}

FaultPlan ParseFaultPlan(std::string_view json_text) {
  const json parsed = ParseJsonOrThrow(json_text, "fault plan");
  if (!parsed.is_array()) throw ConfigError("fault plan: expected a JSON array");
  FaultPlan plan;
  for (const json& record : parsed) {
    FaultSpec fault;
    fault.target.original_id = IntField(record, "original_id", "fault plan");
    const int64_t position = IntField(record, "position", "fault plan");
    if (position < 0) throw ConfigError("fault plan: negative position");
    fault.target.position = static_cast<size_t>(position);
    fault.target.replacement = StringField(record, "replacement", "fault plan");
    const std::string kind = StringField(record, "kind", "fault plan");
    const auto parsed_kind = ParseFaultKind(kind);
    if (!parsed_kind) throw ConfigError("fault plan: unknown kind '" + kind + "'");
    fault.kind = *parsed_kind;
    if (record.contains("detail")) {
      fault.detail = StringField(record, "detail", "fault plan");
    }
    plan.push_back(std::move(fault));
  }
  return plan;
}

FaultPlan LoadFaultPlan(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const CorpusLoadError& e) {
    throw ConfigError(std::string("fault plan: ") + e.what());
  }
  return ParseFaultPlan(text);
}

std::string SerializeFaultPlan(const FaultPlan& plan) {
  json out = json::array();
  for (const FaultSpec& fault : plan) {
    out.push_back({{"original_id", fault.target.original_id},
                   {"position", fault.target.position},
                   {"replacement", fault.target.replacement},
                   {"kind", FaultKindName(fault.kind)},
                   {"detail", fault.detail}});
  }
  return out.dump(1) + "\n";
}

VariantRef RefOf(int64_t original_id, const Variant& variant) {
  return VariantRef{original_id, variant.source_position,
                    variant.replacement_token};
}

std::unordered_map<std::string, FaultSpec> ResolveFaults(
    const FaultPlan& plan, std::span<const GeneratedOriginal> generated) {
  std::map<VariantRef, std::string> text_of;
  for (const GeneratedOriginal& g : generated) {
    for (const Variant& v : g.variants) text_of.emplace(RefOf(g.id, v), v.Text());
  }
  std::unordered_map<std::string, FaultSpec> faults;
  for (const FaultSpec& fault : plan) {
    const auto it = text_of.find(fault.target);
    if (it == text_of.end()) {
      throw ConfigError("fault plan references nonexistent variant (original " +
                        std::to_string(fault.target.original_id) + ", position " +
                        std::to_string(fault.target.position) + ", '" +
                        fault.target.replacement + "')");
    }
    // Surfaces a detail that does not fit the text now rather than mid-batch.
    (void)MockTranslate(it->second, {}, &fault);
    if (!faults.emplace(it->second, fault).second) {
      throw ConfigError("two planned faults target the same text '" +
                        it->second + "'");
    }
  }
  return faults;
}

FaultPlan PlanFaults(std::span<const GeneratedOriginal> generated, size_t count,
                     std::span<const FaultKind> kinds, uint64_t seed,
                     const std::set<int64_t>& exclude) {
  if (count == 0) return {};
  if (kinds.empty()) throw ConfigError("no fault kinds to plan");
  std::mt19937_64 rng(seed);
  const auto eligible = ShuffledEligible(generated, exclude, rng);
  if (eligible.size() < count) {
    throw ConfigError("only " + std::to_string(eligible.size()) +
                      " originals can carry a fault, " + std::to_string(count) +
                      " requested");
  }
  FaultPlan plan;
  for (size_t i = 0; i < count; ++i) {
    const GeneratedOriginal& g = *eligible[i];
    const Variant& v = g.variants[Below(rng, g.variants.size())];
    FaultSpec fault;
    fault.kind = kinds[Below(rng, kinds.size())];
    fault.target = RefOf(g.id, v);
    switch (fault.kind) {
      case FaultKind::kWordMistranslation:
        fault.detail = v.replacement_token + "=wrong";
        break;
      case FaultKind::kIncorrectModification:
        fault.detail = v.source_position > 0 || v.sentence_tokens.size() < 2
                          ? v.replacement_token
                          : v.sentence_tokens[1].text;
        break;
      case FaultKind::kUnclearLogic:
        break;
      default:
        fault.detail = v.replacement_token;
        break;
    }
    plan.push_back(std::move(fault));
  }
  SortPlan(&plan);
  return plan;
}

FaultPlan PlanNearMisses(std::span<const GeneratedOriginal> generated,
                         std::span<const size_t> extra_copies, uint64_t seed,
                         const std::set<int64_t>& exclude) {
  std::mt19937_64 rng(seed);
  const auto eligible = ShuffledEligible(generated, exclude, rng);
  if (eligible.size() < extra_copies.size()) {
    throw ConfigError("not enough originals for near-miss perturbations");
  }
  FaultPlan plan;
  for (size_t i = 0; i < extra_copies.size(); ++i) {
    if (extra_copies[i] == 0) throw ConfigError("near-miss copies must be >= 1");
    const GeneratedOriginal& g = *eligible[i];
    const Variant& v = g.variants[Below(rng, g.variants.size())];
    plan.push_back(FaultSpec{FaultKind::kOverTranslation, RefOf(g.id, v),
                             v.replacement_token + "*" +
                                 std::to_string(extra_copies[i])});
  }
  SortPlan(&plan);
  return plan;
}

std::vector<IssueLabel> LabelsFromFaults(std::span<const Issue> issues,
                                         const std::set<VariantRef>& faulty) {
  std::vector<IssueLabel> labels;
  for (const Issue& issue : issues) {
    IssueLabel label{issue.id, {}};
    for (size_t j = 0; j < issue.reported.size(); ++j) {
      if (faulty.contains(RefOf(issue.id, issue.reported[j].variant))) {
        label.buggy_positions.insert(static_cast<int>(j + 1));
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<IssueLabel> LabelsFromFaults(std::span<const ScoredOriginal> scored,
                                         const std::set<VariantRef>& faulty) {
  std::vector<IssueLabel> labels;
  for (const ScoredOriginal& original : scored) {
    std::vector<const ScoredVariant*> order;
    for (const ScoredVariant& v : original.scored) order.push_back(&v);
    std::stable_sort(order.begin(), order.end(),
                     [](const ScoredVariant* a, const ScoredVariant* b) {
                       return ReportOrder(*a, *b);
                     });
    IssueLabel label{original.id, {}};
    for (size_t j = 0; j < order.size(); ++j) {
      if (faulty.contains(RefOf(original.id, order[j]->variant))) {
        label.buggy_positions.insert(static_cast<int>(j + 1));
      }
    }
    if (!label.buggy_positions.empty()) labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<GeneratedOriginal> GenerateAll(const ExperimentInputs& inputs,
                                           size_t gen_k) {
  if (!inputs.ids.empty() && inputs.ids.size() != inputs.sentences.size()) {
    throw ConfigError("experiment ids are not parallel to sentences");
  }
  const DictionaryBackend backend(inputs.substitutions);
  std::vector<GeneratedOriginal> generated;
  generated.reserve(inputs.sentences.size());
  for (size_t i = 0; i < inputs.sentences.size(); ++i) {
    GeneratedOriginal g;
    g.id = inputs.ids.empty() ? static_cast<int64_t>(i + 1) : inputs.ids[i];
    g.sentence = TagSentence(Tokenize(inputs.sentences[i]), inputs.pos_lexicon);
    g.sentence.raw = inputs.sentences[i];
    GenerationResult result =
        GenerateVariants(g.sentence, backend, gen_k, inputs.pos_lexicon);
    g.variants = std::move(result.variants);
    g.diagnostics = std::move(result.diagnostics);
    generated.push_back(std::move(g));
  }
  return generated;
}

PreparedExperiment PrepareExperiment(const ExperimentInputs& inputs,
                                     const FaultPlan& plan,
                                     const ExperimentConfig& config) {
  PreparedExperiment prepared;
  prepared.generated = GenerateAll(inputs, config.gen_k);
  auto faults_by_text = ResolveFaults(plan, prepared.generated);
  for (const FaultSpec& fault : plan) {
    prepared.faulty.insert(fault.target);
    prepared.faulty_originals.insert(fault.target.original_id);
  }

  constexpr std::string_view kEngine = "mock";
  std::vector<TranslationRequest> requests;
  for (const GeneratedOriginal& g : prepared.generated) {
    requests.push_back({g.sentence.raw, config.source_lang, config.target_lang,
                        std::string(kEngine)});
    for (const Variant& v : g.variants) {
      requests.push_back({v.Text(), config.source_lang, config.target_lang,
                          std::string(kEngine)});
    }
  }
  TranslationCache cache;
  MockTranslator translator(inputs.target_lexicon, std::move(faults_by_text));
  const BatchResult batch = TranslateBatch(requests, cache, translator, {});

  const StubParser dependency_parser(inputs.dependency_labels);
  const StubParser constituency_parser(inputs.constituency_labels.empty()
                                           ? inputs.dependency_labels
                                           : inputs.constituency_labels);
  auto represent = [&](const std::string& target) {
    switch (config.metric) {
      case Metric::kRawLevenshtein:
        return StructureRepr::Raw(target);
      case Metric::kConstituencyL1:
        return StructureRepr::Constituency(constituency_parser.Parse(target));
      case Metric::kDependencyL1:
        break;
    }
    return StructureRepr::Dependency(dependency_parser.Parse(target));
  };

  size_t cursor = 0;
  for (const GeneratedOriginal& g : prepared.generated) {
    OriginalRecord record;
    record.id = g.id;
    const TranslationOutcome& original = batch.outcomes[cursor++];
    if (original.pair) {
      record.original = *original.pair;
      record.original_repr = represent(original.pair->target);
    } else {
      record.failure = "translation failed: " + original.error;
    }
    for (const Variant& v : g.variants) {
      const TranslationOutcome& outcome = batch.outcomes[cursor++];
      if (!outcome.pair) continue;
      record.variants.push_back(
          VariantCandidate{v, *outcome.pair, represent(outcome.pair->target)});
    }
    prepared.records.push_back(std::move(record));
  }
  return prepared;
}

ExperimentReport ScoreExperiment(const PreparedExperiment& prepared,
                                 const ExperimentConfig& config) {
  ExperimentReport report;
  report.config = config;
  report.originals = prepared.records.size();
  report.detection =
      RunDetection(prepared.records, {config.threshold, config.report_k});
  report.labels = LabelsFromFaults(report.detection.issues, prepared.faulty);
  report.faulty_originals = prepared.faulty_originals.size();

  for (const IssueLabel& label : report.labels) {
    if (label.buggy_positions.empty()) continue;
    ++report.issues_with_fault;
    if (prepared.faulty_originals.contains(label.issue_id)) {
      ++report.detected_faulty;
    }
  }
  report.recall = report.faulty_originals == 0
                      ? Rational(1, 1)
                      : Rational(static_cast<int64_t>(report.detected_faulty),
                                 static_cast<int64_t>(report.faulty_originals));
  if (!report.detection.issues.empty()) {
    report.precision =
        Rational(static_cast<int64_t>(report.issues_with_fault),
                 static_cast<int64_t>(report.detection.issues.size()));
    report.accuracy =
        TopkAccuracy(report.detection.issues, report.labels, config.report_k);
  }
  return report;
}

ExperimentReport RunFaultInjectionExperiment(const ExperimentInputs& inputs,
                                             const FaultPlan& plan,
                                             const ExperimentConfig& config) {
  return ScoreExperiment(PrepareExperiment(inputs, plan, config), config);
}

}  // namespace sit
