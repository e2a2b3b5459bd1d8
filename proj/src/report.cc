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

#include "sit/report.h"

#include <sstream>

#include "sit/errors.h"

namespace sit {

using json = nlohmann::json;

namespace {

json PairToJson(const TranslationPair& pair) {
  return {{"source", pair.source}, {"target", pair.target}};
}

std::optional<Metric> ParseMetricName(std::string_view name) {
  for (Metric m : {Metric::kRawLevenshtein, Metric::kConstituencyL1,
                   Metric::kDependencyL1}) {
    if (MetricName(m) == name) return m;
  }
  return std::nullopt;
}

std::string Cell(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

const json& Require(const json& object, const char* name) {
  if (!object.is_object() || !object.contains(name)) {
    throw ConfigError(std::string("report: missing field '") + name + "'");
  }
  return object[name];
}

}  // namespace

json IssueReportToJson(const IssueReport& report) {
  const RunMetadata& meta = report.metadata;
  json metadata = {{"config_hash", meta.config_hash},
                   {"engine", meta.engine},
                   {"metric", MetricName(meta.metric)},
                   {"threshold", meta.threshold},
                   {"report_k", meta.report_k},
                   {"source_lang", meta.source_lang},
                   {"target_lang", meta.target_lang},
                   {"originals", meta.originals}};
  if (meta.generated_at) metadata["generated_at"] = *meta.generated_at;

  json issues = json::array();
  for (const Issue& issue : report.issues) {
    json reported = json::array();
    for (size_t j = 0; j < issue.reported.size(); ++j) {
      const ScoredVariant& v = issue.reported[j];
      json entry = {{"rank", j + 1},
                    {"position", v.variant.source_position},
                    {"original_token", v.variant.original_token},
                    {"replacement", v.variant.replacement_token},
                    {"source", v.pair.source},
                    {"target", v.pair.target},
                    {"distance", v.dist.value}};
      entry["score"] = v.variant.backend_score ? json(*v.variant.backend_score)
                                               : json(nullptr);
      reported.push_back(std::move(entry));
    }
    issues.push_back({{"id", issue.id},
                      {"original", PairToJson(issue.original)},
                      {"reported", std::move(reported)}});
  }

  json skipped = json::array();
  for (const auto& [id, reason] : report.diagnostics.skipped) {
    skipped.push_back({{"id", id}, {"reason", reason}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"metadata", std::move(metadata)},
          {"issues", std::move(issues)},
          {"diagnostics",
           {{"clean", report.diagnostics.clean},
            {"untestable", report.diagnostics.untestable},
            {"skipped", std::move(skipped)}}}};
}

std::string RenderReportJson(const IssueReport& report) {
  return IssueReportToJson(report).dump(2) + "\n";
}

std::string RenderReportMarkdown(const IssueReport& report) {
  const RunMetadata& meta = report.metadata;
  std::ostringstream out;
  out << "# Structure-invariance issue report\n\n";
  out << "- Metric: " << MetricName(meta.metric) << "\n";
  out << "- Threshold: " << meta.threshold << "\n";
  out << "- Report k: " << meta.report_k << "\n";
  out << "- Engine: " << meta.engine << " (" << meta.source_lang << " -> "
      << meta.target_lang << ")\n";
  out << "- Config hash: `" << meta.config_hash << "`\n";
  out << "- Issues: " << report.issues.size() << " of " << meta.originals
      << " originals (" << report.diagnostics.clean << " clean, "
      << report.diagnostics.untestable.size() << " untestable, "
      << report.diagnostics.skipped.size() << " skipped)\n";

  for (const Issue& issue : report.issues) {
    out << "\n## Issue " << issue.id << "\n\n";
    out << "| | Source | Target | Distance |\n";
    out << "|---|---|---|---|\n";
    out << "| original | " << Cell(issue.original.source) << " | "
        << Cell(issue.original.target) << " | |\n";
    for (size_t j = 0; j < issue.reported.size(); ++j) {
      const ScoredVariant& v = issue.reported[j];
      out << "| " << j + 1 << ": " << Cell(v.variant.original_token) << " -> "
          << Cell(v.variant.replacement_token) << " | " << Cell(v.pair.source)
          << " | " << Cell(v.pair.target) << " | " << v.dist.value << " |\n";
    }
  }
  if (!report.diagnostics.skipped.empty()) {
    out << "\n## Skipped originals\n\n";
    for (const auto& [id, reason] : report.diagnostics.skipped) {
      out << "- " << id << ": " << Cell(reason) << "\n";
    }
  }
  return out.str();
}

IssueReport ParseIssueReport(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("report: invalid JSON at byte " + std::to_string(e.byte));
  }
  try {
    if (Require(doc, "schema_version").get<int>() != kReportSchemaVersion) {
      throw ConfigError("report: unsupported schema_version");
    }
    IssueReport report;
    const json& meta = Require(doc, "metadata");
    report.metadata.config_hash = Require(meta, "config_hash").get<std::string>();
    report.metadata.engine = Require(meta, "engine").get<std::string>();
    const auto metric = ParseMetricName(Require(meta, "metric").get<std::string>());
    if (!metric) throw ConfigError("report: unknown metric");
    report.metadata.metric = *metric;
    report.metadata.threshold = Require(meta, "threshold").get<int64_t>();
    report.metadata.report_k = Require(meta, "report_k").get<size_t>();
    report.metadata.source_lang = Require(meta, "source_lang").get<std::string>();
    report.metadata.target_lang = Require(meta, "target_lang").get<std::string>();
    report.metadata.originals = Require(meta, "originals").get<size_t>();
    if (meta.contains("generated_at")) {
      report.metadata.generated_at = meta["generated_at"].get<int64_t>();
    }

    for (const json& item : Require(doc, "issues")) {
      Issue issue;
      issue.id = Require(item, "id").get<int64_t>();
      issue.metric = report.metadata.metric;
      issue.threshold = report.metadata.threshold;
      const json& original = Require(item, "original");
      issue.original.source = Require(original, "source").get<std::string>();
      issue.original.target = Require(original, "target").get<std::string>();
      issue.original.engine = report.metadata.engine;
      for (const json& r : Require(item, "reported")) {
        ScoredVariant v;
        v.variant.source_position = Require(r, "position").get<size_t>();
        v.variant.original_token = Require(r, "original_token").get<std::string>();
        v.variant.replacement_token = Require(r, "replacement").get<std::string>();
        if (r.contains("score") && r["score"].is_number()) {
          v.variant.backend_score = r["score"].get<double>();
        }
        v.pair.source = Require(r, "source").get<std::string>();
        v.pair.target = Require(r, "target").get<std::string>();
        v.pair.engine = report.metadata.engine;
        v.dist = Distance{Require(r, "distance").get<int64_t>(), issue.metric};
        issue.reported.push_back(std::move(v));
      }
      report.issues.push_back(std::move(issue));
    }

    const json& diagnostics = Require(doc, "diagnostics");
    report.diagnostics.clean = Require(diagnostics, "clean").get<size_t>();
    report.diagnostics.untestable =
        Require(diagnostics, "untestable").get<std::vector<int64_t>>();
    for (const json& s : Require(diagnostics, "skipped")) {
      report.diagnostics.skipped.emplace_back(Require(s, "id").get<int64_t>(),
                                              Require(s, "reason").get<std::string>());
    }
    return report;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: ") + e.what());
  }
}

json ExperimentReportToJson(const ExperimentReport& report) {
  auto rational = [](const Rational& r) {
    return json{{"numerator", r.numerator()},
                {"denominator", r.denominator()},
                {"percent", r.ToPercent(1)}};
  };
  json out = {
      {"metric", MetricName(report.config.metric)},
      {"threshold", report.config.threshold},
      {"gen_k", report.config.gen_k},
      {"report_k", report.config.report_k},
      {"seed", report.config.seed},
      {"originals", report.originals},
      {"faulty_originals", report.faulty_originals},
      {"issues", report.detection.issues.size()},
      {"detected_faulty", report.detected_faulty},
      {"issues_with_fault", report.issues_with_fault},
      // Counted against the injected faults, not only over reported issues.
      {"recall", rational(report.recall)},
      {"precision", report.precision ? rational(*report.precision) : json(nullptr)},
  };
  if (report.accuracy) {
    out["accuracy"] = {{"k", report.accuracy->k},
                       {"issue_count", report.accuracy->issue_count},
                       {"buggy_count", report.accuracy->buggy_count},
                       {"value", rational(report.accuracy->accuracy)}};
  } else {
    out["accuracy"] = nullptr;
  }
  json issue_ids = json::array();
  for (const Issue& issue : report.detection.issues) issue_ids.push_back(issue.id);
  out["issue_ids"] = std::move(issue_ids);
  return out;
}

}  // namespace sit
