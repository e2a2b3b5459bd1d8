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

#ifndef SIT_REPORT_H_
#define SIT_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "sit/evaluation.h"
#include "sit/issue_detector.h"

namespace sit {

inline constexpr int kReportSchemaVersion = 1;

struct RunMetadata {
  std::string config_hash;
  std::string engine;
  Metric metric = Metric::kDependencyL1;
  int64_t threshold = 0;
  size_t report_k = kDefaultReportK;
  std::string source_lang;
  std::string target_lang;
  size_t originals = 0;
  // Seconds since the epoch; only written when requested so that reports
  // stay byte-stable by default.
  std::optional<int64_t> generated_at;
};

struct IssueReport {
  RunMetadata metadata;
  std::vector<Issue> issues;
  DetectionDiagnostics diagnostics;
};

nlohmann::json IssueReportToJson(const IssueReport& report);
// Pretty-printed JSON followed by a newline.
std::string RenderReportJson(const IssueReport& report);
std::string RenderReportMarkdown(const IssueReport& report);

// Reads back what RenderReportJson wrote. Throws ConfigError on a document
// that does not follow the schema.
IssueReport ParseIssueReport(std::string_view json_text);

nlohmann::json ExperimentReportToJson(const ExperimentReport& report);

}  // namespace sit

#endif  // SIT_REPORT_H_
