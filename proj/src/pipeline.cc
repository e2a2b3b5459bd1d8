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

#include "sit/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "sit/errors.h"
#include "sit/mlm_backend.h"
#include "sit/structure_repr.h"
#include "sit/synthetic.h"
#include "sit/text_corpus.h"
#include "sit/translation_gateway.h"
#include "sit/variant_generator.h"

namespace sit {

using json = nlohmann::json;

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ConfigError("write failed for " + path.string());
}

std::vector<json> ReadJsonLines(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const CorpusLoadError& e) {
    throw ConfigError(e.what());
  }
  std::vector<json> lines;
  size_t start = 0;
  size_t line_no = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": invalid JSON at byte " + std::to_string(e.byte));
    }
  }
  return lines;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

json ScoreJson(const std::optional<double>& score) {
  return score ? json(*score) : json(nullptr);
}

std::optional<double> ScoreFrom(const json& record) {
  if (record.contains("score") && record["score"].is_number()) {
    return record["score"].get<double>();
  }
  return std::nullopt;
}

// The corpus as (id, tagged sentence) pairs plus the filtered count.
struct LoadedCorpus {
  std::vector<std::pair<int64_t, TaggedSentence>> sentences;
  size_t filtered = 0;
};

LoadedCorpus LoadTaggedCorpus(const RunConfig& config, const PosLexicon& lexicon) {
  LoadedCorpus loaded;
  if (EndsWith(config.corpus, ".conllu")) {
    const auto graphs = ParseConllu(ReadFile(config.corpus));
    for (size_t i = 0; i < graphs.size(); ++i) {
      const DependencyGraph& g = graphs[i];
      std::vector<Token> tokens;
      std::vector<std::optional<PosTag>> upos;
      for (const DependencyNode& node : g.nodes) {
        tokens.push_back(Token{node.form, tokens.size()});
        upos.push_back(PosTagFromUpos(node.upos));
      }
      TaggedSentence sentence = TagSentence(std::move(tokens), lexicon, upos);
      if (!g.text.empty()) sentence.raw = g.text;
      if (CountWords(sentence.raw) > config.max_words) {
        ++loaded.filtered;
        continue;
      }
      loaded.sentences.emplace_back(static_cast<int64_t>(i + 1), std::move(sentence));
    }
    return loaded;
  }
  const Corpus corpus = LoadCorpus(config.corpus, config.max_words);
  loaded.filtered = corpus.filtered_count;
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    TaggedSentence sentence = TagSentence(Tokenize(corpus.sentences[i]), lexicon);
    sentence.raw = corpus.sentences[i];
    loaded.sentences.emplace_back(static_cast<int64_t>(corpus.line_numbers[i]),
                                  std::move(sentence));
  }
  return loaded;
}

std::unique_ptr<SubstitutionBackend> MakeBackend(const RunConfig& config) {
  if (config.backend == "dictionary") {
    if (config.dict.empty()) throw ConfigError("--backend dictionary needs --dict");
    return std::make_unique<DictionaryBackend>(DictionaryBackend::Load(config.dict));
  }
  if (config.mlm_url.empty()) throw ConfigError("--backend mlm needs --mlm-url");
  MlmBackendOptions options;
  options.endpoint = config.mlm_url;
  options.max_attempts = config.retries;
  options.initial_backoff = std::chrono::milliseconds(config.backoff_ms);
  options.max_in_flight = config.concurrency;
  return std::make_unique<MlmBackend>(options);
}

ParseMode ModeFor(Metric metric) {
  return metric == Metric::kConstituencyL1 ? ParseMode::kConstituency
                                           : ParseMode::kDependency;
}

StructureRepr WrapMultiset(Metric metric, RelationMultiset multiset) {
  return metric == Metric::kConstituencyL1
             ? StructureRepr::Constituency(std::move(multiset))
             : StructureRepr::Dependency(std::move(multiset));
}

// One line of translations.jsonl.
struct TranslationRecord {
  int64_t original_id = 0;
  bool is_original = true;
  Variant variant;
  TranslationPair pair;
  std::string error;
};

std::vector<TranslationRecord> ReadTranslations(const std::filesystem::path& path) {
  std::vector<TranslationRecord> records;
  for (const json& line : ReadJsonLines(path)) {
    try {
      TranslationRecord r;
      r.original_id = line.at("original_id").get<int64_t>();
      r.is_original = line.at("role").get<std::string>() == "original";
      r.pair.source = line.at("source").get<std::string>();
      r.pair.engine = line.at("engine").get<std::string>();
      if (line.contains("target")) {
        r.pair.target = line["target"].get<std::string>();
        r.pair.from_cache = line.value("from_cache", false);
      } else {
        r.error = line.value("error", std::string("unknown failure"));
      }
      if (!r.is_original) {
        r.variant.sentence_tokens = Tokenize(r.pair.source);
        r.variant.source_position = line.at("position").get<size_t>();
        r.variant.original_token = line.at("original_token").get<std::string>();
        r.variant.replacement_token = line.at("replacement").get<std::string>();
        r.variant.backend_score = ScoreFrom(line);
      }
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + ": malformed translation record: " +
                        e.what());
    }
  }
  return records;
}

std::vector<int64_t> IssueIdsSorted(std::vector<Issue>* issues) {
  std::stable_sort(issues->begin(), issues->end(),
                   [](const Issue& a, const Issue& b) { return a.id < b.id; });
  std::vector<int64_t> ids;
  for (const Issue& i : *issues) ids.push_back(i.id);
  return ids;
}

int64_t NowSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

void WriteReports(const RunConfig& config, const IssueReport& report) {
  const std::filesystem::path out(config.out);
  WriteFile(out / kReportJsonFile, RenderReportJson(report));
  WriteFile(out / kReportMarkdownFile, RenderReportMarkdown(report));
}

}  // namespace

int ExitCodeFor(const std::exception& e) {
  if (dynamic_cast<const TranslationFailure*>(&e)) return kExitTranslation;
  if (dynamic_cast<const RepresentationError*>(&e) ||
      dynamic_cast<const MetricMismatchError*>(&e)) {
    return kExitRepresentation;
  }
  if (dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const CorpusLoadError*>(&e) ||
      dynamic_cast<const EncodingError*>(&e) ||
      dynamic_cast<const CacheError*>(&e) ||
      dynamic_cast<const UndefinedAccuracyError*>(&e)) {
    return kExitConfig;
  }
  return kExitFailure;
}

void RunConfig::Validate() const {
  if (!ParseMetricFlag(metric)) throw ConfigError("unknown metric '" + metric + "'");
  if (backend != "dictionary" && backend != "mlm") {
    throw ConfigError("unknown backend '" + backend + "'");
  }
  if (translator != "http" && translator != "mock") {
    throw ConfigError("unknown translator '" + translator + "'");
  }
  if (parser != "adapter" && parser != "preparsed" && parser != "stub") {
    throw ConfigError("unknown parser '" + parser + "'");
  }
  if (threshold && *threshold < 0) throw ConfigError("threshold must be >= 0");
  if (gen_k < 1 || report_k < 1) throw ConfigError("k values must be >= 1");
  if (max_words < 1) throw ConfigError("max words must be >= 1");
  if (concurrency < 1) throw ConfigError("concurrency must be >= 1");
  if (retries < 1) throw ConfigError("retries must be >= 1");
  if (rate_per_second < 0) throw ConfigError("rate must be >= 0");
}

Metric RunConfig::ParsedMetric() const {
  const auto parsed = ParseMetricFlag(metric);
  if (!parsed) throw ConfigError("unknown metric '" + metric + "'");
  return *parsed;
}

int64_t RunConfig::EffectiveThreshold() const {
  return threshold.value_or(DefaultThreshold(ParsedMetric()));
}

std::string RunConfig::EngineId() const {
  if (!engine.empty()) return engine;
  return translator == "mock" ? "mock" : engine_url;
}

json RunConfig::ToJson() const {
  return {{"corpus", corpus},
          {"lexicon", lexicon},
          {"max_words", max_words},
          {"backend", backend},
          {"dict", dict},
          {"mlm_url", mlm_url},
          {"translator", translator},
          {"engine_url", engine_url},
          {"engine", engine},
          {"api_key_header", api_key_header},
          {"mock_lexicon", mock_lexicon},
          {"fault_plan", fault_plan},
          {"cache", cache},
          {"source_lang", source_lang},
          {"target_lang", target_lang},
          {"concurrency", concurrency},
          {"rate_per_second", rate_per_second},
          {"retries", retries},
          {"backoff_ms", backoff_ms},
          {"parser", parser},
          {"adapter_command", adapter_command},
          {"adapter_args", adapter_args},
          {"adapter_timeout_s", adapter_timeout_s},
          {"preparsed", preparsed},
          {"relations", relations},
          {"include_preterminals", include_preterminals},
          {"metric", metric},
          {"threshold", threshold ? json(*threshold) : json(nullptr)},
          {"gen_k", gen_k},
          {"report_k", report_k},
          {"out", out},
          {"seed", seed},
          {"timestamps", timestamps}};
}

std::string RunConfig::Hash() const {
  const std::string canonical = ToJson().dump();
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

GenerateSummary RunGenerate(const RunConfig& config) {
  config.Validate();
  if (config.corpus.empty()) throw ConfigError("--corpus is required");
  const auto backend = MakeBackend(config);
  PosLexicon lexicon;
  if (!config.lexicon.empty()) {
    lexicon = PosLexicon::Load(config.lexicon);
  } else if (!EndsWith(config.corpus, ".conllu")) {
    throw ConfigError("--lexicon is required for plain-text corpora");
  }
  const LoadedCorpus corpus = LoadTaggedCorpus(config, lexicon);

  GenerateSummary summary;
  summary.filtered = corpus.filtered;
  summary.output = std::filesystem::path(config.out) / kVariantsFile;
  std::string content;
  for (const auto& [id, sentence] : corpus.sentences) {
    json line = {{"original_id", id}, {"source", sentence.raw}};
    json tokens = json::array();
    json tags = json::array();
    for (size_t i = 0; i < sentence.tokens.size(); ++i) {
      tokens.push_back(sentence.tokens[i].text);
      tags.push_back(PosTagName(sentence.tags[i]));
    }
    line["tokens"] = std::move(tokens);
    line["tags"] = std::move(tags);
    json variants = json::array();
    json diagnostics = json::array();
    try {
      GenerationResult result =
          GenerateVariants(sentence, *backend, config.gen_k, lexicon);
      for (const Variant& v : result.variants) {
        variants.push_back({{"position", v.source_position},
                            {"original_token", v.original_token},
                            {"replacement", v.replacement_token},
                            {"score", ScoreJson(v.backend_score)},
                            {"text", v.Text()}});
      }
      for (std::string& d : result.diagnostics) diagnostics.push_back(std::move(d));
      summary.variants += result.variants.size();
    } catch (const GenerationError& e) {
      line["error"] = e.what();
      ++summary.failed;
    }
    line["variants"] = std::move(variants);
    line["diagnostics"] = std::move(diagnostics);
    content += line.dump() + "\n";
    ++summary.originals;
  }
  WriteFile(summary.output, content);
  return summary;
}

TranslateSummary RunTranslate(const RunConfig& config,
                              const std::filesystem::path& variants_path) {
  config.Validate();
  const std::string engine = config.EngineId();

  struct Slot {
    int64_t original_id;
    bool is_original;
    Variant variant;
  };
  std::vector<Slot> slots;
  std::vector<TranslationRequest> requests;
  std::vector<GeneratedOriginal> generated;

  for (const json& line : ReadJsonLines(variants_path)) {
    try {
      GeneratedOriginal g;
      g.id = line.at("original_id").get<int64_t>();
      const std::string source = line.at("source").get<std::string>();
      std::vector<Token> tokens;
      for (const json& t : line.at("tokens")) {
        tokens.push_back(Token{t.get<std::string>(), tokens.size()});
      }
      slots.push_back(Slot{g.id, true, {}});
      requests.push_back({source, config.source_lang, config.target_lang, engine});
      for (const json& v : line.at("variants")) {
        Variant variant;
        variant.source_position = v.at("position").get<size_t>();
        variant.original_token = v.at("original_token").get<std::string>();
        variant.replacement_token = v.at("replacement").get<std::string>();
        variant.backend_score = ScoreFrom(v);
        variant.sentence_tokens = tokens;
        if (variant.source_position >= tokens.size()) {
          throw ConfigError("variant position out of range for original " +
                            std::to_string(g.id));
        }
        variant.sentence_tokens[variant.source_position].text =
            variant.replacement_token;
        const std::string text = v.contains("text")
                                     ? v["text"].get<std::string>()
                                     : variant.Text();
        slots.push_back(Slot{g.id, false, variant});
        requests.push_back({text, config.source_lang, config.target_lang, engine});
        g.variants.push_back(std::move(variant));
      }
      generated.push_back(std::move(g));
    } catch (const json::exception& e) {
      throw ConfigError(variants_path.string() + ": malformed variants record: " +
                        e.what());
    }
  }

  std::unique_ptr<Translator> translator;
  if (config.translator == "mock") {
    WordMap lexicon;
    if (!config.mock_lexicon.empty()) lexicon = LoadWordMap(config.mock_lexicon);
    std::unordered_map<std::string, FaultSpec> faults;
    if (!config.fault_plan.empty()) {
      faults = ResolveFaults(LoadFaultPlan(config.fault_plan), generated);
    }
    translator = std::make_unique<MockTranslator>(std::move(lexicon), std::move(faults));
  } else {
    if (config.engine_url.empty()) throw ConfigError("--translator http needs --engine-url");
    HttpTranslatorOptions options;
    options.base_url = config.engine_url;
    options.api_key_header = config.api_key_header;
    if (const char* key = std::getenv("SIT_API_KEY")) options.api_key = key;
    translator = std::make_unique<HttpTranslator>(options);
  }

  TranslationCache cache;
  if (!config.cache.empty()) cache = TranslationCache::Load(config.cache);

  BatchLimits limits;
  limits.concurrency = config.concurrency;
  limits.rate_per_second = config.rate_per_second;
  limits.retry.max_attempts = config.retries;
  limits.retry.initial_backoff = std::chrono::milliseconds(config.backoff_ms);
  BatchResult batch = TranslateBatch(requests, cache, *translator, limits);

  TranslateSummary summary;
  summary.requests = requests.size();
  summary.engine_calls = batch.engine_calls;
  summary.diagnostics = std::move(batch.diagnostics);
  if (!config.cache.empty()) {
    try {
      cache.Store(config.cache);
    } catch (const CacheError& e) {
      summary.diagnostics.push_back(std::string("warning: ") + e.what());
    }
  }

  std::string content;
  std::string first_error;
  for (size_t i = 0; i < slots.size(); ++i) {
    const Slot& slot = slots[i];
    const TranslationOutcome& outcome = batch.outcomes[i];
    json line = {{"original_id", slot.original_id},
                 {"role", slot.is_original ? "original" : "variant"}};
    if (!slot.is_original) {
      line["position"] = slot.variant.source_position;
      line["original_token"] = slot.variant.original_token;
      line["replacement"] = slot.variant.replacement_token;
      line["score"] = ScoreJson(slot.variant.backend_score);
    }
    line["source"] = outcome.request.text;
    line["engine"] = engine;
    if (outcome.pair) {
      line["target"] = outcome.pair->target;
      line["from_cache"] = outcome.pair->from_cache;
      if (outcome.pair->from_cache) ++summary.from_cache;
    } else {
      line["error"] = outcome.error;
      if (first_error.empty()) first_error = outcome.error;
      ++summary.failed;
    }
    content += line.dump() + "\n";
  }
  summary.output = std::filesystem::path(config.out) / kTranslationsFile;
  WriteFile(summary.output, content);

  if (summary.requests > 0 && summary.failed == summary.requests) {
    std::string message = "all " + std::to_string(summary.requests) +
                          " translation requests failed";
    if (!first_error.empty()) message += "; first: " + first_error;
    throw TranslationFailure(message);
  }
  return summary;
}

std::vector<OriginalRecord> BuildRecords(
    const RunConfig& config, const std::filesystem::path& translations_path) {
  config.Validate();
  const Metric metric = config.ParsedMetric();
  const std::vector<TranslationRecord> translations =
      ReadTranslations(translations_path);

  std::vector<std::string> targets;
  for (const TranslationRecord& r : translations) {
    if (r.error.empty()) targets.push_back(r.pair.target);
  }

  std::vector<StructureRepr> reprs;
  if (metric == Metric::kRawLevenshtein) {
    for (const std::string& t : targets) reprs.push_back(StructureRepr::Raw(t));
  } else if (config.parser == "stub") {
    WordMap relations;
    if (!config.relations.empty()) relations = LoadWordMap(config.relations);
    const StubParser parser(std::move(relations));
    for (const std::string& t : targets) reprs.push_back(WrapMultiset(metric, parser.Parse(t)));
  } else if (config.parser == "preparsed") {
    if (config.preparsed.empty()) throw ConfigError("--parser preparsed needs --preparsed");
    std::string text;
    try {
      text = ReadFile(config.preparsed);
    } catch (const CorpusLoadError& e) {
      throw ConfigError(e.what());
    }
    reprs = ReprsFromParsed(text, ModeFor(metric), config.include_preterminals);
    if (reprs.size() != targets.size()) {
      throw RepresentationError(
          "pre-parsed file has " + std::to_string(reprs.size()) +
          " structures for " + std::to_string(targets.size()) + " translations");
    }
  } else {
    AdapterSpec adapter;
    adapter.command = config.adapter_command;
    adapter.args = config.adapter_args;
    adapter.mode = ModeFor(metric);
    adapter.timeout = std::chrono::seconds(config.adapter_timeout_s);
    adapter.include_preterminals = config.include_preterminals;
    reprs = ExternalParse(targets, adapter);
  }

  std::vector<OriginalRecord> records;
  std::map<int64_t, size_t> index_of;
  size_t cursor = 0;
  for (const TranslationRecord& r : translations) {
    auto [it, inserted] = index_of.try_emplace(r.original_id, records.size());
    if (inserted) {
      records.emplace_back();
      records.back().id = r.original_id;
    }
    OriginalRecord& record = records[it->second];
    const bool ok = r.error.empty();
    if (r.is_original) {
      if (ok) {
        record.original = r.pair;
        record.original_repr = reprs[cursor];
      } else {
        record.failure = "translation failed: " + r.error;
      }
    } else if (ok) {
      record.variants.push_back(VariantCandidate{r.variant, r.pair, reprs[cursor]});
    }
    if (ok) ++cursor;
  }
  for (OriginalRecord& record : records) {
    if (!record.original && record.failure.empty()) {
      record.failure = "no translation for the original sentence";
    }
  }
  return records;
}

IssueReport RunDetect(const RunConfig& config,
                      const std::filesystem::path& translations_path) {
  const std::vector<OriginalRecord> records = BuildRecords(config, translations_path);
  DetectionResult detection =
      RunDetection(records, {config.EffectiveThreshold(), config.report_k});
  IssueIdsSorted(&detection.issues);

  IssueReport report;
  report.metadata.config_hash = config.Hash();
  report.metadata.engine = config.EngineId();
  for (const OriginalRecord& r : records) {
    if (r.original) {
      report.metadata.engine = r.original->engine;
      break;
    }
  }
  report.metadata.metric = config.ParsedMetric();
  report.metadata.threshold = config.EffectiveThreshold();
  report.metadata.report_k = config.report_k;
  report.metadata.source_lang = config.source_lang;
  report.metadata.target_lang = config.target_lang;
  report.metadata.originals = records.size();
  if (config.timestamps) report.metadata.generated_at = NowSeconds();
  report.issues = std::move(detection.issues);
  report.diagnostics = std::move(detection.diagnostics);
  WriteReports(config, report);
  return report;
}

AccuracyReport RunEvaluate(const std::filesystem::path& report_path,
                           const std::filesystem::path& labels_path, size_t k) {
  std::string text;
  try {
    text = ReadFile(report_path);
  } catch (const CorpusLoadError& e) {
    throw ConfigError(e.what());
  }
  const IssueReport report = ParseIssueReport(text);
  const std::vector<IssueLabel> labels = LoadLabels(labels_path);
  return TopkAccuracy(report.issues, labels, k);
}

std::vector<SweepPoint> RunSweep(const RunConfig& config,
                                 const std::filesystem::path& translations_path,
                                 const std::vector<int64_t>& thresholds,
                                 const std::filesystem::path& labels_path) {
  const std::vector<OriginalRecord> records = BuildRecords(config, translations_path);
  const std::vector<ScoredOriginal> scored = ScoreAll(records, nullptr);

  std::vector<IssueLabel> labels;
  bool have_labels = true;
  if (!labels_path.empty()) {
    labels = LoadLabels(labels_path);
  } else if (!config.fault_plan.empty()) {
    std::set<VariantRef> faulty;
    for (const FaultSpec& fault : LoadFaultPlan(config.fault_plan)) {
      faulty.insert(fault.target);
    }
    labels = LabelsFromFaults(scored, faulty);
  } else {
    have_labels = false;
  }
  std::vector<SweepPoint> points =
      ThresholdSweep(scored, thresholds, labels, config.report_k);
  if (!have_labels) {
    for (SweepPoint& p : points) p.top1_accuracy.reset();
  }
  WriteFile(std::filesystem::path(config.out) / kSweepFile, SweepCsv(points));
  return points;
}

ExperimentReport RunExperiment(const RunConfig& config,
                               const ExperimentOptions& options) {
  config.Validate();
  ExperimentInputs inputs;
  if (config.corpus.empty()) {
    inputs = MakeSyntheticSuite(options.synthetic_sentences, config.seed);
  } else {
    const Corpus corpus = LoadCorpus(config.corpus, config.max_words);
    inputs.sentences = corpus.sentences;
    for (size_t line : corpus.line_numbers) inputs.ids.push_back(static_cast<int64_t>(line));
    if (config.lexicon.empty() || config.dict.empty()) {
      throw ConfigError("experiment on a corpus needs --lexicon and --dict");
    }
    inputs.pos_lexicon = PosLexicon::Load(config.lexicon);
    inputs.substitutions = DictionaryBackend::Load(config.dict).table();
    if (!config.mock_lexicon.empty()) inputs.target_lexicon = LoadWordMap(config.mock_lexicon);
    if (!config.relations.empty()) inputs.dependency_labels = LoadWordMap(config.relations);
  }

  ExperimentConfig experiment;
  experiment.metric = config.ParsedMetric();
  experiment.threshold = config.threshold.value_or(0);
  experiment.gen_k = config.gen_k;
  experiment.report_k = config.report_k;
  experiment.seed = config.seed;
  experiment.source_lang = config.source_lang;
  experiment.target_lang = config.target_lang;

  FaultPlan plan;
  if (!config.fault_plan.empty()) {
    plan = LoadFaultPlan(config.fault_plan);
  } else {
    plan = PlanFaults(GenerateAll(inputs, config.gen_k), options.faults,
                      options.kinds, config.seed);
  }
  ExperimentReport result =
      ScoreExperiment(PrepareExperiment(inputs, plan, experiment), experiment);

  const std::filesystem::path out(config.out);
  WriteFile(out / kExperimentFile, ExperimentReportToJson(result).dump(2) + "\n");
  WriteFile(out / kFaultPlanFile, SerializeFaultPlan(plan));

  IssueReport report;
  report.metadata.config_hash = config.Hash();
  report.metadata.engine = "mock";
  report.metadata.metric = experiment.metric;
  report.metadata.threshold = experiment.threshold;
  report.metadata.report_k = experiment.report_k;
  report.metadata.source_lang = experiment.source_lang;
  report.metadata.target_lang = experiment.target_lang;
  report.metadata.originals = result.originals;
  if (config.timestamps) report.metadata.generated_at = NowSeconds();
  report.issues = result.detection.issues;
  report.diagnostics = result.detection.diagnostics;
  WriteReports(config, report);
  return result;
}

}  // namespace sit
