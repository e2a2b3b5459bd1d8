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

#ifndef SIT_TRANSLATION_GATEWAY_H_
#define SIT_TRANSLATION_GATEWAY_H_

#include <atomic>
#include <chrono>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sit {

struct TranslationRequest {
  std::string text;
  std::string source_lang;
  std::string target_lang;
  std::string engine;

  // Throws ConfigError on empty text, empty or identical language codes.
  void Validate() const;
};

struct TranslationPair {
  std::string source;
  std::string target;
  std::string engine;
  bool from_cache = false;

  bool operator==(const TranslationPair&) const = default;
};

// Error taxonomy used for injected faults and issue annotations.
enum class FaultKind {
  kUnderTranslation,
  kOverTranslation,
  kIncorrectModification,
  kWordMistranslation,
  kUnclearLogic,
};

std::string_view FaultKindName(FaultKind kind);
std::optional<FaultKind> ParseFaultKind(std::string_view name);

// Identifies one generated variant: the original's id, the substituted
// position and the replacement token.
struct VariantRef {
  int64_t original_id = 0;
  size_t position = 0;
  std::string replacement;

  auto operator<=>(const VariantRef&) const = default;
};

// `detail` by kind:
//   UNDER_TRANSLATION       source token whose translation is dropped
//   OVER_TRANSLATION        source token, optionally `token*N` for N extra
//                           copies (default 1)
//   WORD_MISTRANSLATION     `token=wrong`, the wrong target word
//   INCORRECT_MODIFICATION  source token swapped with its left neighbour
//   UNCLEAR_LOGIC           unused; the first target token moves to the end
struct FaultSpec {
  FaultKind kind = FaultKind::kUnderTranslation;
  VariantRef target;
  std::string detail;
};

using WordMap = std::unordered_map<std::string, std::string>;

// `word<TAB>value` TSV, `#` lines ignored, last duplicate wins.
WordMap ParseWordMap(std::string_view tsv);
WordMap LoadWordMap(const std::filesystem::path& path);

// Word-for-word translation through `lexicon` (exact key, then lowercased;
// unknown words map to themselves), joined by single spaces. `fault`, when
// given, is applied to the result. Throws ConfigError when the fault names a
// token that is not in `text`.
std::string MockTranslate(std::string_view text, const WordMap& lexicon,
                          const FaultSpec* fault = nullptr);

class Translator {
 public:
  virtual ~Translator() = default;
  // Throws TranslationError on engine failure. Must be thread-safe.
  virtual std::string Translate(const TranslationRequest& request) = 0;
};

class MockTranslator : public Translator {
 public:
  // `faults_by_text` maps an exact source text to the single fault injected
  // into its translation.
  MockTranslator(WordMap lexicon,
                 std::unordered_map<std::string, FaultSpec> faults_by_text);

  std::string Translate(const TranslationRequest& request) override;

  size_t calls() const { return calls_.load(); }

 private:
  WordMap lexicon_;
  std::unordered_map<std::string, FaultSpec> faults_by_text_;
  std::atomic<size_t> calls_{0};
};

struct HttpTranslatorOptions {
  std::string base_url;
  // Header that carries the API key; empty disables it.
  std::string api_key_header;
  std::string api_key;
  std::chrono::milliseconds timeout{30000};
};

// POST {base_url}/translate {"text","source_lang","target_lang"} ->
// {"translation": ...}. Non-200 responses raise TranslationError.
class HttpTranslator : public Translator {
 public:
  explicit HttpTranslator(HttpTranslatorOptions options);
  std::string Translate(const TranslationRequest& request) override;

 private:
  HttpTranslatorOptions options_;
};

struct CacheKey {
  std::string engine;
  std::string source_lang;
  std::string target_lang;
  std::string text;

  auto operator<=>(const CacheKey&) const = default;

  static CacheKey From(const TranslationRequest& request) {
    return {request.engine, request.source_lang, request.target_lang,
            request.text};
  }
};

struct CacheEntry {
  std::string target;
  int64_t ts = 0;
};

// Exact-match translation cache. Reads are concurrent, writes serialized.
class TranslationCache {
 public:
  TranslationCache() = default;
  TranslationCache(const TranslationCache& other);
  TranslationCache& operator=(const TranslationCache& other);

  // A missing file yields an empty cache. Corrupt JSON raises CacheError
  // naming the byte offset.
  static TranslationCache Load(const std::filesystem::path& path);
  static TranslationCache Parse(std::string_view json_text);

  // Writes a temporary file next to `path` and renames it into place.
  void Store(const std::filesystem::path& path) const;
  std::string Serialize() const;

  std::optional<std::string> Find(const CacheKey& key) const;
  void Insert(const CacheKey& key, std::string target, int64_t ts);
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<CacheKey, CacheEntry> entries_;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
};

struct BatchLimits {
  int concurrency = 4;
  // Engine calls per second; 0 disables the limit.
  double rate_per_second = 0;
  RetryPolicy retry;
};

struct TranslationOutcome {
  TranslationRequest request;
  std::optional<TranslationPair> pair;
  // Set when `pair` is empty.
  std::string error;
  int retries = 0;
};

struct BatchResult {
  // Parallel to the input requests.
  std::vector<TranslationOutcome> outcomes;
  // Number of Translator::Translate invocations, retries included.
  size_t engine_calls = 0;
  std::vector<std::string> diagnostics;
};

// Serves each request from `cache` when possible; misses are deduplicated by
// cache key and sent to `translator` with bounded concurrency, a token-bucket
// rate limit and retries on retryable errors. Successful translations are
// inserted into `cache` before returning.
BatchResult TranslateBatch(std::span<const TranslationRequest> requests,
                           TranslationCache& cache, Translator& translator,
                           const BatchLimits& limits);

}  // namespace sit

#endif  // SIT_TRANSLATION_GATEWAY_H_
