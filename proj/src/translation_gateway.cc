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

#include "sit/translation_gateway.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "sit/errors.h"
#include "sit/text_corpus.h"
#include "sit/utf8.h"

namespace sit {

using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kFaultNames = {
    "UNDER_TRANSLATION",      "OVER_TRANSLATION",    "INCORRECT_MODIFICATION",
    "WORD_MISTRANSLATION",    "UNCLEAR_LOGIC",
};

int64_t NowSeconds() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

const std::string& MapWord(const WordMap& lexicon, const std::string& word) {
  auto it = lexicon.find(word);
  if (it == lexicon.end()) it = lexicon.find(utf8::AsciiLower(word));
  return it == lexicon.end() ? word : it->second;
}

size_t FindSourceToken(const std::vector<Token>& tokens,
                       std::string_view token, std::string_view text) {
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text == token) return i;
  }
  throw ConfigError("fault names token '" + std::string(token) +
                    "' which does not occur in '" + std::string(text) + "'");
}

class TokenBucket {
 public:
  explicit TokenBucket(double rate)
      : rate_(rate),
        capacity_(1.0),
        tokens_(capacity_),
        last_(std::chrono::steady_clock::now()) {}

  void Acquire() {
    if (rate_ <= 0) return;
    std::unique_lock<std::mutex> lock(mu_);
    for (;;) {
      const auto now = std::chrono::steady_clock::now();
      const double elapsed =
          std::chrono::duration<double>(now - last_).count();
      last_ = now;
      tokens_ = std::min(capacity_, tokens_ + elapsed * rate_);
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
      lock.unlock();
      std::this_thread::sleep_for(wait);
      lock.lock();
    }
  }

 private:
  std::mutex mu_;
  double rate_;
  double capacity_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
};

}  // namespace

void TranslationRequest::Validate() const {
  if (text.empty()) throw ConfigError("translation request with empty text");
  if (source_lang.empty() || target_lang.empty()) {
    throw ConfigError("translation request with empty language code");
  }
  if (source_lang == target_lang) {
    throw ConfigError("source and target language are both '" + source_lang +
                      "'");
  }
}

std::string_view FaultKindName(FaultKind kind) {
  return kFaultNames[static_cast<size_t>(kind)];
}

std::optional<FaultKind> ParseFaultKind(std::string_view name) {
  for (size_t i = 0; i < kFaultNames.size(); ++i) {
    if (kFaultNames[i] == name) return static_cast<FaultKind>(i);
  }
  return std::nullopt;
}

WordMap ParseWordMap(std::string_view tsv) {
  WordMap map;
  size_t start = 0;
  size_t line_no = 0;
  while (start < tsv.size()) {
    size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key<TAB>value");
    }
    map[std::string(line.substr(0, tab))] = std::string(line.substr(tab + 1));
  }
  return map;
}

WordMap LoadWordMap(const std::filesystem::path& path) {
  return ParseWordMap(ReadFile(path));
}

std::string MockTranslate(std::string_view text, const WordMap& lexicon,
                          const FaultSpec* fault) {
  const std::vector<Token> source = Tokenize(text);
  std::vector<std::string> target;
  target.reserve(source.size() + 1);
  for (const Token& token : source) target.push_back(MapWord(lexicon, token.text));

  if (fault != nullptr) {
    switch (fault->kind) {
      case FaultKind::kUnderTranslation: {
        const size_t i = FindSourceToken(source, fault->detail, text);
        target.erase(target.begin() + static_cast<ptrdiff_t>(i));
        break;
      }
      case FaultKind::kOverTranslation: {
        std::string_view token = fault->detail;
        size_t copies = 1;
        // A trailing "*N" with N >= 1 requests N extra copies.
        if (const size_t star = token.rfind('*');
            star != std::string_view::npos && star + 1 < token.size()) {
          const std::string_view count = token.substr(star + 1);
          size_t parsed = 0;
          const auto [ptr, ec] =
              std::from_chars(count.data(), count.data() + count.size(), parsed);
          if (ec == std::errc() && ptr == count.data() + count.size() &&
              parsed >= 1) {
            copies = parsed;
            token = token.substr(0, star);
          }
        }
        const size_t i = FindSourceToken(source, token, text);
        target.insert(target.begin() + static_cast<ptrdiff_t>(i) + 1, copies,
                      target[i]);
        break;
      }
      case FaultKind::kWordMistranslation: {
        const size_t eq = fault->detail.find('=');
        if (eq == std::string::npos) {
          throw ConfigError("WORD_MISTRANSLATION detail must be token=wrong, got '" +
                            fault->detail + "'");
        }
        const size_t i =
            FindSourceToken(source, fault->detail.substr(0, eq), text);
        target[i] = fault->detail.substr(eq + 1);
        break;
      }
      case FaultKind::kIncorrectModification: {
        const size_t i = FindSourceToken(source, fault->detail, text);
        if (i == 0) {
          throw ConfigError("INCORRECT_MODIFICATION target '" + fault->detail +
                            "' has no left neighbour");
        }
        std::swap(target[i], target[i - 1]);
        break;
      }
      case FaultKind::kUnclearLogic:
        if (target.size() > 1) {
          std::rotate(target.begin(), target.begin() + 1, target.end());
        }
        break;
    }
  }

  std::string out;
  for (const std::string& word : target) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

MockTranslator::MockTranslator(
    WordMap lexicon, std::unordered_map<std::string, FaultSpec> faults_by_text)
    : lexicon_(std::move(lexicon)), faults_by_text_(std::move(faults_by_text)) {}

std::string MockTranslator::Translate(const TranslationRequest& request) {
  ++calls_;
  const auto it = faults_by_text_.find(request.text);
  return MockTranslate(request.text, lexicon_,
                       it == faults_by_text_.end() ? nullptr : &it->second);
}

TranslationCache::TranslationCache(const TranslationCache& other) {
  std::shared_lock<std::shared_mutex> lock(other.mu_);
  entries_ = other.entries_;
}

TranslationCache& TranslationCache::operator=(const TranslationCache& other) {
  if (this != &other) {
    std::map<CacheKey, CacheEntry> copy;
    {
      std::shared_lock<std::shared_mutex> lock(other.mu_);
      copy = other.entries_;
    }
    std::unique_lock<std::shared_mutex> lock(mu_);
    entries_ = std::move(copy);
  }
  return *this;
}

TranslationCache TranslationCache::Load(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return TranslationCache();
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const CorpusLoadError& e) {
    throw CacheError(e.what());
  }
  try {
    return Parse(text);
  } catch (const CacheError& e) {
    throw CacheError(path.string() + ": " + e.what());
  }
}

TranslationCache TranslationCache::Parse(std::string_view json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw CacheError("corrupt cache JSON at byte offset " +
                     std::to_string(e.byte));
  }
  if (!parsed.is_array()) throw CacheError("cache file is not a JSON array");
  TranslationCache cache;
  for (size_t i = 0; i < parsed.size(); ++i) {
    const json& record = parsed[i];
    auto field = [&](const char* name) -> std::string {
      if (!record.is_object() || !record.contains(name) ||
          !record[name].is_string()) {
        throw CacheError("cache record " + std::to_string(i) +
                         " lacks string field '" + name + "'");
      }
      return record[name].get<std::string>();
    };
    CacheKey key{field("engine"), field("source_lang"), field("target_lang"),
                 field("text")};
    CacheEntry entry{field("target"), 0};
    if (record.contains("ts") && record["ts"].is_number_integer()) {
      entry.ts = record["ts"].get<int64_t>();
    }
    cache.entries_[std::move(key)] = std::move(entry);
  }
  return cache;
}

std::string TranslationCache::Serialize() const {
  std::shared_lock<std::shared_mutex> lock(mu_);
  json records = json::array();
  for (const auto& [key, entry] : entries_) {
    records.push_back({{"engine", key.engine},
                       {"source_lang", key.source_lang},
                       {"target_lang", key.target_lang},
                       {"text", key.text},
                       {"target", entry.target},
                       {"ts", entry.ts}});
  }
  return records.dump(1) + "\n";
}

void TranslationCache::Store(const std::filesystem::path& path) const {
  const std::string data = Serialize();
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::filesystem::path temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + temp.string());
    out << data;
    out.flush();
    if (!out) throw CacheError("write failed for " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw CacheError("cannot rename cache into " + path.string());
  }
}

std::optional<std::string> TranslationCache::Find(const CacheKey& key) const {
  std::shared_lock<std::shared_mutex> lock(mu_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.target;
}

void TranslationCache::Insert(const CacheKey& key, std::string target,
                              int64_t ts) {
  std::unique_lock<std::shared_mutex> lock(mu_);
  entries_[key] = CacheEntry{std::move(target), ts};
}

size_t TranslationCache::size() const {
  std::shared_lock<std::shared_mutex> lock(mu_);
  return entries_.size();
}

BatchResult TranslateBatch(std::span<const TranslationRequest> requests,
                           TranslationCache& cache, Translator& translator,
                           const BatchLimits& limits) {
  BatchResult result;
  result.outcomes.resize(requests.size());

  struct Job {
    CacheKey key;
    std::vector<size_t> indices;
    std::optional<std::string> target;
    std::string error;
    int retries = 0;
  };
  std::vector<Job> jobs;
  std::map<CacheKey, size_t> job_of_key;

  for (size_t i = 0; i < requests.size(); ++i) {
    requests[i].Validate();
    TranslationOutcome& outcome = result.outcomes[i];
    outcome.request = requests[i];
    CacheKey key = CacheKey::From(requests[i]);
    if (auto hit = cache.Find(key)) {
      outcome.pair = TranslationPair{requests[i].text, std::move(*hit),
                                     requests[i].engine, true};
      continue;
    }
    auto [it, inserted] = job_of_key.try_emplace(key, jobs.size());
    if (inserted) jobs.push_back(Job{std::move(key), {}, std::nullopt, "", 0});
    jobs[it->second].indices.push_back(i);
  }

  TokenBucket bucket(limits.rate_per_second);
  std::atomic<size_t> next{0};
  std::atomic<size_t> calls{0};
  std::mutex error_mu;
  std::exception_ptr fatal;
  const int max_attempts = std::max(1, limits.retry.max_attempts);

  auto worker = [&] {
    for (;;) {
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (fatal) return;
      }
      const size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      Job& job = jobs[j];
      const TranslationRequest& request = requests[job.indices.front()];
      auto backoff = limits.retry.initial_backoff;
      try {
        for (int attempt = 1; attempt <= max_attempts; ++attempt) {
          if (attempt > 1) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
            ++job.retries;
          }
          bucket.Acquire();
          ++calls;
          try {
            job.target = translator.Translate(request);
            break;
          } catch (const TranslationError& e) {
            job.error = e.what();
            if (!e.retryable()) break;
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!fatal) fatal = std::current_exception();
        return;
      }
    }
  };

  const size_t thread_count = std::min<size_t>(
      jobs.size(), static_cast<size_t>(std::max(1, limits.concurrency)));
  std::vector<std::thread> threads;
  threads.reserve(thread_count);
  for (size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  for (std::thread& thread : threads) thread.join();
  if (fatal) std::rethrow_exception(fatal);

  result.engine_calls = calls.load();
  const int64_t now = NowSeconds();
  for (Job& job : jobs) {
    if (job.retries > 0) {
      result.diagnostics.push_back("request " +
                                   std::to_string(job.indices.front()) +
                                   ": " + std::to_string(job.retries) +
                                   " retries");
    }
    if (job.target) cache.Insert(job.key, *job.target, now);
    for (size_t n = 0; n < job.indices.size(); ++n) {
      TranslationOutcome& outcome = result.outcomes[job.indices[n]];
      outcome.retries = n == 0 ? job.retries : 0;
      if (job.target) {
        outcome.pair = TranslationPair{outcome.request.text, *job.target,
                                       outcome.request.engine, n > 0};
      } else {
        outcome.error = job.error;
        if (n == 0) {
          result.diagnostics.push_back(
              "request " + std::to_string(job.indices.front()) +
              " failed: " + job.error);
        }
      }
    }
  }
  return result;
}

}  // namespace sit
