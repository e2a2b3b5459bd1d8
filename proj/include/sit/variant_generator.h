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

#ifndef SIT_VARIANT_GENERATOR_H_
#define SIT_VARIANT_GENERATOR_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sit/text_corpus.h"

namespace sit {

// A sentence with one position to be filled by a substitution backend.
struct MaskedQuery {
  std::vector<Token> tokens;
  size_t mask_index = 0;
  size_t top_k = 0;
};

struct Candidate {
  std::string token;
  // Absent for backends that only rank by list order.
  std::optional<double> score;

  bool operator==(const Candidate&) const = default;
};

struct Variant {
  std::vector<Token> sentence_tokens;
  size_t source_position = 0;
  std::string original_token;
  std::string replacement_token;
  std::optional<double> backend_score;

  std::string Text() const { return Detokenize(sentence_tokens); }
};

class SubstitutionBackend {
 public:
  virtual ~SubstitutionBackend() = default;

  // Returns at most query.top_k candidates, best first. Implementations must
  // tolerate concurrent calls.
  virtual std::vector<Candidate> Substitute(const MaskedQuery& query) const = 0;
};

using SubstitutionTable =
    std::unordered_map<std::string, std::vector<std::string>>;

// Deterministic stand-in for a masked language model: looks up the masked
// token's surface form (exact, then ASCII-lowercased) in a fixed table.
class DictionaryBackend : public SubstitutionBackend {
 public:
  explicit DictionaryBackend(SubstitutionTable table);

  // TSV `word<TAB>r1,r2,...`; `#` lines ignored.
  static DictionaryBackend Load(const std::filesystem::path& path);
  static SubstitutionTable ParseTable(std::string_view tsv);

  std::vector<Candidate> Substitute(const MaskedQuery& query) const override;

  const SubstitutionTable& table() const { return table_; }

 private:
  SubstitutionTable table_;
};

struct GenerationResult {
  std::vector<Variant> variants;
  // One entry per candidate position whose backend call failed.
  std::vector<std::string> diagnostics;
};

// Candidates requested from the backend per kept variant. Filtering happens
// after retrieval, so the backend is asked for more than k.
inline constexpr size_t kOverfetchFactor = 4;

// Masks each NOUN/ADJ position in turn and keeps the first `k` backend
// candidates that share the original tag under `lexicon`, differ from the
// original token case-insensitively and are a single token. Output is
// grouped by position ascending, backend order within a position.
//
// A failing backend call skips that position; if every position fails the
// whole sentence raises GenerationError.
GenerationResult GenerateVariants(const TaggedSentence& sentence,
                                  const SubstitutionBackend& backend, size_t k,
                                  const PosLexicon& lexicon);

}  // namespace sit

#endif  // SIT_VARIANT_GENERATOR_H_
