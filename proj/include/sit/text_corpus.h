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

#ifndef SIT_TEXT_CORPUS_H_
#define SIT_TEXT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sit {

enum class PosTag {
  kNoun,
  kAdj,
  kVerb,
  kAdv,
  kDet,
  kPron,
  kAdp,
  kNum,
  kConj,
  kPart,
  kPunct,
  kOther,
};

// Upper-case names as used in lexicon files ("NOUN", "ADJ", ...).
std::string_view PosTagName(PosTag tag);
std::optional<PosTag> ParsePosTag(std::string_view name);

// Maps a Universal Dependencies UPOS value onto the coarse tag set. PROPN
// folds into NOUN, AUX into VERB, CCONJ/SCONJ into CONJ; INTJ, SYM and X
// become OTHER. "_" and unknown values yield nullopt.
std::optional<PosTag> PosTagFromUpos(std::string_view upos);

struct Token {
  std::string text;
  size_t index = 0;

  bool operator==(const Token&) const = default;
};

struct TaggedSentence {
  std::vector<Token> tokens;
  std::vector<PosTag> tags;
  std::string raw;
};

// Case-insensitive word -> tag map. Immutable once constructed.
class PosLexicon {
 public:
  PosLexicon() = default;
  explicit PosLexicon(const std::unordered_map<std::string, PosTag>& entries);

  // TSV `word<TAB>TAG`; `#` lines and blank lines are skipped, the last
  // duplicate wins. Throws CorpusLoadError on I/O failure and ConfigError on
  // an unknown tag.
  static PosLexicon Load(const std::filesystem::path& path);
  static PosLexicon Parse(std::string_view tsv);

  PosTag Lookup(std::string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

// Whitespace split, then leading and trailing marks from . , ! ? ; : " ( )
// are peeled off into their own tokens. Hyphenated words and contractions
// stay whole.
std::vector<Token> Tokenize(std::string_view text);

// Joins tokens with single spaces, except that closing marks (. , ! ? ; :
// and ")") attach to the previous token, "(" attaches to the next one and
// double quotes alternate between opening and closing.
std::string Detokenize(std::span<const Token> tokens);

// Tokens made only of punctuation are tagged PUNCT regardless of the
// lexicon. When `upos` is non-empty it must be parallel to `tokens`; a
// present entry overrides the lexicon for that token.
TaggedSentence TagSentence(std::vector<Token> tokens, const PosLexicon& lexicon,
                           std::span<const std::optional<PosTag>> upos = {});

// Ascending NOUN/ADJ positions.
std::vector<size_t> SelectCandidates(const TaggedSentence& sentence);

struct Corpus {
  std::vector<std::string> sentences;
  // 1-based source line of each kept sentence; used as the stable id.
  std::vector<size_t> line_numbers;
  size_t filtered_count = 0;
};

inline constexpr size_t kDefaultMaxWords = 35;

size_t CountWords(std::string_view line);

// One sentence per line. Blank lines are dropped; lines with more than
// `max_words` whitespace-separated words are dropped and counted.
Corpus LoadCorpus(const std::filesystem::path& path,
                  size_t max_words = kDefaultMaxWords);
Corpus ParseCorpus(std::string_view text, size_t max_words = kDefaultMaxWords);

// Reads a whole file, raising CorpusLoadError with the path on failure.
std::string ReadFile(const std::filesystem::path& path);

}  // namespace sit

#endif  // SIT_TEXT_CORPUS_H_
