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

#include "sit/text_corpus.h"

#include <array>
#include <fstream>
#include <sstream>

#include "sit/errors.h"
#include "sit/utf8.h"

namespace sit {

namespace {

constexpr std::array<std::string_view, 12> kTagNames = {
    "NOUN", "ADJ", "VERB", "ADV",  "DET",   "PRON",
    "ADP",  "NUM", "CONJ", "PART", "PUNCT", "OTHER",
};

bool IsSplitMark(char32_t c) {
  switch (c) {
    case U'.':
    case U',':
    case U'!':
    case U'?':
    case U';':
    case U':':
    case U'"':
    case U'(':
    case U')':
      return true;
    default:
      return false;
  }
}

bool IsPunctuationToken(std::string_view text) {
  if (text.empty()) return false;
  for (char32_t c : utf8::Decode(text)) {
    if (!utf8::IsPunctuation(c)) return false;
  }
  return true;
}

// Splits on Unicode whitespace.
std::vector<std::u32string> SplitFields(std::u32string_view text) {
  std::vector<std::u32string> fields;
  std::u32string current;
  for (char32_t c : text) {
    if (utf8::IsWhitespace(c)) {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.emplace_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  return kTagNames[static_cast<size_t>(tag)];
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  for (size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

std::optional<PosTag> PosTagFromUpos(std::string_view upos) {
  if (upos == "NOUN" || upos == "PROPN") return PosTag::kNoun;
  if (upos == "ADJ") return PosTag::kAdj;
  if (upos == "VERB" || upos == "AUX") return PosTag::kVerb;
  if (upos == "ADV") return PosTag::kAdv;
  if (upos == "DET") return PosTag::kDet;
  if (upos == "PRON") return PosTag::kPron;
  if (upos == "ADP") return PosTag::kAdp;
  if (upos == "NUM") return PosTag::kNum;
  if (upos == "CCONJ" || upos == "SCONJ") return PosTag::kConj;
  if (upos == "PART") return PosTag::kPart;
  if (upos == "PUNCT") return PosTag::kPunct;
  if (upos == "INTJ" || upos == "SYM" || upos == "X") return PosTag::kOther;
  return std::nullopt;
}

PosLexicon::PosLexicon(const std::unordered_map<std::string, PosTag>& entries) {
  for (const auto& [word, tag] : entries) entries_[utf8::AsciiLower(word)] = tag;
}

PosLexicon PosLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

PosLexicon PosLexicon::Parse(std::string_view tsv) {
  PosLexicon lexicon;
  size_t line_no = 0;
  for (const std::string& line : SplitLines(tsv)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError("lexicon line " + std::to_string(line_no) +
                        ": expected word<TAB>TAG");
    }
    const std::string word = line.substr(0, tab);
    const std::string tag_name = line.substr(tab + 1);
    const auto tag = ParsePosTag(tag_name);
    if (!tag) {
      throw ConfigError("lexicon line " + std::to_string(line_no) +
                        ": unknown tag '" + tag_name + "'");
    }
    lexicon.entries_[utf8::AsciiLower(word)] = *tag;
  }
  return lexicon;
}

PosTag PosLexicon::Lookup(std::string_view word) const {
  const auto it = entries_.find(utf8::AsciiLower(word));
  return it == entries_.end() ? PosTag::kOther : it->second;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  auto emit = [&tokens](std::u32string_view piece) {
    tokens.push_back(Token{utf8::Encode(piece), tokens.size()});
  };
  for (const std::u32string& field : SplitFields(utf8::Decode(text))) {
    size_t begin = 0;
    size_t end = field.size();
    while (begin < end && IsSplitMark(field[begin])) {
      emit(std::u32string_view(field).substr(begin, 1));
      ++begin;
    }
    size_t core_end = end;
    while (core_end > begin && IsSplitMark(field[core_end - 1])) --core_end;
    if (core_end > begin) {
      emit(std::u32string_view(field).substr(begin, core_end - begin));
    }
    for (size_t i = core_end; i < end; ++i) {
      emit(std::u32string_view(field).substr(i, 1));
    }
  }
  return tokens;
}

std::string Detokenize(std::span<const Token> tokens) {
  std::string out;
  bool attach_next = true;
  bool inside_quote = false;
  for (const Token& token : tokens) {
    const std::string& t = token.text;
    bool attach = attach_next;
    attach_next = false;
    if (t == "." || t == "," || t == "!" || t == "?" || t == ";" || t == ":" ||
        t == ")") {
      attach = true;
    } else if (t == "(") {
      attach_next = true;
    } else if (t == "\"") {
      if (inside_quote) {
        attach = true;
      } else {
        attach_next = true;
      }
      inside_quote = !inside_quote;
    }
    if (!attach && !out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

TaggedSentence TagSentence(std::vector<Token> tokens, const PosLexicon& lexicon,
                           std::span<const std::optional<PosTag>> upos) {
  if (!upos.empty() && upos.size() != tokens.size()) {
    throw ConfigError("UPOS column count does not match token count");
  }
  TaggedSentence sentence;
  sentence.raw = Detokenize(tokens);
  sentence.tags.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    tokens[i].index = i;
    if (IsPunctuationToken(tokens[i].text)) {
      sentence.tags.push_back(PosTag::kPunct);
    } else if (!upos.empty() && upos[i]) {
      sentence.tags.push_back(*upos[i]);
    } else {
      sentence.tags.push_back(lexicon.Lookup(tokens[i].text));
    }
  }
  sentence.tokens = std::move(tokens);
  return sentence;
}

std::vector<size_t> SelectCandidates(const TaggedSentence& sentence) {
  std::vector<size_t> positions;
  for (size_t i = 0; i < sentence.tags.size(); ++i) {
    if (sentence.tags[i] == PosTag::kNoun || sentence.tags[i] == PosTag::kAdj) {
      positions.push_back(i);
    }
  }
  return positions;
}

size_t CountWords(std::string_view line) {
  return SplitFields(utf8::Decode(line)).size();
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusLoadError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw CorpusLoadError("read failed for " + path.string());
  return buffer.str();
}

Corpus ParseCorpus(std::string_view text, size_t max_words) {
  if (max_words == 0) throw ConfigError("max_words must be positive");
  Corpus corpus;
  size_t line_no = 0;
  for (const std::string& line : SplitLines(text)) {
    ++line_no;
    if (const auto bad = utf8::FindInvalid(line)) {
      throw EncodingError("invalid UTF-8 on line " + std::to_string(line_no) +
                              " at byte " + std::to_string(*bad),
                          line_no);
    }
    const size_t words = CountWords(line);
    if (words == 0) continue;
    if (words > max_words) {
      ++corpus.filtered_count;
      continue;
    }
    corpus.sentences.push_back(line);
    corpus.line_numbers.push_back(line_no);
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, size_t max_words) {
  const std::string text = ReadFile(path);
  try {
    return ParseCorpus(text, max_words);
  } catch (const EncodingError& e) {
    throw EncodingError(path.string() + ": " + e.what(), e.line());
  }
}

}  // namespace sit
