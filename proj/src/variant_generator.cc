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

#include "sit/variant_generator.h"

#include "sit/errors.h"
#include "sit/utf8.h"

namespace sit {

namespace {

bool IsSingleToken(std::string_view candidate) {
  const std::vector<Token> tokens = Tokenize(candidate);
  return tokens.size() == 1 && tokens[0].text == candidate;
}

}  // namespace

DictionaryBackend::DictionaryBackend(SubstitutionTable table)
    : table_(std::move(table)) {}

DictionaryBackend DictionaryBackend::Load(const std::filesystem::path& path) {
  return DictionaryBackend(ParseTable(ReadFile(path)));
}

SubstitutionTable DictionaryBackend::ParseTable(std::string_view tsv) {
  SubstitutionTable table;
  size_t line_no = 0;
  size_t start = 0;
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
      throw ConfigError("dictionary line " + std::to_string(line_no) +
                        ": expected word<TAB>replacements");
    }
    std::vector<std::string> replacements;
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const size_t comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      if (!item.empty()) replacements.emplace_back(item);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    table[std::string(line.substr(0, tab))] = std::move(replacements);
  }
  return table;
}

std::vector<Candidate> DictionaryBackend::Substitute(
    const MaskedQuery& query) const {
  if (query.top_k == 0 || query.mask_index >= query.tokens.size()) return {};
  const std::string& word = query.tokens[query.mask_index].text;
  auto it = table_.find(word);
  if (it == table_.end()) it = table_.find(utf8::AsciiLower(word));
  if (it == table_.end()) return {};
  std::vector<Candidate> out;
  for (const std::string& replacement : it->second) {
    if (out.size() == query.top_k) break;
    out.push_back(Candidate{replacement, std::nullopt});
  }
  return out;
}

GenerationResult GenerateVariants(const TaggedSentence& sentence,
                                  const SubstitutionBackend& backend, size_t k,
                                  const PosLexicon& lexicon) {
  GenerationResult result;
  if (k == 0) return result;
  const std::vector<size_t> positions = SelectCandidates(sentence);
  size_t failures = 0;
  for (size_t position : positions) {
    const std::string& original = sentence.tokens[position].text;
    const PosTag original_tag = sentence.tags[position];
    MaskedQuery query{sentence.tokens, position, k * kOverfetchFactor};
    std::vector<Candidate> candidates;
    try {
      candidates = backend.Substitute(query);
    } catch (const Error& e) {
      ++failures;
      result.diagnostics.push_back("position " + std::to_string(position) +
                                   " (" + original + "): " + e.what());
      continue;
    }
    size_t kept = 0;
    const std::string original_folded = utf8::AsciiLower(original);
    for (const Candidate& candidate : candidates) {
      if (kept == k) break;
      if (!IsSingleToken(candidate.token)) continue;
      if (utf8::AsciiLower(candidate.token) == original_folded) continue;
      const PosTag tag = lexicon.Lookup(candidate.token);
      if (tag == PosTag::kOther || tag != original_tag) continue;

      Variant variant;
      variant.sentence_tokens = sentence.tokens;
      variant.sentence_tokens[position].text = candidate.token;
      variant.source_position = position;
      variant.original_token = original;
      variant.replacement_token = candidate.token;
      variant.backend_score = candidate.score;
      result.variants.push_back(std::move(variant));
      ++kept;
    }
  }
  if (!positions.empty() && failures == positions.size()) {
    std::string message = "variant generation failed at every position of '" +
                          sentence.raw + "'";
    if (!result.diagnostics.empty()) message += ": " + result.diagnostics[0];
    throw GenerationError(message);
  }
  return result;
}

}  // namespace sit
