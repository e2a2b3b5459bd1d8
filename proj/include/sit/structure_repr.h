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

#ifndef SIT_STRUCTURE_REPR_H_
#define SIT_STRUCTURE_REPR_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sit/text_corpus.h"
#include "sit/translation_gateway.h"

namespace sit {

// Ordered rooted tree in Penn bracketing. A terminal is a leaf carrying the
// word in `label`; internal nodes have at least one child.
struct ConstituencyTree {
  std::string label;
  std::vector<ConstituencyTree> children;
  bool terminal = false;

  bool IsPreterminal() const {
    return !terminal && children.size() == 1 && children[0].terminal;
  }
  bool operator==(const ConstituencyTree&) const = default;
};

// Parses one s-expression such as "(S (NP (DT The) (NN cat)) (VP (VBZ
// sits)))". Throws ParseError with the character offset of the problem.
ConstituencyTree ParsePtb(std::string_view text);

// Canonical single-space bracketing; ParsePtb(SerializePtb(t)) == t.
std::string SerializePtb(const ConstituencyTree& tree);

struct DependencyNode {
  int id = 0;
  std::string form;
  std::string upos;
};

struct DependencyEdge {
  int head = 0;  // 0 is the artificial root
  int dependent = 0;
  std::string relation;

  bool operator==(const DependencyEdge&) const = default;
};

struct DependencyGraph {
  std::vector<DependencyNode> nodes;
  std::vector<DependencyEdge> edges;
  // From a "# text = ..." comment, when present.
  std::string text;
};

// CoNLL-U: ten tab-separated columns, blank line between sentences, `#`
// comments. Multi-word token ranges ("1-2") and empty nodes ("1.1") are
// skipped. Throws ParseError carrying the 1-based line number.
std::vector<DependencyGraph> ParseConllu(std::string_view text);

// Label -> count bag. Zero counts are never stored.
class RelationMultiset {
 public:
  RelationMultiset() = default;
  RelationMultiset(std::initializer_list<std::pair<const std::string, int64_t>>
                       counts);

  void Add(std::string_view label, int64_t count = 1);
  int64_t Count(std::string_view label) const;
  int64_t Total() const { return total_; }
  bool empty() const { return counts_.empty(); }
  const std::map<std::string, int64_t, std::less<>>& counts() const {
    return counts_;
  }

  bool operator==(const RelationMultiset& other) const {
    return counts_ == other.counts_;
  }

 private:
  std::map<std::string, int64_t, std::less<>> counts_;
  int64_t total_ = 0;
};

// Counts internal-node labels. Preterminals (a single terminal child) are
// skipped unless `include_preterminals`. Unlabelled wrapper nodes such as
// the outer "( (S ...) )" of treebank files are never counted.
RelationMultiset ConstituencyMultiset(const ConstituencyTree& tree,
                                      bool include_preterminals = false);

// DEPREL counts over every edge, root included.
RelationMultiset DependencyMultiset(const DependencyGraph& graph);

enum class ReprKind { kRaw, kConstituency, kDependency };

std::string_view ReprKindName(ReprKind kind);

class StructureRepr {
 public:
  static StructureRepr Raw(std::string text);
  static StructureRepr Constituency(RelationMultiset multiset);
  static StructureRepr Dependency(RelationMultiset multiset);

  ReprKind kind() const { return kind_; }
  // Valid for kRaw only.
  const std::string& raw() const;
  // Valid for kConstituency and kDependency.
  const RelationMultiset& multiset() const;

  bool operator==(const StructureRepr&) const = default;

 private:
  StructureRepr(ReprKind kind, std::string raw, RelationMultiset multiset)
      : kind_(kind), raw_(std::move(raw)), multiset_(std::move(multiset)) {}

  ReprKind kind_;
  std::string raw_;
  RelationMultiset multiset_;
};

enum class ParseMode { kConstituency, kDependency };

// Non-empty lines, one bracketed tree each.
std::vector<ConstituencyTree> ParsePtbLines(std::string_view text);

// Converts pre-parsed text (bracketed lines or CoNLL-U blocks) into
// representations.
std::vector<StructureRepr> ReprsFromParsed(std::string_view text,
                                           ParseMode mode,
                                           bool include_preterminals = false);

struct AdapterSpec {
  std::string command;
  std::vector<std::string> args;
  ParseMode mode = ParseMode::kDependency;
  std::chrono::seconds timeout{120};
  bool include_preterminals = false;
};

// Runs the adapter once for the whole batch: sentences go to its stdin one
// per line, trees or CoNLL-U blocks are read from stdout. Throws AdapterError
// on a non-zero exit, a timeout, malformed output or a count mismatch.
std::vector<StructureRepr> ExternalParse(std::span<const std::string> sentences,
                                         const AdapterSpec& adapter);

// Deterministic parser stand-in: the bag of `relation_lexicon[token]` over
// all tokens, "dep" for unknown tokens.
class StubParser {
 public:
  explicit StubParser(WordMap relation_lexicon)
      : relation_lexicon_(std::move(relation_lexicon)) {}

  RelationMultiset Parse(std::span<const Token> tokens) const;
  RelationMultiset Parse(std::string_view sentence) const {
    return Parse(Tokenize(sentence));
  }

 private:
  WordMap relation_lexicon_;
};

inline constexpr std::string_view kUnknownRelation = "dep";

}  // namespace sit

#endif  // SIT_STRUCTURE_REPR_H_
