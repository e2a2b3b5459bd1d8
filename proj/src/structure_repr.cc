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

#include "sit/structure_repr.h"

#include <charconv>
#include <stdexcept>

#include "sit/errors.h"
#include "subprocess.h"

namespace sit {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

class PtbReader {
 public:
  explicit PtbReader(std::string_view text) : text_(text) {}

  ConstituencyTree ReadDocument() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("empty input");
    if (text_[pos_] != '(') Fail("expected '('");
    ConstituencyTree tree = ReadNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters after tree");
    return tree;
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const {
    throw ParseError("bracketed tree: " + why + " at offset " +
                         std::to_string(pos_),
                     pos_);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && IsSpace(text_[pos_])) ++pos_;
  }

  std::string ReadAtom() {
    const size_t start = pos_;
    while (pos_ < text_.size() && !IsSpace(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  // Precondition: text_[pos_] == '('.
  ConstituencyTree ReadNode() {
    ConstituencyTree node;
    ++pos_;
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    if (text_[pos_] == ')') Fail("empty node");
    if (text_[pos_] != '(') node.label = ReadAtom();
    for (;;) {
      SkipSpace();
      if (pos_ >= text_.size()) Fail("unexpected end of input");
      const char c = text_[pos_];
      if (c == ')') {
        if (node.children.empty()) Fail("empty node");
        ++pos_;
        return node;
      }
      if (c == '(') {
        node.children.push_back(ReadNode());
      } else {
        ConstituencyTree leaf;
        leaf.label = ReadAtom();
        leaf.terminal = true;
        node.children.push_back(std::move(leaf));
      }
    }
  }

  std::string_view text_;
  size_t pos_ = 0;
};

void SerializeInto(const ConstituencyTree& tree, std::string* out) {
  if (tree.terminal) {
    *out += tree.label;
    return;
  }
  out->push_back('(');
  *out += tree.label;
  for (const ConstituencyTree& child : tree.children) {
    out->push_back(' ');
    SerializeInto(child, out);
  }
  out->push_back(')');
}

void CountLabels(const ConstituencyTree& tree, bool include_preterminals,
                 RelationMultiset* counts) {
  if (tree.terminal) return;
  if (!tree.label.empty() && (include_preterminals || !tree.IsPreterminal())) {
    counts->Add(tree.label);
  }
  for (const ConstituencyTree& child : tree.children) {
    CountLabels(child, include_preterminals, counts);
  }
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  for (;;) {
    const size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool ParseInt(std::string_view s, int* out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Checks the one-head-per-token, single-root shape of a finished block.
void ValidateGraph(const DependencyGraph& graph, size_t first_line) {
  const int n = static_cast<int>(graph.nodes.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (graph.nodes[i].id != i + 1) {
      throw ParseError("CoNLL-U line " + std::to_string(first_line) +
                           ": token ids are not contiguous from 1",
                       first_line);
    }
    const DependencyEdge& edge = graph.edges[i];
    if (edge.head < 0 || edge.head > n) {
      throw ParseError("CoNLL-U sentence at line " +
                           std::to_string(first_line) + ": head " +
                           std::to_string(edge.head) + " out of range",
                       first_line);
    }
    if (edge.head == 0) ++roots;
  }
  if (roots != 1) {
    throw ParseError("CoNLL-U sentence at line " + std::to_string(first_line) +
                         ": expected exactly one root, found " +
                         std::to_string(roots),
                     first_line);
  }
}

}  // namespace

ConstituencyTree ParsePtb(std::string_view text) {
  return PtbReader(text).ReadDocument();
}

std::string SerializePtb(const ConstituencyTree& tree) {
  std::string out;
  SerializeInto(tree, &out);
  return out;
}

std::vector<DependencyGraph> ParseConllu(std::string_view text) {
  std::vector<DependencyGraph> graphs;
  DependencyGraph current;
  size_t block_start = 0;
  auto finish = [&] {
    if (!current.nodes.empty()) {
      ValidateGraph(current, block_start);
      graphs.push_back(std::move(current));
    }
    current = DependencyGraph();
    block_start = 0;
  };

  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finish();
      continue;
    }
    if (block_start == 0) block_start = line_no;
    if (line[0] == '#') {
      constexpr std::string_view kText = "# text = ";
      if (line.substr(0, kText.size()) == kText) {
        current.text = std::string(line.substr(kText.size()));
      }
      continue;
    }
    const std::vector<std::string_view> cols = SplitTabs(line);
    if (cols.size() != 10) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) +
                           ": expected 10 columns, found " +
                           std::to_string(cols.size()),
                       line_no);
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
    int id = 0;
    if (!ParseInt(cols[0], &id)) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) +
                           ": non-integer id '" + std::string(cols[0]) + "'",
                       line_no);
    }
    int head = 0;
    if (!ParseInt(cols[6], &head)) {
      throw ParseError("CoNLL-U line " + std::to_string(line_no) +
                           ": non-integer head '" + std::string(cols[6]) + "'",
                       line_no);
    }
    current.nodes.push_back(
        DependencyNode{id, std::string(cols[1]), std::string(cols[3])});
    current.edges.push_back(DependencyEdge{head, id, std::string(cols[7])});
  }
  finish();
  return graphs;
}

RelationMultiset::RelationMultiset(
    std::initializer_list<std::pair<const std::string, int64_t>> counts) {
  for (const auto& [label, count] : counts) Add(label, count);
}

void RelationMultiset::Add(std::string_view label, int64_t count) {
  if (count == 0) return;
  if (count < 0) throw std::invalid_argument("negative relation count");
  auto it = counts_.find(label);
  if (it == counts_.end()) {
    counts_.emplace(std::string(label), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

int64_t RelationMultiset::Count(std::string_view label) const {
  const auto it = counts_.find(label);
  return it == counts_.end() ? 0 : it->second;
}

RelationMultiset ConstituencyMultiset(const ConstituencyTree& tree,
                                      bool include_preterminals) {
  RelationMultiset counts;
  CountLabels(tree, include_preterminals, &counts);
  return counts;
}

RelationMultiset DependencyMultiset(const DependencyGraph& graph) {
  RelationMultiset counts;
  for (const DependencyEdge& edge : graph.edges) counts.Add(edge.relation);
  return counts;
}

std::string_view ReprKindName(ReprKind kind) {
  switch (kind) {
    case ReprKind::kRaw:
      return "raw";
    case ReprKind::kConstituency:
      return "constituency";
    case ReprKind::kDependency:
      return "dependency";
  }
  return "?";
}

StructureRepr StructureRepr::Raw(std::string text) {
  return StructureRepr(ReprKind::kRaw, std::move(text), {});
}

StructureRepr StructureRepr::Constituency(RelationMultiset multiset) {
  return StructureRepr(ReprKind::kConstituency, {}, std::move(multiset));
}

StructureRepr StructureRepr::Dependency(RelationMultiset multiset) {
  return StructureRepr(ReprKind::kDependency, {}, std::move(multiset));
}

const std::string& StructureRepr::raw() const {
  if (kind_ != ReprKind::kRaw) throw std::logic_error("not a raw repr");
  return raw_;
}

const RelationMultiset& StructureRepr::multiset() const {
  if (kind_ == ReprKind::kRaw) throw std::logic_error("raw repr has no multiset");
  return multiset_;
}

std::vector<ConstituencyTree> ParsePtbLines(std::string_view text) {
  std::vector<ConstituencyTree> trees;
  size_t start = 0;
  size_t line_no = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      trees.push_back(ParsePtb(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                       e.position());
    }
  }
  return trees;
}

std::vector<StructureRepr> ReprsFromParsed(std::string_view text, ParseMode mode,
                                           bool include_preterminals) {
  std::vector<StructureRepr> reprs;
  if (mode == ParseMode::kConstituency) {
    for (const ConstituencyTree& tree : ParsePtbLines(text)) {
      reprs.push_back(StructureRepr::Constituency(
          ConstituencyMultiset(tree, include_preterminals)));
    }
  } else {
    for (const DependencyGraph& graph : ParseConllu(text)) {
      reprs.push_back(StructureRepr::Dependency(DependencyMultiset(graph)));
    }
  }
  return reprs;
}

std::vector<StructureRepr> ExternalParse(std::span<const std::string> sentences,
                                         const AdapterSpec& adapter) {
  if (adapter.command.empty()) throw ConfigError("parser adapter command unset");
  std::string input;
  for (const std::string& sentence : sentences) {
    for (char c : sentence) input.push_back(c == '\n' || c == '\r' ? ' ' : c);
    input.push_back('\n');
  }
  std::vector<std::string> argv{adapter.command};
  argv.insert(argv.end(), adapter.args.begin(), adapter.args.end());
  const internal::SubprocessResult run =
      internal::RunSubprocess(argv, input, adapter.timeout);
  if (run.timed_out) {
    throw AdapterError("parser adapter '" + adapter.command + "' timed out; stderr: " +
                       run.err);
  }
  if (run.exit_code != 0) {
    throw AdapterError("parser adapter '" + adapter.command + "' exited with " +
                       std::to_string(run.exit_code) + "; stderr: " + run.err);
  }
  std::vector<StructureRepr> reprs;
  try {
    reprs = ReprsFromParsed(run.out, adapter.mode, adapter.include_preterminals);
  } catch (const ParseError& e) {
    throw AdapterError("parser adapter produced malformed output: " +
                       std::string(e.what()) + "; stderr: " + run.err);
  }
  if (reprs.size() != sentences.size()) {
    throw AdapterError("parser adapter returned " + std::to_string(reprs.size()) +
                       " structures for " + std::to_string(sentences.size()) +
                       " sentences; stderr: " + run.err);
  }
  return reprs;
}

RelationMultiset StubParser::Parse(std::span<const Token> tokens) const {
  RelationMultiset counts;
  for (const Token& token : tokens) {
    const auto it = relation_lexicon_.find(token.text);
    counts.Add(it == relation_lexicon_.end() ? kUnknownRelation : it->second);
  }
  return counts;
}

}  // namespace sit
