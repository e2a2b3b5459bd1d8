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

#include "sit/synthetic.h"

#include <random>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sit/errors.h"

namespace sit {

namespace {

struct Synset {
  std::string_view first;
  std::string_view second;
  std::string_view target;
};

constexpr Synset kNouns[] = {
    {"dog", "hound", "狗"},          {"car", "automobile", "汽车"},
    {"house", "home", "房子"},       {"road", "street", "路"},
    {"city", "town", "城市"},        {"child", "kid", "孩子"},
    {"doctor", "physician", "医生"}, {"teacher", "instructor", "老师"},
    {"book", "volume", "书"},        {"river", "stream", "河"},
    {"forest", "woods", "森林"},     {"hill", "mound", "山丘"},
    {"boat", "ship", "船"},          {"garden", "yard", "花园"},
    {"gift", "present", "礼物"},     {"store", "shop", "商店"},
    {"friend", "companion", "朋友"}, {"student", "pupil", "学生"},
    {"picture", "photo", "照片"},    {"meal", "dinner", "饭"},
    {"stone", "rock", "石头"},       {"lawyer", "attorney", "律师"},
    {"cat", "feline", "猫"},         {"film", "movie", "电影"},
};

constexpr Synset kAdjectives[] = {
    {"big", "large", "大"},         {"small", "little", "小"},
    {"happy", "glad", "高兴"},      {"quick", "fast", "快"},
    {"quiet", "silent", "安静"},    {"old", "ancient", "老"},
    {"smart", "clever", "聪明"},    {"angry", "mad", "生气"},
    {"pretty", "beautiful", "漂亮"}, {"rich", "wealthy", "富有"},
    {"tired", "weary", "累"},       {"strange", "odd", "奇怪"},
    {"brave", "bold", "勇敢"},      {"calm", "peaceful", "平静"},
    {"bright", "shiny", "明亮"},    {"cold", "chilly", "冷"},
};

struct Word {
  std::string_view source;
  std::string_view target;
};

constexpr Word kVerbs[] = {
    {"saw", "看见"},     {"found", "找到"},    {"liked", "喜欢"},
    {"chased", "追"},    {"followed", "跟随"}, {"watched", "观看"},
    {"met", "遇见"},     {"helped", "帮助"},
};

struct FunctionWord {
  std::string_view source;
  std::string_view target;
  PosTag tag;
  std::string_view dependency;
  std::string_view constituency;
};

constexpr FunctionWord kFunctionWords[] = {
    {"the", "这", PosTag::kDet, "det", "DP"},
    {"a", "一个", PosTag::kDet, "det", "DP"},
    {"my", "我的", PosTag::kPron, "nmod:poss", "DP"},
    {"and", "和", PosTag::kConj, "cc", "CONJP"},
    {"of", "的", PosTag::kAdp, "case", "PP"},
    {"near", "附近", PosTag::kAdp, "case", "PP"},
    {"with", "跟", PosTag::kAdp, "case", "PP"},
    {"in", "在", PosTag::kAdp, "case", "PP"},
    {".", "。", PosTag::kPunct, "punct", "PU"},
};

// Slots: A adjective, N noun, V verb; anything else is literal. Each
// template has exactly five A/N slots.
constexpr std::string_view kTemplates[] = {
    "the A N V the A N near the N .",
    "a A N and a N V the A N .",
    "the N of the A N V a A N .",
    "my A N V with the A N in the N .",
};

size_t Below(std::mt19937_64& rng, size_t n) {
  return static_cast<size_t>(rng() % n);
}

}  // namespace

ExperimentInputs MakeSyntheticSuite(size_t sentence_count, uint64_t seed) {
  ExperimentInputs inputs;
  std::unordered_map<std::string, PosTag> tags;

  auto add_synset = [&](const Synset& s, PosTag tag, std::string_view dep,
                        std::string_view con) {
    for (std::string_view w : {s.first, s.second}) {
      tags[std::string(w)] = tag;
      inputs.target_lexicon[std::string(w)] = std::string(s.target);
    }
    inputs.substitutions[std::string(s.first)] = {std::string(s.second)};
    inputs.substitutions[std::string(s.second)] = {std::string(s.first)};
    inputs.dependency_labels[std::string(s.target)] = std::string(dep);
    inputs.constituency_labels[std::string(s.target)] = std::string(con);
  };
  for (const Synset& s : kNouns) add_synset(s, PosTag::kNoun, "nmod", "NP");
  for (const Synset& s : kAdjectives) add_synset(s, PosTag::kAdj, "amod", "ADJP");
  for (const Word& v : kVerbs) {
    tags[std::string(v.source)] = PosTag::kVerb;
    inputs.target_lexicon[std::string(v.source)] = std::string(v.target);
    inputs.dependency_labels[std::string(v.target)] = "root";
    inputs.constituency_labels[std::string(v.target)] = "VP";
  }
  for (const FunctionWord& f : kFunctionWords) {
    tags[std::string(f.source)] = f.tag;
    inputs.target_lexicon[std::string(f.source)] = std::string(f.target);
    inputs.dependency_labels[std::string(f.target)] = std::string(f.dependency);
    inputs.constituency_labels[std::string(f.target)] =
        std::string(f.constituency);
  }
  inputs.pos_lexicon = PosLexicon(tags);

  std::mt19937_64 rng(seed);
  std::unordered_set<std::string> seen;
  constexpr size_t kMaxAttemptsPerSentence = 1000;
  for (size_t n = 0; n < sentence_count; ++n) {
    bool placed = false;
    for (size_t attempt = 0; attempt < kMaxAttemptsPerSentence && !placed;
         ++attempt) {
      const std::string_view tmpl = kTemplates[Below(rng, std::size(kTemplates))];
      // The sentence and, for every A/N slot, the text with that slot
      // swapped for its synonym.
      std::vector<std::string> words;
      std::vector<size_t> slots;
      std::vector<std::string> synonyms;
      size_t start = 0;
      while (start < tmpl.size()) {
        size_t end = tmpl.find(' ', start);
        if (end == std::string_view::npos) end = tmpl.size();
        const std::string_view slot = tmpl.substr(start, end - start);
        start = end + 1;
        if (slot == "A" || slot == "N") {
          const Synset& s = slot == "A"
                                ? kAdjectives[Below(rng, std::size(kAdjectives))]
                                : kNouns[Below(rng, std::size(kNouns))];
          const bool first = Below(rng, 2) == 0;
          slots.push_back(words.size());
          words.emplace_back(first ? s.first : s.second);
          synonyms.emplace_back(first ? s.second : s.first);
        } else if (slot == "V") {
          words.emplace_back(kVerbs[Below(rng, std::size(kVerbs))].source);
        } else {
          words.emplace_back(slot);
        }
      }
      auto render = [](const std::vector<std::string>& ws) {
        std::vector<Token> tokens;
        for (const std::string& w : ws) tokens.push_back(Token{w, tokens.size()});
        return Detokenize(tokens);
      };
      std::vector<std::string> texts{render(words)};
      for (size_t i = 0; i < slots.size(); ++i) {
        std::vector<std::string> swapped = words;
        swapped[slots[i]] = synonyms[i];
        texts.push_back(render(swapped));
      }
      bool fresh = true;
      std::unordered_set<std::string> local;
      for (const std::string& t : texts) {
        if (seen.contains(t) || !local.insert(t).second) fresh = false;
      }
      if (!fresh) continue;
      seen.insert(local.begin(), local.end());
      inputs.sentences.push_back(texts[0]);
      placed = true;
    }
    if (!placed) {
      throw ConfigError("synthetic suite exhausted after " +
                        std::to_string(n) + " sentences");
    }
  }
  return inputs;
}

}  // namespace sit
