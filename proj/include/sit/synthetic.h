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

#ifndef SIT_SYNTHETIC_H_
#define SIT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>

#include "sit/evaluation.h"

namespace sit {

// Every synthetic sentence has exactly this many NOUN/ADJ positions, and
// every candidate word has exactly one same-tag synonym, so generation with
// any k >= 1 yields this many variants per sentence.
inline constexpr size_t kSyntheticVariantsPerSentence = 5;

// Builds a closed world for fault-injection runs: English sentences from a
// few templates, a POS lexicon, a synonym dictionary, an English->Chinese
// word map in which synonyms share one translation, and stub-parser label
// maps keyed by target word. Without faults every variant therefore has
// exactly the original's translation. Sentences and their variants are
// all distinct texts.
ExperimentInputs MakeSyntheticSuite(size_t sentence_count, uint64_t seed);

}  // namespace sit

#endif  // SIT_SYNTHETIC_H_
