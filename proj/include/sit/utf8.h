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

#ifndef SIT_UTF8_H_
#define SIT_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace sit::utf8 {

// Returns the byte offset of the first invalid sequence, or nullopt when `s`
// is well-formed UTF-8 (overlongs, surrogates and values past U+10FFFF are
// rejected).
std::optional<size_t> FindInvalid(std::string_view s);

inline bool IsValid(std::string_view s) { return !FindInvalid(s).has_value(); }

// Decodes to scalar values. Each byte of an invalid sequence becomes U+FFFD.
std::u32string Decode(std::string_view s);

void AppendEncoded(char32_t c, std::string* out);
std::string Encode(std::u32string_view s);

bool IsWhitespace(char32_t c);
bool IsPunctuation(char32_t c);

// ASCII-only case folding; non-ASCII bytes pass through unchanged.
std::string AsciiLower(std::string_view s);

}  // namespace sit::utf8

#endif  // SIT_UTF8_H_
