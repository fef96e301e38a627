// Copyright 2026 The Polyvocab Authors
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

#ifndef POLYVOCAB_UTF8_H_
#define POLYVOCAB_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace polyvocab::utf8 {

inline constexpr std::size_t kNoError = static_cast<std::size_t>(-1);

// Byte offset of the first ill-formed sequence (overlong forms, surrogates
// and code points above U+10FFFF are rejected), or kNoError.
std::size_t FindInvalid(std::string_view text);

inline bool IsValid(std::string_view text) {
  return FindInvalid(text) == kNoError;
}

// Length in bytes of the sequence introduced by |lead|. Input must be valid.
inline std::size_t SequenceLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  return 4;
}

// Decodes the code point starting at byte |pos| of valid UTF-8 text.
char32_t DecodeAt(std::string_view text, std::size_t pos);

void Append(char32_t code_point, std::string* out);

std::size_t CountChars(std::string_view text);

// Byte offsets of every character boundary, including 0 and text.size().
std::vector<std::size_t> CharBoundaries(std::string_view text);

std::vector<std::string_view> SplitChars(std::string_view text);

}  // namespace polyvocab::utf8

#endif  // POLYVOCAB_UTF8_H_
