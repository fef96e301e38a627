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

#ifndef POLYVOCAB_NORMALIZER_H_
#define POLYVOCAB_NORMALIZER_H_

#include <string>
#include <string_view>

namespace polyvocab {

// U+2581 LOWER ONE EIGHTH BLOCK, marks word boundaries in normalized text.
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";

// Canonical form used everywhere past ingestion: NFKC, whitespace runs
// collapsed and trimmed, every remaining space replaced by the word-boundary
// symbol and one boundary symbol prefixed. A literal boundary symbol in the
// input is treated as whitespace, which makes the function idempotent.
// Blank input normalizes to the empty string. Input must be valid UTF-8.
std::string NormalizeSentence(std::string_view raw);

}  // namespace polyvocab

#endif  // POLYVOCAB_NORMALIZER_H_
