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

#include "polyvocab/normalizer.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "polyvocab/error.h"
#include "polyvocab/utf8.h"

namespace polyvocab {
namespace {

constexpr char32_t kWordBoundaryCodePoint = 0x2581;

const icu::Normalizer2& Nfkc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || nfkc == nullptr) {
    throw Error(ErrorCode::kDataLoss, "ICU NFKC data unavailable");
  }
  return *nfkc;
}

}  // namespace

std::string NormalizeSentence(std::string_view raw) {
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString composed = Nfkc().normalize(source, status);
  if (U_FAILURE(status)) {
    throw DataLossError("NFKC normalization failed");
  }
  std::string nfkc;
  composed.toUTF8String(nfkc);

  std::string out;
  out.reserve(nfkc.size() + 8);
  bool pending_space = true;  // also emits the leading boundary symbol
  for (std::size_t i = 0; i < nfkc.size();) {
    const char32_t cp = utf8::DecodeAt(nfkc, i);
    i += utf8::SequenceLength(static_cast<unsigned char>(nfkc[i]));
    if (cp == kWordBoundaryCodePoint || u_isUWhiteSpace(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space) {
      out.append(kWordBoundary);
      pending_space = false;
    }
    utf8::Append(cp, &out);
  }
  return out;
}

}  // namespace polyvocab
