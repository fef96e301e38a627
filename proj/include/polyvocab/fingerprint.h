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

#ifndef POLYVOCAB_FINGERPRINT_H_
#define POLYVOCAB_FINGERPRINT_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "polyvocab/corpus.h"
#include "polyvocab/unigram_model.h"

namespace polyvocab {

// Union of the per-language vocabularies, sorted bytewise.
class SharedLexicon {
 public:
  explicit SharedLexicon(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  // Position of |token|, or -1.
  int IndexOf(const std::string& token) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

SharedLexicon BuildSharedLexicon(std::span<const UnigramVocab> vocabs);

enum class FingerprintMode { kBinary, kNegLogProb };

std::string_view FingerprintModeName(FingerprintMode mode);
FingerprintMode ParseFingerprintMode(std::string_view name);

struct LexicalFingerprint {
  LanguageId language;
  std::vector<double> values;  // one entry per lexicon token
};

// Binary mode marks vocabulary membership with 1. Negative-log-probability
// mode stores -log(count / total) from the language's frequency table, with
// in-vocabulary tokens the corpus never produced smoothed to a count of 0.5.
// Present entries are kept strictly positive (a token holding all of the
// mass would otherwise encode as 0 and read as absent).
LexicalFingerprint BuildFingerprint(const LanguageId& language, const UnigramVocab& vocab,
                                    const FrequencyTable& freq, const SharedLexicon& lexicon,
                                    FingerprintMode mode);

// "#fingerprints v1 dim=<D> mode=<m>" then "<lang>\t<i>:<v>,..." per language.
std::string FormatFingerprints(std::span<const LexicalFingerprint> fingerprints,
                               FingerprintMode mode);
std::vector<LexicalFingerprint> ParseFingerprints(std::string_view text,
                                                  FingerprintMode* mode = nullptr);

}  // namespace polyvocab

#endif  // POLYVOCAB_FINGERPRINT_H_
