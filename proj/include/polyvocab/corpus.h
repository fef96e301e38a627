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

#ifndef POLYVOCAB_CORPUS_H_
#define POLYVOCAB_CORPUS_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyvocab {

class UnigramVocab;

// Short language tag such as "en" or "zh-TW". Non-empty, no whitespace.
class LanguageId {
 public:
  explicit LanguageId(std::string code);

  const std::string& code() const { return code_; }

  auto operator<=>(const LanguageId&) const = default;

 private:
  std::string code_;
};

// Normalized sentences of one language. Construction from already
// normalized text stores sentences verbatim; FromRawLines and LoadCorpus
// normalize and drop lines that normalize to nothing.
class SentenceCorpus {
 public:
  SentenceCorpus(LanguageId language, std::vector<std::string> sentences);

  static SentenceCorpus FromRawLines(LanguageId language,
                                     const std::vector<std::string>& lines);

  const LanguageId& language() const { return language_; }
  const std::vector<std::string>& sentences() const { return sentences_; }
  std::int64_t line_count() const {
    return static_cast<std::int64_t>(sentences_.size());
  }
  bool empty() const { return sentences_.empty(); }

 private:
  LanguageId language_;
  std::vector<std::string> sentences_;
};

// Token occurrence counts. |total| always equals the sum of the counts and
// no stored count is zero.
class FrequencyTable {
 public:
  void Add(std::string_view token, std::int64_t count = 1);

  std::int64_t count(std::string_view token) const;
  std::int64_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  const std::map<std::string, std::int64_t, std::less<>>& counts() const {
    return counts_;
  }

  // Descending count, then ascending token.
  std::vector<std::pair<std::string, std::int64_t>> SortedEntries() const;

  std::string ToTsv() const;
  static FrequencyTable FromTsv(std::string_view tsv);

 private:
  std::map<std::string, std::int64_t, std::less<>> counts_;
  std::int64_t total_ = 0;
};

// Reads UTF-8 text, one sentence per line. Invalid UTF-8 is rejected with
// the byte offset of the first bad sequence.
SentenceCorpus LoadCorpus(const std::filesystem::path& path, LanguageId language);
SentenceCorpus ParseCorpus(std::string_view text, LanguageId language);

// Writes one sentence per line. LoadCorpus of the result reproduces the
// corpus since normalization is idempotent.
void WriteCorpus(const std::filesystem::path& path, const SentenceCorpus& corpus);

// Per-language line quotas proportional to p_i^(1/t), p_i being each
// language's share of lines, rounded by largest remainder with ties going
// to the lexicographically smaller language. Quotas sum to |total_lines|.
std::map<LanguageId, std::int64_t> TemperatureSample(
    const std::map<LanguageId, std::int64_t>& line_counts, double temperature,
    std::int64_t total_lines);

// Draws |quota| lines. Below the corpus size this samples without
// replacement; above it every line is repeated quota / size times and the
// remainder is sampled without replacement.
SentenceCorpus DrawSample(const SentenceCorpus& corpus, std::int64_t quota,
                          std::uint64_t seed);

// Viterbi-tokenizes every sentence and counts the resulting tokens.
// Uncovered characters count toward the unknown token.
FrequencyTable CountTokenFrequencies(const SentenceCorpus& corpus,
                                     const UnigramVocab& vocab);

}  // namespace polyvocab

#endif  // POLYVOCAB_CORPUS_H_
