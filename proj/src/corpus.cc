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

#include "polyvocab/corpus.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polyvocab/apportion.h"
#include "polyvocab/error.h"
#include "polyvocab/hashing.h"
#include "polyvocab/normalizer.h"
#include "polyvocab/random.h"
#include "polyvocab/unigram_model.h"
#include "polyvocab/utf8.h"

namespace polyvocab {

LanguageId::LanguageId(std::string code) : code_(std::move(code)) {
  if (code_.empty()) throw InvalidArgumentError("empty language id");
  for (const char c : code_) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw InvalidArgumentError("language id contains whitespace: '" + code_ + "'");
    }
  }
}

SentenceCorpus::SentenceCorpus(LanguageId language, std::vector<std::string> sentences)
    : language_(std::move(language)), sentences_(std::move(sentences)) {
  for (const auto& s : sentences_) {
    if (s.find('\n') != std::string::npos) {
      throw InvalidArgumentError("sentence contains a newline in corpus " +
                                 language_.code());
    }
  }
}

SentenceCorpus SentenceCorpus::FromRawLines(LanguageId language,
                                            const std::vector<std::string>& lines) {
  std::vector<std::string> sentences;
  sentences.reserve(lines.size());
  for (const auto& line : lines) {
    if (const std::size_t bad = utf8::FindInvalid(line); bad != utf8::kNoError) {
      throw DataLossError("invalid UTF-8 at byte " + std::to_string(bad));
    }
    std::string normalized = NormalizeSentence(line);
    if (!normalized.empty()) sentences.push_back(std::move(normalized));
  }
  return SentenceCorpus(std::move(language), std::move(sentences));
}

void FrequencyTable::Add(std::string_view token, std::int64_t count) {
  if (count < 0) throw InvalidArgumentError("negative token count");
  if (count == 0) return;
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

std::int64_t FrequencyTable::count(std::string_view token) const {
  const auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<std::pair<std::string, std::int64_t>> FrequencyTable::SortedEntries() const {
  std::vector<std::pair<std::string, std::int64_t>> entries(counts_.begin(),
                                                            counts_.end());
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return entries;
}

std::string FrequencyTable::ToTsv() const {
  std::string out;
  for (const auto& [token, count] : SortedEntries()) {
    out += token;
    out += '\t';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

FrequencyTable FrequencyTable::FromTsv(std::string_view tsv) {
  FrequencyTable table;
  std::size_t line_no = 0;
  while (!tsv.empty()) {
    ++line_no;
    const std::size_t eol = tsv.find('\n');
    std::string_view line = tsv.substr(0, eol);
    tsv = eol == std::string_view::npos ? std::string_view() : tsv.substr(eol + 1);
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw DataLossError("frequency table line " + std::to_string(line_no) +
                          ": expected token<TAB>count");
    }
    const std::string token(line.substr(0, tab));
    if (table.count(token) != 0) {
      throw DataLossError("frequency table line " + std::to_string(line_no) +
                          ": duplicate token");
    }
    std::int64_t count = 0;
    try {
      std::size_t used = 0;
      const std::string digits(line.substr(tab + 1));
      count = std::stoll(digits, &used);
      if (used != digits.size() || count <= 0) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw DataLossError("frequency table line " + std::to_string(line_no) +
                          ": bad count");
    }
    table.Add(token, count);
  }
  return table;
}

SentenceCorpus ParseCorpus(std::string_view text, LanguageId language) {
  if (const std::size_t bad = utf8::FindInvalid(text); bad != utf8::kNoError) {
    throw DataLossError("invalid UTF-8 in corpus " + language.code() +
                        " at byte offset " + std::to_string(bad));
  }
  std::vector<std::string> sentences;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string normalized = NormalizeSentence(text.substr(0, eol));
    if (!normalized.empty()) sentences.push_back(std::move(normalized));
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return SentenceCorpus(std::move(language), std::move(sentences));
}

SentenceCorpus LoadCorpus(const std::filesystem::path& path, LanguageId language) {
  return ParseCorpus(ReadFileToString(path), std::move(language));
}

void WriteCorpus(const std::filesystem::path& path, const SentenceCorpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences()) {
    out += s;
    out += '\n';
  }
  WriteStringToFile(path, out);
}

std::map<LanguageId, std::int64_t> TemperatureSample(
    const std::map<LanguageId, std::int64_t>& line_counts, double temperature,
    std::int64_t total_lines) {
  if (line_counts.empty()) throw InvalidArgumentError("no languages to sample");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw InvalidArgumentError("sampling temperature must be positive");
  }
  if (total_lines <= 0) throw InvalidArgumentError("total_lines must be positive");

  double sum = 0.0;
  for (const auto& [lang, count] : line_counts) {
    if (count <= 0) {
      throw InvalidArgumentError("line count for " + lang.code() + " must be positive");
    }
    sum += static_cast<double>(count);
  }
  std::vector<double> weights;
  weights.reserve(line_counts.size());
  for (const auto& [lang, count] : line_counts) {
    weights.push_back(std::pow(static_cast<double>(count) / sum, 1.0 / temperature));
  }
  const std::vector<std::int64_t> quotas = LargestRemainder(weights, total_lines);
  std::map<LanguageId, std::int64_t> out;
  std::size_t i = 0;
  for (const auto& [lang, count] : line_counts) out.emplace(lang, quotas[i++]);
  return out;
}

SentenceCorpus DrawSample(const SentenceCorpus& corpus, std::int64_t quota,
                          std::uint64_t seed) {
  if (quota < 0) throw InvalidArgumentError("negative sample quota");
  const std::int64_t n = corpus.line_count();
  if (quota > 0 && n == 0) {
    throw InvalidArgumentError("cannot sample from empty corpus " +
                               corpus.language().code());
  }
  std::vector<std::string> drawn;
  drawn.reserve(static_cast<std::size_t>(quota));
  const auto& lines = corpus.sentences();
  const std::int64_t full_passes = n == 0 ? 0 : quota / n;
  for (std::int64_t pass = 0; pass < full_passes; ++pass) {
    drawn.insert(drawn.end(), lines.begin(), lines.end());
  }
  const std::int64_t remainder = quota - full_passes * n;
  if (remainder > 0) {
    // Partial Fisher-Yates: the first |remainder| slots are a uniform
    // sample without replacement.
    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::int64_t i = 0; i < remainder; ++i) {
      const std::uint64_t j =
          static_cast<std::uint64_t>(i) + rng.Below(static_cast<std::uint64_t>(n - i));
      std::swap(order[static_cast<std::size_t>(i)], order[j]);
      drawn.push_back(lines[order[static_cast<std::size_t>(i)]]);
    }
  }
  return SentenceCorpus(corpus.language(), std::move(drawn));
}

FrequencyTable CountTokenFrequencies(const SentenceCorpus& corpus,
                                     const UnigramVocab& vocab) {
  FrequencyTable table;
  for (const auto& sentence : corpus.sentences()) {
    for (const auto& token : ViterbiTokenize(vocab, sentence).tokens) {
      table.Add(vocab.piece(token.id).token);
    }
  }
  return table;
}

}  // namespace polyvocab
