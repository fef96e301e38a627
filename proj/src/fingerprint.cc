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

#include "polyvocab/fingerprint.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "polyvocab/error.h"

namespace polyvocab {
namespace {

constexpr double kMinPresentValue = 1e-12;
constexpr double kUnseenCount = 0.5;

}  // namespace

SharedLexicon::SharedLexicon(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<int>(i));
  }
}

int SharedLexicon::IndexOf(const std::string& token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

SharedLexicon BuildSharedLexicon(std::span<const UnigramVocab> vocabs) {
  if (vocabs.empty()) throw InvalidArgumentError("no vocabularies for the shared lexicon");
  std::vector<std::string> tokens;
  for (const auto& vocab : vocabs) {
    for (const auto& piece : vocab.pieces()) tokens.push_back(piece.token);
  }
  return SharedLexicon(std::move(tokens));
}

std::string_view FingerprintModeName(FingerprintMode mode) {
  return mode == FingerprintMode::kBinary ? "binary" : "neglogprob";
}

FingerprintMode ParseFingerprintMode(std::string_view name) {
  if (name == "binary") return FingerprintMode::kBinary;
  if (name == "neglogprob") return FingerprintMode::kNegLogProb;
  throw InvalidArgumentError("unknown fingerprint mode '" + std::string(name) + "'");
}

LexicalFingerprint BuildFingerprint(const LanguageId& language, const UnigramVocab& vocab,
                                    const FrequencyTable& freq, const SharedLexicon& lexicon,
                                    FingerprintMode mode) {
  if (mode == FingerprintMode::kNegLogProb && freq.total() == 0) {
    throw InvalidArgumentError("empty frequency table for " + language.code());
  }
  LexicalFingerprint fp{language, std::vector<double>(lexicon.size(), 0.0)};
  const double total = static_cast<double>(freq.total());
  for (const auto& piece : vocab.pieces()) {
    const int index = lexicon.IndexOf(piece.token);
    if (index < 0) {
      throw InvalidArgumentError("token '" + piece.token + "' of " + language.code() +
                                 " is missing from the shared lexicon");
    }
    double value = 1.0;
    if (mode == FingerprintMode::kNegLogProb) {
      const std::int64_t count = freq.count(piece.token);
      const double c = count > 0 ? static_cast<double>(count) : kUnseenCount;
      value = std::max(-std::log(c / total), kMinPresentValue);
    }
    fp.values[static_cast<std::size_t>(index)] = value;
  }
  return fp;
}

std::string FormatFingerprints(std::span<const LexicalFingerprint> fingerprints,
                               FingerprintMode mode) {
  const std::size_t dim = fingerprints.empty() ? 0 : fingerprints.front().values.size();
  std::string out = "#fingerprints v1 dim=" + std::to_string(dim) +
                    " mode=" + std::string(FingerprintModeName(mode)) + "\n";
  for (const auto& fp : fingerprints) {
    if (fp.values.size() != dim) throw InvalidArgumentError("fingerprint dimension mismatch");
    out += fp.language.code();
    out += '\t';
    bool first = true;
    for (std::size_t i = 0; i < dim; ++i) {
      if (fp.values[i] == 0.0) continue;
      if (!first) out += ',';
      first = false;
      out += std::to_string(i);
      out += ':';
      out += FormatLogProb(fp.values[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<LexicalFingerprint> ParseFingerprints(std::string_view text,
                                                  FingerprintMode* mode) {
  const std::size_t eol = text.find('\n');
  const std::string header(text.substr(0, eol));
  std::size_t dim = 0;
  char mode_name[32] = {0};
  if (std::sscanf(header.c_str(), "#fingerprints v1 dim=%zu mode=%31s", &dim, mode_name) != 2) {
    throw DataLossError("fingerprint file: bad header");
  }
  const FingerprintMode parsed_mode = ParseFingerprintMode(mode_name);
  if (mode != nullptr) *mode = parsed_mode;
  std::vector<LexicalFingerprint> out;
  text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
  std::size_t line_no = 1;
  while (!text.empty()) {
    ++line_no;
    const std::size_t end = text.find('\n');
    const std::string line(text.substr(0, end));
    text = end == std::string_view::npos ? std::string_view() : text.substr(end + 1);
    const std::string where = "fingerprint line " + std::to_string(line_no) + ": ";
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw DataLossError(where + "missing language");
    LexicalFingerprint fp{LanguageId(line.substr(0, tab)), std::vector<double>(dim, 0.0)};
    std::size_t pos = tab + 1;
    while (pos < line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      const std::string pair = line.substr(pos, comma - pos);
      const std::size_t colon = pair.find(':');
      char* idx_end = nullptr;
      char* val_end = nullptr;
      const unsigned long long index =
          colon == std::string::npos ? dim : std::strtoull(pair.c_str(), &idx_end, 10);
      const double value =
          colon == std::string::npos ? 0.0 : std::strtod(pair.c_str() + colon + 1, &val_end);
      if (colon == std::string::npos || idx_end != pair.c_str() + colon || index >= dim ||
          val_end != pair.c_str() + pair.size()) {
        throw DataLossError(where + "bad entry '" + pair + "'");
      }
      fp.values[index] = value;
      pos = comma + 1;
    }
    out.push_back(std::move(fp));
  }
  return out;
}

}  // namespace polyvocab
