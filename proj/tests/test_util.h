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

#ifndef POLYVOCAB_TESTS_TEST_UTIL_H_
#define POLYVOCAB_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyvocab/corpus.h"
#include "polyvocab/random.h"
#include "polyvocab/unigram_model.h"
#include "polyvocab/utf8.h"

namespace polyvocab::testing {

inline constexpr double kTinyUnkLogProb = -30.0;

// Vocab from (token, probability) pairs plus an unknown token of negligible mass.
inline UnigramVocab MakeVocab(const std::vector<std::pair<std::string, double>>& probs,
                              double unk_log_prob = kTinyUnkLogProb) {
  std::vector<Piece> pieces{{std::string(UnigramVocab::kUnkToken), unk_log_prob}};
  for (const auto& [t, p] : probs) pieces.push_back({t, std::log(p)});
  return UnigramVocab(std::move(pieces));
}

// Vocab whose pieces share mass uniformly, unknown token included.
inline UnigramVocab UniformVocab(const std::vector<std::string>& tokens) {
  const double lp = -std::log(static_cast<double>(tokens.size() + 1));
  std::vector<Piece> pieces{{std::string(UnigramVocab::kUnkToken), lp}};
  for (const auto& t : tokens) pieces.push_back({t, lp});
  return UnigramVocab(std::move(pieces));
}

inline SentenceCorpus Verbatim(std::vector<std::string> sentences,
                               const std::string& lang = "xx") {
  return SentenceCorpus(LanguageId(lang), std::move(sentences));
}

// Every segmentation of |text| into vocab strings, with characters that no
// single-character piece covers taken as the unknown token. Independent of
// the lattice: pieces are matched by plain string comparison.
inline void EnumerateSegmentations(
    const UnigramVocab& vocab, const std::string& text,
    const std::function<void(const std::vector<int>&, double)>& visit) {
  std::vector<int> path;
  std::function<void(std::size_t, double)> rec = [&](std::size_t pos, double score) {
    if (pos == text.size()) {
      visit(path, score);
      return;
    }
    for (std::size_t id = 0; id < vocab.size(); ++id) {
      const auto& p = vocab.piece(static_cast<int>(id));
      if (static_cast<int>(id) == vocab.unk_id()) continue;
      if (text.compare(pos, p.token.size(), p.token) == 0) {
        path.push_back(static_cast<int>(id));
        rec(pos + p.token.size(), score + p.log_prob);
        path.pop_back();
      }
    }
    const std::size_t len = utf8::SequenceLength(static_cast<unsigned char>(text[pos]));
    if (!vocab.Contains(text.substr(pos, len))) {
      path.push_back(vocab.unk_id());
      rec(pos + len, score + vocab.piece(vocab.unk_id()).log_prob);
      path.pop_back();
    }
  };
  rec(0, 0.0);
}

inline double BruteForceBestScore(const UnigramVocab& vocab, const std::string& text) {
  double best = -std::numeric_limits<double>::infinity();
  EnumerateSegmentations(vocab, text, [&](const std::vector<int>&, double s) {
    best = std::max(best, s);
  });
  return best;
}

// Random vocab over a small alphabet: every letter as a single piece (so
// each string is segmentable) plus random multi-letter pieces, at most
// |max_tokens| non-unknown pieces in total.
inline UnigramVocab RandomVocab(Rng& rng, const std::string& alphabet, std::size_t max_tokens,
                                bool include_all_chars = true) {
  std::vector<std::string> tokens;
  if (include_all_chars) {
    for (char c : alphabet) tokens.emplace_back(1, c);
  }
  const std::size_t target = tokens.size() + rng.Below(max_tokens - tokens.size() + 1);
  for (int guard = 0; tokens.size() < target && guard < 1000; ++guard) {
    std::string t;
    const std::size_t len = 1 + rng.Below(4);
    for (std::size_t i = 0; i < len; ++i) t += alphabet[rng.Below(alphabet.size())];
    if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) tokens.push_back(t);
  }
  std::vector<double> w(tokens.size() + 1);
  double sum = 0;
  for (double& x : w) sum += (x = 0.05 + rng.Uniform());
  std::vector<Piece> pieces{{std::string(UnigramVocab::kUnkToken), std::log(w[0] / sum)}};
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    pieces.push_back({tokens[i], std::log(w[i + 1] / sum)});
  }
  return UnigramVocab(std::move(pieces));
}

inline std::string RandomString(Rng& rng, const std::string& alphabet, std::size_t max_len) {
  std::string s;
  const std::size_t len = rng.Below(max_len + 1);
  for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.Below(alphabet.size())];
  return s;
}

class TempDir {
 public:
  TempDir() {
    Rng rng(static_cast<std::uint64_t>(std::random_device{}()));
    path_ = std::filesystem::temp_directory_path() /
            ("polyvocab-test-" + std::to_string(rng.Next()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace polyvocab::testing

#endif  // POLYVOCAB_TESTS_TEST_UTIL_H_
