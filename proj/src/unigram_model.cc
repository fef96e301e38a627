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

#include "polyvocab/unigram_model.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "lattice.h"
#include "polyvocab/error.h"
#include "polyvocab/hashing.h"
#include "polyvocab/utf8.h"

namespace polyvocab {
namespace {

constexpr std::string_view kVocabHeader = "#ulm-vocab v1";

}  // namespace

UnigramVocab::UnigramVocab(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  trie_.emplace_back();
  protected_.assign(pieces_.size(), false);
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (p.token.empty()) throw InvalidArgumentError("empty token in vocabulary");
    if (!seen.insert(p.token).second) {
      throw InvalidArgumentError("duplicate token in vocabulary: " + p.token);
    }
    if (!std::isfinite(p.log_prob) || p.log_prob > 0.0) {
      throw InvalidArgumentError("log-probability of '" + p.token +
                                 "' must be finite and <= 0");
    }
    const int id = static_cast<int>(i);
    if (p.token == kUnkToken) {
      unk_id_ = id;
      protected_[i] = true;
      continue;
    }
    if (!utf8::IsValid(p.token)) {
      throw InvalidArgumentError("token is not valid UTF-8");
    }
    const int chars = static_cast<int>(utf8::CountChars(p.token));
    protected_[i] = chars == 1;
    max_piece_chars_ = std::max(max_piece_chars_, chars);
    Insert(p.token, id);
  }
  if (unk_id_ < 0) {
    throw InvalidArgumentError("vocabulary lacks the unknown token");
  }
  protected_count_ = static_cast<std::size_t>(
      std::count(protected_.begin(), protected_.end(), true));
}

void UnigramVocab::Insert(std::string_view token, int id) {
  int node = 0;
  for (const char ch : token) {
    const auto byte = static_cast<unsigned char>(ch);
    int next = Child(node, byte);
    if (next < 0) {
      next = static_cast<int>(trie_.size());
      trie_.emplace_back();
      auto& children = trie_[static_cast<std::size_t>(node)].children;
      children.insert(
          std::lower_bound(children.begin(), children.end(), byte,
                           [](const std::pair<unsigned char, int>& c, unsigned char b) {
                             return c.first < b;
                           }),
          {byte, next});
    }
    node = next;
  }
  trie_[static_cast<std::size_t>(node)].piece = id;
}

int UnigramVocab::Find(std::string_view token) const {
  if (token == kUnkToken) return unk_id_;
  int node = 0;
  for (const char ch : token) {
    node = Child(node, static_cast<unsigned char>(ch));
    if (node < 0) return -1;
  }
  return trie_[static_cast<std::size_t>(node)].piece;
}

std::vector<std::string> UnigramVocab::RequiredChars() const {
  std::vector<std::string> chars;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (protected_[i] && static_cast<int>(i) != unk_id_) chars.push_back(pieces_[i].token);
  }
  std::sort(chars.begin(), chars.end());
  return chars;
}

double UnigramVocab::TotalProbability() const {
  double sum = 0.0;
  for (const Piece& p : pieces_) sum += std::exp(p.log_prob);
  return sum;
}

void UnigramVocab::Validate() const {
  const double total = TotalProbability();
  if (std::abs(total - 1.0) > 1e-6) {
    throw InvalidArgumentError("vocabulary probabilities sum to " +
                               std::to_string(total));
  }
}

Segmentation ViterbiTokenize(const UnigramVocab& vocab, std::string_view text) {
  const internal::Lattice lattice(vocab, text);
  Segmentation out;
  for (const auto& step : lattice.Viterbi(&out.score)) {
    const std::size_t b = lattice.byte_offset(step.begin);
    const std::size_t e = lattice.byte_offset(step.edge.end);
    out.tokens.push_back({step.edge.id, std::string(text.substr(b, e - b))});
  }
  return out;
}

std::vector<int> ViterbiTokenIds(const UnigramVocab& vocab, std::string_view text,
                                 double* score) {
  const internal::Lattice lattice(vocab, text);
  std::vector<int> ids;
  for (const auto& step : lattice.Viterbi(score)) ids.push_back(step.edge.id);
  return ids;
}

double SentenceLogProb(const UnigramVocab& vocab, std::string_view sentence) {
  double score = 0.0;
  internal::Lattice(vocab, sentence).Viterbi(&score);
  return score;
}

std::vector<std::string> TokenStrings(const UnigramVocab& vocab,
                                      const Segmentation& segmentation) {
  std::vector<std::string> out;
  out.reserve(segmentation.tokens.size());
  for (const auto& t : segmentation.tokens) out.push_back(vocab.piece(t.id).token);
  return out;
}

std::string FormatLogProb(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::vector<Piece> SortedPieces(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    const bool a_unk = a.token == UnigramVocab::kUnkToken;
    const bool b_unk = b.token == UnigramVocab::kUnkToken;
    if (a_unk != b_unk) return a_unk;
    if (a.log_prob != b.log_prob) return a.log_prob > b.log_prob;
    return a.token < b.token;
  });
  return pieces;
}

std::string FormatVocab(const UnigramVocab& vocab) {
  std::string out(kVocabHeader);
  out += '\n';
  for (const Piece& p : SortedPieces(vocab.pieces())) {
    if (p.token.find_first_of("\t\n") != std::string::npos) {
      throw InvalidArgumentError("token contains a tab or newline");
    }
    out += p.token;
    out += '\t';
    out += FormatLogProb(p.log_prob);
    out += '\n';
  }
  return out;
}

UnigramVocab ParseVocab(std::string_view text) {
  std::vector<Piece> pieces;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  bool header = false;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    const std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    const std::string where = "vocab line " + std::to_string(line_no) + ": ";
    if (!header) {
      if (line != kVocabHeader) throw DataLossError(where + "missing '#ulm-vocab v1' header");
      header = true;
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw DataLossError(where + "expected token<TAB>log_prob");
    }
    Piece piece{std::string(line.substr(0, tab)), 0.0};
    const std::string number(line.substr(tab + 1));
    char* end = nullptr;
    piece.log_prob = std::strtod(number.c_str(), &end);
    if (number.empty() || end != number.c_str() + number.size()) {
      throw DataLossError(where + "bad log-probability '" + number + "'");
    }
    if (!seen.insert(piece.token).second) {
      throw DataLossError(where + "duplicate token '" + piece.token + "'");
    }
    if (pieces.empty() && piece.token != UnigramVocab::kUnkToken) {
      throw DataLossError(where + "first entry must be the unknown token");
    }
    pieces.push_back(std::move(piece));
  }
  if (!header) throw DataLossError("vocab file is empty");
  try {
    return UnigramVocab(std::move(pieces));
  } catch (const Error& e) {
    throw DataLossError(std::string("invalid vocab file: ") + e.what());
  }
}

void WriteVocab(const std::filesystem::path& path, const UnigramVocab& vocab) {
  WriteStringToFile(path, FormatVocab(vocab));
}

UnigramVocab ReadVocab(const std::filesystem::path& path) {
  return ParseVocab(ReadFileToString(path));
}

}  // namespace polyvocab
