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

#ifndef POLYVOCAB_UNIGRAM_MODEL_H_
#define POLYVOCAB_UNIGRAM_MODEL_H_

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace polyvocab {

struct Piece {
  std::string token;
  double log_prob = 0.0;

  bool operator==(const Piece&) const = default;
};

// Token -> log-probability table of a unigram language model.
//
// Ids are positions in the piece list given at construction. The unknown
// token is never matched against text; the lattice uses it only for
// characters that no single-character piece covers. Every single-code-point
// piece is a required character, and together with the unknown token these
// form the protected set that pruning never removes.
class UnigramVocab {
 public:
  static constexpr std::string_view kUnkToken = "<unk>";

  // Rejects a missing or repeated unknown token, duplicates, empty tokens and
  // log-probabilities that are not finite or are positive. Normalization is
  // not enforced here; see Validate().
  explicit UnigramVocab(std::vector<Piece> pieces);

  std::size_t size() const { return pieces_.size(); }
  const Piece& piece(int id) const { return pieces_[static_cast<std::size_t>(id)]; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  int unk_id() const { return unk_id_; }

  // Id of |token|, or -1.
  int Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token) >= 0; }

  bool IsProtected(int id) const { return protected_[static_cast<std::size_t>(id)]; }
  std::size_t protected_count() const { return protected_count_; }
  std::vector<std::string> RequiredChars() const;

  // Length in code points of the longest matchable piece.
  int max_piece_chars() const { return max_piece_chars_; }

  double TotalProbability() const;
  // Full invariant check, including sum of probabilities within 1e-6 of 1.
  void Validate() const;

  // Invokes fn(id, end_byte) for every matchable piece that starts at byte
  // |begin| of |text|, shortest first.
  template <typename Fn>
  void ForEachPrefixMatch(std::string_view text, std::size_t begin, Fn&& fn) const {
    int node = 0;
    for (std::size_t i = begin; i < text.size(); ++i) {
      node = Child(node, static_cast<unsigned char>(text[i]));
      if (node < 0) return;
      if (const int id = trie_[static_cast<std::size_t>(node)].piece; id >= 0) {
        fn(id, i + 1);
      }
    }
  }

 private:
  struct TrieNode {
    int piece = -1;
    std::vector<std::pair<unsigned char, int>> children;  // sorted by byte
  };

  int Child(int node, unsigned char byte) const {
    const auto& children = trie_[static_cast<std::size_t>(node)].children;
    const auto it = std::lower_bound(
        children.begin(), children.end(), byte,
        [](const std::pair<unsigned char, int>& c, unsigned char b) { return c.first < b; });
    return it != children.end() && it->first == byte ? it->second : -1;
  }

  void Insert(std::string_view token, int id);

  std::vector<Piece> pieces_;
  std::vector<bool> protected_;
  std::vector<TrieNode> trie_;
  std::size_t protected_count_ = 0;
  int unk_id_ = -1;
  int max_piece_chars_ = 0;
};

struct SegmentedToken {
  int id = -1;          // vocab id; the unknown id for uncovered characters
  std::string surface;  // covered span of the input

  bool operator==(const SegmentedToken&) const = default;
};

struct Segmentation {
  std::vector<SegmentedToken> tokens;
  double score = 0.0;  // sum of token log-probabilities
};

// Most probable segmentation of normalized |text|. Among equal scores the
// path with fewer tokens wins, then the one whose tokens are longest from the
// left.
Segmentation ViterbiTokenize(const UnigramVocab& vocab, std::string_view text);

// Same decode without materializing surfaces.
std::vector<int> ViterbiTokenIds(const UnigramVocab& vocab, std::string_view text,
                                 double* score = nullptr);

// Score of the best segmentation.
double SentenceLogProb(const UnigramVocab& vocab, std::string_view sentence);

// Token strings of a segmentation; uncovered spans print as the unknown token.
std::vector<std::string> TokenStrings(const UnigramVocab& vocab,
                                      const Segmentation& segmentation);

// "#ulm-vocab v1" header, unknown token first, then descending log-probability
// and ascending token. Log-probabilities carry 17 significant digits.
std::string FormatVocab(const UnigramVocab& vocab);
UnigramVocab ParseVocab(std::string_view text);
void WriteVocab(const std::filesystem::path& path, const UnigramVocab& vocab);
UnigramVocab ReadVocab(const std::filesystem::path& path);

// Pieces sorted in file order.
std::vector<Piece> SortedPieces(std::vector<Piece> pieces);
std::string FormatLogProb(double value);

}  // namespace polyvocab

#endif  // POLYVOCAB_UNIGRAM_MODEL_H_
