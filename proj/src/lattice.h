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

#ifndef POLYVOCAB_SRC_LATTICE_H_
#define POLYVOCAB_SRC_LATTICE_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "polyvocab/unigram_model.h"

namespace polyvocab::internal {

struct LatticeEdge {
  int end = 0;  // character position
  int id = -1;
  double log_prob = 0.0;
};

// Segmentation lattice over the characters of one sentence. Every character
// position has at least one outgoing edge: a matching piece or, failing any
// single-character piece, the unknown token.
class Lattice {
 public:
  // |excluded_id| is left out of the lattice (used to score alternatives when
  // a piece is removed).
  Lattice(const UnigramVocab& vocab, std::string_view text, int excluded_id = -1);

  int num_chars() const { return static_cast<int>(boundaries_.size()) - 1; }
  std::size_t byte_offset(int pos) const {
    return boundaries_[static_cast<std::size_t>(pos)];
  }
  std::span<const LatticeEdge> EdgesFrom(int pos) const {
    return {edges_.data() + starts_[static_cast<std::size_t>(pos)],
            edges_.data() + starts_[static_cast<std::size_t>(pos) + 1]};
  }

  struct Step {
    int begin;
    LatticeEdge edge;
  };
  // Best path with the module's tie-breaking rules.
  std::vector<Step> Viterbi(double* score) const;

  // log of the summed probability of all paths.
  double LogPartition() const;

  // Adds weight * posterior occurrence count of each piece to |expected|
  // and returns the log partition.
  double AccumulateExpectedCounts(double weight, std::vector<double>* expected) const;

 private:
  std::vector<std::size_t> boundaries_;
  std::vector<std::size_t> starts_;
  std::vector<LatticeEdge> edges_;
};

double LogAdd(double a, double b);

}  // namespace polyvocab::internal

#endif  // POLYVOCAB_SRC_LATTICE_H_
