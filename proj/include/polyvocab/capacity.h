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

#ifndef POLYVOCAB_CAPACITY_H_
#define POLYVOCAB_CAPACITY_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyvocab/clustering.h"
#include "polyvocab/corpus.h"
#include "polyvocab/unigram_model.h"
#include "polyvocab/unigram_trainer.h"

namespace polyvocab {

// Average log probability: the corpus is Viterbi-tokenized, a unigram
// distribution is counted over the resulting tokens, and the summed log
// probability of each sentence's tokens is averaged over sentences.
double ComputeAlp(const SentenceCorpus& corpus, const UnigramVocab& vocab);

struct LadderPoint {
  std::int64_t vocab_size = 0;
  double alp = 0.0;
};

class AlpLadder {
 public:
  // Sizes must be positive and strictly increasing, ALPs finite.
  AlpLadder(LanguageId language, std::vector<LadderPoint> points);

  const LanguageId& language() const { return language_; }
  const std::vector<LadderPoint>& points() const { return points_; }
  std::int64_t min_size() const { return points_.front().vocab_size; }
  std::int64_t max_size() const { return points_.back().vocab_size; }

  // Linear interpolation; sizes outside [min_size, max_size] are refused.
  double Interpolate(std::int64_t size) const;

 private:
  LanguageId language_;
  std::vector<LadderPoint> points_;
};

// Trains one vocabulary per size and records its ALP on the same corpus.
AlpLadder BuildAlpLadder(const SentenceCorpus& corpus, std::span<const std::size_t> sizes,
                         const TrainerConfig& config = {});

struct CapacityAllocation {
  std::map<LanguageId, std::int64_t> budgets;
  std::int64_t total = 0;

  std::int64_t Sum() const;
};

// Starts every language at |min_floor| and repeatedly grants |chunk| tokens
// (the last grant may be partial) to the language whose interpolated ALP
// improves most. Equal gains go to the smaller current budget, then to the
// lexicographically smaller language. A language whose ladder cannot cover
// another grant stops receiving them; running out of eligible languages is
// an error.
CapacityAllocation GreedyAllocate(std::span<const AlpLadder> ladders, std::int64_t total,
                                  std::int64_t chunk, std::int64_t min_floor);

// Scales budgets to |new_total| by largest remainder. Languages that would
// fall below |min_floor| are pinned there and the rest of the total is shared
// among the others in proportion to their original budgets.
CapacityAllocation Rescale(const CapacityAllocation& allocation, std::int64_t new_total,
                           std::int64_t min_floor);

// Sum of member budgets per cluster id.
std::map<int, std::int64_t> ClusterCapacity(const CapacityAllocation& allocation,
                                            const ClusterAssignment& clusters);

// "language<TAB>budget" lines.
std::string FormatAllocationTsv(const CapacityAllocation& allocation);
CapacityAllocation ParseAllocationTsv(std::string_view text);

// "language<TAB>vocab_size<TAB>alp" lines.
std::string FormatLadderTsv(std::span<const AlpLadder> ladders);
std::vector<AlpLadder> ParseLadderTsv(std::string_view text);

}  // namespace polyvocab

#endif  // POLYVOCAB_CAPACITY_H_
