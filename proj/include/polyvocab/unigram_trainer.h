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

#ifndef POLYVOCAB_UNIGRAM_TRAINER_H_
#define POLYVOCAB_UNIGRAM_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polyvocab/corpus.h"
#include "polyvocab/unigram_model.h"

namespace polyvocab {

struct TrainerConfig {
  int max_token_len = 16;            // code points per seed candidate
  std::int64_t min_count = 2;        // occurrences required of a seed candidate
  std::size_t max_seed_size = 1'000'000;
  double character_coverage = 0.9995;
  int em_steps_per_round = 2;
  double keep_fraction = 0.8;

  void Validate() const;
};

// Expected counts below this floor are raised to it in the M-step so every
// piece keeps a finite log-probability.
inline constexpr double kExpectedCountFloor = 1e-13;

// Seed vocabulary: required characters (the most frequent characters up to
// |character_coverage| of the character mass) plus every substring of 2 to
// max_token_len characters seen at least min_count times, ranked by
// count * length and truncated so the vocabulary holds at most
// max_seed_size pieces beyond the protected set. Candidates never contain an
// uncovered character, and the word-boundary symbol may only lead a
// candidate. Initial probabilities are the normalized scores.
UnigramVocab MakeSeedVocab(const SentenceCorpus& corpus, const TrainerConfig& config = {});

// Posterior occurrence counts of every piece summed over the segmentation
// lattices of the corpus. |log_likelihood| receives the marginal corpus
// log-likelihood (sum over sentences of the log of all paths' probability).
std::vector<double> ExpectedCounts(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                                   double* log_likelihood = nullptr);

double CorpusLogLikelihood(const SentenceCorpus& corpus, const UnigramVocab& vocab);

// One forward-backward EM iteration. The token set is unchanged.
UnigramVocab EmStep(const SentenceCorpus& corpus, const UnigramVocab& vocab);

// Estimated drop in corpus log-likelihood if each piece were removed and its
// occurrences re-segmented by the best remaining alternative. Protected pieces
// report +infinity.
std::vector<double> PruningLosses(const SentenceCorpus& corpus, const UnigramVocab& vocab);

// Keeps ceil(keep_fraction * removable) of the removable pieces with the
// largest losses plus the protected set, then renormalizes.
UnigramVocab Prune(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                   double keep_fraction);

// Same ranking, keeping at most |max_size| pieces in total (never fewer than
// the protected set).
UnigramVocab PruneToSize(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                         std::size_t max_size);

// Seed, then rounds of EM and pruning until the vocabulary holds
// |target_size| pieces. A seed smaller than the target is returned after EM
// alone.
UnigramVocab TrainUnigram(const SentenceCorpus& corpus, std::size_t target_size,
                          const TrainerConfig& config = {});

// Trains along a single pruning trajectory and snapshots the vocabulary at
// each size. |sizes| must be strictly increasing; result is in the same order.
std::vector<UnigramVocab> TrainUnigramLadder(const SentenceCorpus& corpus,
                                             std::span<const std::size_t> sizes,
                                             const TrainerConfig& config = {});

}  // namespace polyvocab

#endif  // POLYVOCAB_UNIGRAM_TRAINER_H_
