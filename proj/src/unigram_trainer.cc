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

#include "polyvocab/unigram_trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>

#include "lattice.h"
#include "polyvocab/error.h"
#include "polyvocab/normalizer.h"
#include "polyvocab/utf8.h"

namespace polyvocab {
namespace {

using WeightedSentences = std::vector<std::pair<std::string_view, double>>;

// Duplicate sentences are processed once; sorting makes every accumulation
// independent of sentence order.
WeightedSentences Dedupe(const SentenceCorpus& corpus) {
  std::map<std::string_view, double> counts;
  for (const auto& s : corpus.sentences()) counts[s] += 1.0;
  return {counts.begin(), counts.end()};
}

UnigramVocab Renormalized(std::vector<Piece> pieces) {
  double log_z = -std::numeric_limits<double>::infinity();
  for (const Piece& p : pieces) log_z = internal::LogAdd(log_z, p.log_prob);
  for (Piece& p : pieces) p.log_prob = std::min(0.0, p.log_prob - log_z);
  return UnigramVocab(std::move(pieces));
}

// Removable ids ordered by descending loss, then ascending token.
std::vector<int> RankRemovable(const UnigramVocab& vocab, const std::vector<double>& losses) {
  std::vector<int> ids;
  for (int id = 0; id < static_cast<int>(vocab.size()); ++id) {
    if (!vocab.IsProtected(id)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const double la = losses[static_cast<std::size_t>(a)];
    const double lb = losses[static_cast<std::size_t>(b)];
    if (la != lb) return la > lb;
    return vocab.piece(a).token < vocab.piece(b).token;
  });
  return ids;
}

UnigramVocab KeepTopRemovable(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                              std::size_t keep) {
  const std::vector<int> ranked = RankRemovable(vocab, PruningLosses(corpus, vocab));
  if (keep >= ranked.size()) return vocab;
  std::vector<bool> kept(vocab.size(), false);
  for (int id = 0; id < static_cast<int>(vocab.size()); ++id) {
    kept[static_cast<std::size_t>(id)] = vocab.IsProtected(id);
  }
  for (std::size_t i = 0; i < keep; ++i) kept[static_cast<std::size_t>(ranked[i])] = true;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (kept[i]) pieces.push_back(vocab.pieces()[i]);
  }
  return Renormalized(std::move(pieces));
}

UnigramVocab ContinueTraining(const SentenceCorpus& corpus, UnigramVocab vocab,
                              std::size_t target_size, const TrainerConfig& config) {
  while (true) {
    for (int step = 0; step < config.em_steps_per_round; ++step) {
      vocab = EmStep(corpus, vocab);
    }
    if (vocab.size() <= target_size) return vocab;
    const auto shrunk =
        static_cast<std::size_t>(std::floor(static_cast<double>(vocab.size()) * config.keep_fraction));
    const std::size_t next = std::max(target_size, std::min(vocab.size() - 1, shrunk));
    vocab = PruneToSize(corpus, vocab, next);
  }
}

void CheckTarget(const UnigramVocab& seed, std::size_t target_size) {
  if (target_size < seed.protected_count()) {
    throw InvalidArgumentError(
        "target vocabulary size " + std::to_string(target_size) +
        " is smaller than the protected set (" + std::to_string(seed.protected_count()) +
        " required characters and the unknown token)");
  }
}

}  // namespace

void TrainerConfig::Validate() const {
  if (max_token_len < 1) throw InvalidArgumentError("max_token_len must be >= 1");
  if (min_count < 1) throw InvalidArgumentError("min_count must be >= 1");
  if (max_seed_size < 1) throw InvalidArgumentError("max_seed_size must be >= 1");
  if (!(character_coverage > 0.0 && character_coverage <= 1.0)) {
    throw InvalidArgumentError("character_coverage must be in (0, 1]");
  }
  if (em_steps_per_round < 1) throw InvalidArgumentError("em_steps_per_round must be >= 1");
  if (!(keep_fraction > 0.0 && keep_fraction < 1.0)) {
    throw InvalidArgumentError("keep_fraction must be in (0, 1)");
  }
}

UnigramVocab MakeSeedVocab(const SentenceCorpus& corpus, const TrainerConfig& config) {
  config.Validate();
  if (corpus.empty()) {
    throw InvalidArgumentError("cannot build a seed vocabulary from empty corpus " +
                               corpus.language().code());
  }
  const WeightedSentences sentences = Dedupe(corpus);

  std::map<std::string_view, double> char_counts;
  double char_total = 0.0;
  for (const auto& [s, w] : sentences) {
    for (const std::string_view c : utf8::SplitChars(s)) {
      char_counts[c] += w;
      char_total += w;
    }
  }
  std::vector<std::pair<std::string_view, double>> chars(char_counts.begin(),
                                                         char_counts.end());
  std::stable_sort(chars.begin(), chars.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::map<std::string_view, double> required;
  double covered = 0.0;
  double uncovered = 0.0;
  for (const auto& [c, count] : chars) {
    if (covered < config.character_coverage * char_total) {
      required.emplace(c, count);
      covered += count;
    } else {
      uncovered += count;
    }
  }

  std::unordered_map<std::string_view, double> substrings;
  for (const auto& [s, w] : sentences) {
    const std::vector<std::size_t> bounds = utf8::CharBoundaries(s);
    const std::size_t n = bounds.size() - 1;
    for (std::size_t begin = 0; begin < n; ++begin) {
      const std::size_t limit =
          std::min(n, begin + static_cast<std::size_t>(config.max_token_len));
      for (std::size_t end = begin + 1; end <= limit; ++end) {
        const std::string_view last = s.substr(bounds[end - 1], bounds[end] - bounds[end - 1]);
        if (!required.contains(last)) break;
        if (end - begin >= 2 && last == kWordBoundary) break;
        if (end - begin >= 2) {
          substrings[s.substr(bounds[begin], bounds[end] - bounds[begin])] += w;
        }
      }
    }
  }

  struct Candidate {
    std::string_view token;
    double score;
  };
  std::vector<Candidate> candidates;
  for (const auto& [token, count] : substrings) {
    if (count >= static_cast<double>(config.min_count)) {
      candidates.push_back({token, count * static_cast<double>(utf8::CountChars(token))});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.token < b.token;
  });
  const std::size_t protected_size = required.size() + 1;
  if (candidates.size() > config.max_seed_size) candidates.resize(config.max_seed_size);

  std::vector<Piece> pieces;
  pieces.reserve(protected_size + candidates.size());
  pieces.push_back({std::string(UnigramVocab::kUnkToken),
                    std::log(std::max(uncovered, kExpectedCountFloor))});
  for (const auto& [c, count] : required) pieces.push_back({std::string(c), std::log(count)});
  for (const auto& c : candidates) pieces.push_back({std::string(c.token), std::log(c.score)});
  return Renormalized(std::move(pieces));
}

std::vector<double> ExpectedCounts(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                                   double* log_likelihood) {
  std::vector<double> expected(vocab.size(), 0.0);
  double total = 0.0;
  for (const auto& [s, w] : Dedupe(corpus)) {
    total += w * internal::Lattice(vocab, s).AccumulateExpectedCounts(w, &expected);
  }
  if (log_likelihood != nullptr) *log_likelihood = total;
  return expected;
}

double CorpusLogLikelihood(const SentenceCorpus& corpus, const UnigramVocab& vocab) {
  double total = 0.0;
  for (const auto& [s, w] : Dedupe(corpus)) {
    total += w * internal::Lattice(vocab, s).LogPartition();
  }
  return total;
}

UnigramVocab EmStep(const SentenceCorpus& corpus, const UnigramVocab& vocab) {
  const std::vector<double> expected = ExpectedCounts(corpus, vocab);
  double sum = 0.0;
  for (const double c : expected) sum += std::max(c, kExpectedCountFloor);
  const double log_sum = std::log(sum);
  std::vector<Piece> pieces = vocab.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    pieces[i].log_prob = std::min(0.0, std::log(std::max(expected[i], kExpectedCountFloor)) - log_sum);
  }
  return UnigramVocab(std::move(pieces));
}

std::vector<double> PruningLosses(const SentenceCorpus& corpus, const UnigramVocab& vocab) {
  const std::vector<double> freq = ExpectedCounts(corpus, vocab);
  const double total = std::accumulate(freq.begin(), freq.end(), 0.0);
  std::vector<double> losses(vocab.size(), std::numeric_limits<double>::infinity());
  for (int id = 0; id < static_cast<int>(vocab.size()); ++id) {
    if (vocab.IsProtected(id)) continue;
    const double f = freq[static_cast<std::size_t>(id)];
    if (!(f > 0.0) || !(total > 0.0)) {
      losses[static_cast<std::size_t>(id)] = 0.0;
      continue;
    }
    // Re-segment the piece itself without it; its occurrences move to the
    // alternative pieces and the total count grows by the extra tokens.
    const auto alternative =
        internal::Lattice(vocab, vocab.piece(id).token, id).Viterbi(nullptr);
    const double log_total = std::log(total);
    const double log_total_alt =
        std::log(total + f * (static_cast<double>(alternative.size()) - 1.0));
    double log_prob_alt = 0.0;
    for (const auto& step : alternative) {
      log_prob_alt += std::log(freq[static_cast<std::size_t>(step.edge.id)] + f) - log_total_alt;
    }
    losses[static_cast<std::size_t>(id)] = f * (std::log(f) - log_total - log_prob_alt);
  }
  return losses;
}

UnigramVocab Prune(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                   double keep_fraction) {
  if (!(keep_fraction > 0.0 && keep_fraction < 1.0)) {
    throw InvalidArgumentError("keep_fraction must be in (0, 1)");
  }
  const double removable = static_cast<double>(vocab.size() - vocab.protected_count());
  const auto keep = static_cast<std::size_t>(std::ceil(keep_fraction * removable - 1e-9));
  return KeepTopRemovable(corpus, vocab, keep);
}

UnigramVocab PruneToSize(const SentenceCorpus& corpus, const UnigramVocab& vocab,
                         std::size_t max_size) {
  const std::size_t keep =
      max_size > vocab.protected_count() ? max_size - vocab.protected_count() : 0;
  return KeepTopRemovable(corpus, vocab, keep);
}

UnigramVocab TrainUnigram(const SentenceCorpus& corpus, std::size_t target_size,
                          const TrainerConfig& config) {
  UnigramVocab seed = MakeSeedVocab(corpus, config);
  CheckTarget(seed, target_size);
  return ContinueTraining(corpus, std::move(seed), target_size, config);
}

std::vector<UnigramVocab> TrainUnigramLadder(const SentenceCorpus& corpus,
                                             std::span<const std::size_t> sizes,
                                             const TrainerConfig& config) {
  if (sizes.empty()) throw InvalidArgumentError("no ladder sizes given");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw InvalidArgumentError("ladder sizes must be strictly increasing");
    }
  }
  UnigramVocab vocab = MakeSeedVocab(corpus, config);
  CheckTarget(vocab, sizes.front());
  std::vector<UnigramVocab> out(sizes.size(), vocab);
  for (std::size_t i = sizes.size(); i-- > 0;) {
    vocab = ContinueTraining(corpus, std::move(vocab), sizes[i], config);
    out[i] = vocab;
  }
  return out;
}

}  // namespace polyvocab
