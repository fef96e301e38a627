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

#ifndef POLYVOCAB_ANALYSIS_H_
#define POLYVOCAB_ANALYSIS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polyvocab/corpus.h"
#include "polyvocab/unigram_model.h"

namespace polyvocab {

struct TokenizationStats {
  LanguageId language;
  double avg_tokens_per_sentence = 0.0;
  std::int64_t total_tokens = 0;
  std::int64_t total_sentences = 0;
};

TokenizationStats Fertility(const UnigramVocab& vocab, const SentenceCorpus& corpus);

// 100 * (avg_b - avg_a) / avg_a, in percent.
double RelativeLengthDiff(double avg_a, double avg_b);
double RelativeLengthDiff(const UnigramVocab& vocab_a, const UnigramVocab& vocab_b,
                          const SentenceCorpus& corpus);

struct CoveragePoint {
  std::int64_t rank = 0;
  double cumulative_fraction = 0.0;
};

// Cumulative share of token occurrences covered by the top-ranked tokens.
class CoverageCurve {
 public:
  // Ranks must start at 1 and increase by one, fractions must be
  // non-decreasing within [0, 1] and end at 1.
  explicit CoverageCurve(std::vector<CoveragePoint> points);

  const std::vector<CoveragePoint>& points() const { return points_; }

 private:
  std::vector<CoveragePoint> points_;
};

// Ranks token types by descending occurrence count (ties by token).
CoverageCurve CoverageCurveFromCounts(const FrequencyTable& counts);
CoverageCurve ComputeCoverageCurve(const UnigramVocab& vocab, const SentenceCorpus& corpus);

// Smallest rank whose cumulative fraction reaches |p|, p in (0, 1].
std::int64_t UtilizationAt(const CoverageCurve& curve, double p);

// The unknown token, present in every vocabulary, is left out of all counts.
struct OverlapReport {
  std::vector<int> cluster_ids;
  std::vector<std::int64_t> sizes;
  // Share of each cluster's tokens found in no other cluster.
  std::vector<double> unique_fraction;
  // Symmetric; the diagonal holds each vocabulary's size.
  std::vector<std::vector<std::int64_t>> intersections;
};

OverlapReport ComputeOverlapReport(const std::map<int, UnigramVocab>& cluster_vocabs);

// fertility.csv: language,avg_tokens_per_sentence,total_tokens,total_sentences
std::string FormatFertilityCsv(std::span<const TokenizationStats> stats);
// coverage.csv: rank,cumulative_fraction
std::string FormatCoverageCsv(const CoverageCurve& curve);
// overlap.csv: cluster_a,cluster_b,intersection (a < b), then
// cluster,size,unique_fraction rows in a second table separated by a blank line.
std::string FormatOverlapCsv(const OverlapReport& report);

}  // namespace polyvocab

#endif  // POLYVOCAB_ANALYSIS_H_
