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

#include "polyvocab/analysis.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "polyvocab/error.h"

namespace polyvocab {
namespace {

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

TokenizationStats Fertility(const UnigramVocab& vocab, const SentenceCorpus& corpus) {
  TokenizationStats stats{corpus.language()};
  for (const auto& sentence : corpus.sentences()) {
    stats.total_tokens += static_cast<std::int64_t>(ViterbiTokenIds(vocab, sentence).size());
  }
  stats.total_sentences = corpus.line_count();
  if (stats.total_sentences > 0) {
    stats.avg_tokens_per_sentence =
        static_cast<double>(stats.total_tokens) / static_cast<double>(stats.total_sentences);
  }
  return stats;
}

double RelativeLengthDiff(double avg_a, double avg_b) {
  if (avg_a == 0.0) throw InvalidArgumentError("baseline average token count is zero");
  return 100.0 * (avg_b - avg_a) / avg_a;
}

double RelativeLengthDiff(const UnigramVocab& vocab_a, const UnigramVocab& vocab_b,
                          const SentenceCorpus& corpus) {
  return RelativeLengthDiff(Fertility(vocab_a, corpus).avg_tokens_per_sentence,
                            Fertility(vocab_b, corpus).avg_tokens_per_sentence);
}

CoverageCurve::CoverageCurve(std::vector<CoveragePoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgumentError("empty coverage curve");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.rank != static_cast<std::int64_t>(i) + 1 || p.cumulative_fraction < 0.0 ||
        p.cumulative_fraction > 1.0 ||
        (i > 0 && p.cumulative_fraction < points_[i - 1].cumulative_fraction)) {
      throw InvalidArgumentError("malformed coverage curve at rank " + std::to_string(p.rank));
    }
  }
  if (points_.back().cumulative_fraction != 1.0) {
    throw InvalidArgumentError("coverage curve does not reach 1");
  }
}

CoverageCurve CoverageCurveFromCounts(const FrequencyTable& counts) {
  if (counts.total() == 0) throw InvalidArgumentError("coverage of an empty token stream");
  std::vector<CoveragePoint> points;
  points.reserve(counts.size());
  std::int64_t running = 0;
  const auto total = static_cast<double>(counts.total());
  for (const auto& [token, count] : counts.SortedEntries()) {
    running += count;
    points.push_back({static_cast<std::int64_t>(points.size()) + 1,
                      static_cast<double>(running) / total});
  }
  return CoverageCurve(std::move(points));
}

CoverageCurve ComputeCoverageCurve(const UnigramVocab& vocab, const SentenceCorpus& corpus) {
  if (corpus.empty()) {
    throw InvalidArgumentError("coverage of empty corpus " + corpus.language().code());
  }
  return CoverageCurveFromCounts(CountTokenFrequencies(corpus, vocab));
}

std::int64_t UtilizationAt(const CoverageCurve& curve, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgumentError("coverage level must be in (0, 1]");
  const auto& points = curve.points();
  const auto it = std::lower_bound(
      points.begin(), points.end(), p,
      [](const CoveragePoint& point, double level) { return point.cumulative_fraction < level; });
  return it == points.end() ? points.back().rank : it->rank;
}

OverlapReport ComputeOverlapReport(const std::map<int, UnigramVocab>& cluster_vocabs) {
  if (cluster_vocabs.size() < 2) {
    throw InvalidArgumentError("overlap needs at least two vocabularies");
  }
  OverlapReport report;
  std::vector<std::set<std::string_view>> sets;
  for (const auto& [id, vocab] : cluster_vocabs) {
    report.cluster_ids.push_back(id);
    std::set<std::string_view> tokens;
    for (const auto& p : vocab.pieces()) {
      if (p.token != UnigramVocab::kUnkToken) tokens.insert(p.token);
    }
    report.sizes.push_back(static_cast<std::int64_t>(tokens.size()));
    sets.push_back(std::move(tokens));
  }
  const std::size_t n = sets.size();
  report.intersections.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      std::int64_t shared = 0;
      for (const auto& t : sets[a]) shared += sets[b].contains(t) ? 1 : 0;
      report.intersections[a][b] = report.intersections[b][a] = shared;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    std::int64_t unique = 0;
    for (const auto& t : sets[a]) {
      bool elsewhere = false;
      for (std::size_t b = 0; b < n && !elsewhere; ++b) elsewhere = b != a && sets[b].contains(t);
      unique += elsewhere ? 0 : 1;
    }
    report.unique_fraction.push_back(
        sets[a].empty() ? 0.0 : static_cast<double>(unique) / static_cast<double>(sets[a].size()));
  }
  return report;
}

std::string FormatFertilityCsv(std::span<const TokenizationStats> stats) {
  std::string out = "language,avg_tokens_per_sentence,total_tokens,total_sentences\n";
  for (const auto& s : stats) {
    out += s.language.code() + ',' + FormatDouble(s.avg_tokens_per_sentence) + ',' +
           std::to_string(s.total_tokens) + ',' + std::to_string(s.total_sentences) + '\n';
  }
  return out;
}

std::string FormatCoverageCsv(const CoverageCurve& curve) {
  std::string out = "rank,cumulative_fraction\n";
  for (const auto& p : curve.points()) {
    out += std::to_string(p.rank) + ',' + FormatDouble(p.cumulative_fraction) + '\n';
  }
  return out;
}

std::string FormatOverlapCsv(const OverlapReport& report) {
  std::string out = "cluster_a,cluster_b,intersection\n";
  const std::size_t n = report.cluster_ids.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      out += std::to_string(report.cluster_ids[a]) + ',' + std::to_string(report.cluster_ids[b]) +
             ',' + std::to_string(report.intersections[a][b]) + '\n';
    }
  }
  out += "\ncluster,size,unique_fraction\n";
  for (std::size_t a = 0; a < n; ++a) {
    out += std::to_string(report.cluster_ids[a]) + ',' + std::to_string(report.sizes[a]) + ',' +
           FormatDouble(report.unique_fraction[a]) + '\n';
  }
  return out;
}

}  // namespace polyvocab
