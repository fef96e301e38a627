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

#include "polyvocab/capacity.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>

#include "polyvocab/apportion.h"
#include "polyvocab/error.h"

namespace polyvocab {

double ComputeAlp(const SentenceCorpus& corpus, const UnigramVocab& vocab) {
  if (corpus.empty()) {
    throw InvalidArgumentError("ALP of empty corpus " + corpus.language().code());
  }
  std::vector<std::int64_t> counts(vocab.size(), 0);
  std::int64_t total = 0;
  for (const auto& sentence : corpus.sentences()) {
    for (const int id : ViterbiTokenIds(vocab, sentence)) {
      ++counts[static_cast<std::size_t>(id)];
      ++total;
    }
  }
  // Sum over sentences and positions of log p(token) equals
  // sum over tokens of count * log(count / total).
  double sum = 0.0;
  const double log_total = std::log(static_cast<double>(total));
  for (const std::int64_t c : counts) {
    if (c > 0) sum += static_cast<double>(c) * (std::log(static_cast<double>(c)) - log_total);
  }
  return sum / static_cast<double>(corpus.line_count());
}

AlpLadder::AlpLadder(LanguageId language, std::vector<LadderPoint> points)
    : language_(std::move(language)), points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgumentError("empty ALP ladder for " + language_.code());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].vocab_size <= 0 || !std::isfinite(points_[i].alp) ||
        (i > 0 && points_[i].vocab_size <= points_[i - 1].vocab_size)) {
      throw InvalidArgumentError("ALP ladder for " + language_.code() +
                                 " needs increasing positive sizes and finite values");
    }
  }
}

double AlpLadder::Interpolate(std::int64_t size) const {
  if (size < min_size() || size > max_size()) {
    throw InvalidArgumentError("ALP ladder for " + language_.code() + " covers [" +
                               std::to_string(min_size()) + ", " + std::to_string(max_size()) +
                               "]; refusing to extrapolate to " + std::to_string(size));
  }
  const auto it = std::lower_bound(
      points_.begin(), points_.end(), size,
      [](const LadderPoint& p, std::int64_t s) { return p.vocab_size < s; });
  if (it->vocab_size == size) return it->alp;
  const LadderPoint& hi = *it;
  const LadderPoint& lo = *(it - 1);
  const double t = static_cast<double>(size - lo.vocab_size) /
                   static_cast<double>(hi.vocab_size - lo.vocab_size);
  return lo.alp + t * (hi.alp - lo.alp);
}

AlpLadder BuildAlpLadder(const SentenceCorpus& corpus, std::span<const std::size_t> sizes,
                         const TrainerConfig& config) {
  std::vector<UnigramVocab> vocabs;
  try {
    vocabs = TrainUnigramLadder(corpus, sizes, config);
  } catch (const Error& e) {
    throw Error(e.code(), "ALP ladder for " + corpus.language().code() + " (sizes " +
                              std::to_string(sizes.front()) + ".." +
                              std::to_string(sizes.back()) + "): " + e.what());
  }
  std::vector<LadderPoint> points;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    points.push_back({static_cast<std::int64_t>(sizes[i]), ComputeAlp(corpus, vocabs[i])});
  }
  return AlpLadder(corpus.language(), std::move(points));
}

std::int64_t CapacityAllocation::Sum() const {
  std::int64_t sum = 0;
  for (const auto& [lang, b] : budgets) sum += b;
  return sum;
}

CapacityAllocation GreedyAllocate(std::span<const AlpLadder> ladders, std::int64_t total,
                                  std::int64_t chunk, std::int64_t min_floor) {
  if (ladders.empty()) throw InvalidArgumentError("no ladders to allocate over");
  if (chunk <= 0 || min_floor <= 0) {
    throw InvalidArgumentError("chunk and floor must be positive");
  }
  const auto n = static_cast<std::int64_t>(ladders.size());
  if (total < min_floor * n) {
    throw InvalidArgumentError("total " + std::to_string(total) + " cannot give " +
                               std::to_string(n) + " languages the floor of " +
                               std::to_string(min_floor));
  }
  // Sorted by language so that index order is the tie-break order.
  std::vector<const AlpLadder*> order;
  std::set<LanguageId> seen;
  for (const auto& ladder : ladders) {
    if (!seen.insert(ladder.language()).second) {
      throw InvalidArgumentError("duplicate ladder for " + ladder.language().code());
    }
    ladder.Interpolate(min_floor);  // the floor itself must be covered
    order.push_back(&ladder);
  }
  std::sort(order.begin(), order.end(),
            [](const AlpLadder* a, const AlpLadder* b) { return a->language() < b->language(); });

  std::vector<std::int64_t> budget(order.size(), min_floor);
  std::int64_t remaining = total - min_floor * n;
  while (remaining > 0) {
    const std::int64_t grant = std::min(chunk, remaining);
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (budget[i] + grant > order[i]->max_size()) continue;
      const double gain =
          order[i]->Interpolate(budget[i] + grant) - order[i]->Interpolate(budget[i]);
      const bool better =
          best < 0 || gain > best_gain ||
          (gain == best_gain && budget[i] < budget[static_cast<std::size_t>(best)]);
      if (better) {
        best = static_cast<int>(i);
        best_gain = gain;
      }
    }
    if (best < 0) {
      throw InvalidArgumentError("ALP ladders end before the total of " + std::to_string(total) +
                                 " can be allocated; " + std::to_string(remaining) +
                                 " tokens left without extrapolating");
    }
    budget[static_cast<std::size_t>(best)] += grant;
    remaining -= grant;
  }
  CapacityAllocation out;
  out.total = total;
  for (std::size_t i = 0; i < order.size(); ++i) out.budgets.emplace(order[i]->language(), budget[i]);
  return out;
}

CapacityAllocation Rescale(const CapacityAllocation& allocation, std::int64_t new_total,
                           std::int64_t min_floor) {
  const auto n = static_cast<std::int64_t>(allocation.budgets.size());
  if (n == 0) throw InvalidArgumentError("empty allocation");
  if (min_floor <= 0) throw InvalidArgumentError("floor must be positive");
  if (new_total < min_floor * n) {
    throw InvalidArgumentError("cannot rescale to " + std::to_string(new_total) + ": " +
                               std::to_string(n) + " languages need a floor of " +
                               std::to_string(min_floor));
  }
  std::vector<LanguageId> langs;
  std::vector<double> weights;
  for (const auto& [lang, b] : allocation.budgets) {
    if (b <= 0) throw InvalidArgumentError("budget for " + lang.code() + " must be positive");
    langs.push_back(lang);
    weights.push_back(static_cast<double>(b));
  }
  // Pin languages whose proportional share falls below the floor until the
  // remaining pool is consistent.
  std::vector<bool> pinned(langs.size(), false);
  while (true) {
    double pool_weight = 0.0;
    std::int64_t pool_total = new_total;
    for (std::size_t i = 0; i < langs.size(); ++i) {
      if (pinned[i]) {
        pool_total -= min_floor;
      } else {
        pool_weight += weights[i];
      }
    }
    bool changed = false;
    for (std::size_t i = 0; i < langs.size(); ++i) {
      if (!pinned[i] && static_cast<double>(pool_total) * weights[i] / pool_weight <
                            static_cast<double>(min_floor)) {
        pinned[i] = true;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<double> pool_weights;
  std::int64_t pool_total = new_total;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    if (pinned[i]) {
      pool_total -= min_floor;
    } else {
      pool_weights.push_back(weights[i]);
    }
  }
  std::vector<std::int64_t> shares;
  if (!pool_weights.empty()) shares = LargestRemainder(pool_weights, pool_total);
  CapacityAllocation out;
  out.total = new_total;
  std::size_t k = 0;
  for (std::size_t i = 0; i < langs.size(); ++i) {
    out.budgets.emplace(langs[i], pinned[i] ? min_floor : shares[k++]);
  }
  return out;
}

std::map<int, std::int64_t> ClusterCapacity(const CapacityAllocation& allocation,
                                            const ClusterAssignment& clusters) {
  std::map<LanguageId, int> cluster_of;
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    for (const auto& lang : clusters.clusters[c]) {
      if (!cluster_of.emplace(lang, static_cast<int>(c)).second) {
        throw InvalidArgumentError(lang.code() + " appears in more than one cluster");
      }
    }
  }
  std::map<int, std::int64_t> out;
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) out[static_cast<int>(c)] = 0;
  for (const auto& [lang, budget] : allocation.budgets) {
    const auto it = cluster_of.find(lang);
    if (it == cluster_of.end()) {
      throw InvalidArgumentError(lang.code() + " has a budget but no cluster");
    }
    out[it->second] += budget;
  }
  return out;
}

std::string FormatAllocationTsv(const CapacityAllocation& allocation) {
  std::string out;
  for (const auto& [lang, budget] : allocation.budgets) {
    out += lang.code() + '\t' + std::to_string(budget) + '\n';
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> SplitTsv(std::string_view text, std::size_t fields,
                                               std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    std::vector<std::string> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      row.emplace_back(line.substr(pos, tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (row.size() != fields) {
      throw DataLossError(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                          std::to_string(fields) + " fields");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::int64_t ParseInt(const std::string& s, std::string_view what) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw DataLossError(std::string(what) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

CapacityAllocation ParseAllocationTsv(std::string_view text) {
  CapacityAllocation out;
  for (auto& row : SplitTsv(text, 2, "allocation")) {
    const std::int64_t budget = ParseInt(row[1], "allocation");
    if (!out.budgets.emplace(LanguageId(row[0]), budget).second) {
      throw DataLossError("allocation: duplicate language " + row[0]);
    }
    out.total += budget;
  }
  return out;
}

std::string FormatLadderTsv(std::span<const AlpLadder> ladders) {
  std::string out;
  for (const auto& ladder : ladders) {
    for (const auto& p : ladder.points()) {
      out += ladder.language().code() + '\t' + std::to_string(p.vocab_size) + '\t' +
             FormatLogProb(p.alp) + '\n';
    }
  }
  return out;
}

std::vector<AlpLadder> ParseLadderTsv(std::string_view text) {
  std::map<LanguageId, std::vector<LadderPoint>> points;
  for (auto& row : SplitTsv(text, 3, "ladder")) {
    char* end = nullptr;
    const double alp = std::strtod(row[2].c_str(), &end);
    if (end != row[2].c_str() + row[2].size()) throw DataLossError("ladder: bad ALP " + row[2]);
    points[LanguageId(row[0])].push_back({ParseInt(row[1], "ladder"), alp});
  }
  std::vector<AlpLadder> out;
  for (auto& [lang, p] : points) out.emplace_back(lang, std::move(p));
  return out;
}

}  // namespace polyvocab
