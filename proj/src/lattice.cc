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

#include "lattice.h"

#include <cmath>
#include <limits>

#include "polyvocab/utf8.h"

namespace polyvocab::internal {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool Tied(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

double LogAdd(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

Lattice::Lattice(const UnigramVocab& vocab, std::string_view text, int excluded_id)
    : boundaries_(utf8::CharBoundaries(text)) {
  const int n = num_chars();
  // Character position of each byte boundary, -1 inside a sequence.
  std::vector<int> pos_of_byte(text.size() + 1, -1);
  for (int p = 0; p <= n; ++p) pos_of_byte[boundaries_[static_cast<std::size_t>(p)]] = p;

  starts_.reserve(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p < n; ++p) {
    starts_.push_back(edges_.size());
    bool has_single_char = false;
    vocab.ForEachPrefixMatch(
        text, boundaries_[static_cast<std::size_t>(p)], [&](int id, std::size_t end_byte) {
          const int end = pos_of_byte[end_byte];
          if (end < 0 || id == excluded_id) return;
          has_single_char |= end == p + 1;
          edges_.push_back({end, id, vocab.piece(id).log_prob});
        });
    if (!has_single_char) {
      edges_.push_back({p + 1, vocab.unk_id(), vocab.piece(vocab.unk_id()).log_prob});
    }
  }
  starts_.push_back(edges_.size());
}

std::vector<Lattice::Step> Lattice::Viterbi(double* score) const {
  const int n = num_chars();
  struct Best {
    double score = 0.0;
    int tokens = 0;
    int next = -1;  // index into edges_
  };
  // Decoding runs right to left so that the leftmost-longest preference can
  // be applied to the first token of each suffix.
  std::vector<Best> best(static_cast<std::size_t>(n) + 1);
  for (int p = n - 1; p >= 0; --p) {
    Best& cur = best[static_cast<std::size_t>(p)];
    cur.score = kNegInf;
    for (std::size_t e = starts_[static_cast<std::size_t>(p)];
         e < starts_[static_cast<std::size_t>(p) + 1]; ++e) {
      const LatticeEdge& edge = edges_[e];
      const Best& tail = best[static_cast<std::size_t>(edge.end)];
      const double s = edge.log_prob + tail.score;
      const int tokens = tail.tokens + 1;
      bool better;
      if (cur.next < 0) {
        better = true;
      } else if (!Tied(s, cur.score)) {
        better = s > cur.score;
      } else if (tokens != cur.tokens) {
        better = tokens < cur.tokens;
      } else {
        better = edge.end > edges_[static_cast<std::size_t>(cur.next)].end;
      }
      if (better) cur = {s, tokens, static_cast<int>(e)};
    }
  }
  std::vector<Step> path;
  for (int p = 0; p < n;) {
    const LatticeEdge& edge = edges_[static_cast<std::size_t>(best[static_cast<std::size_t>(p)].next)];
    path.push_back({p, edge});
    p = edge.end;
  }
  if (score != nullptr) *score = n == 0 ? 0.0 : best[0].score;
  return path;
}

double Lattice::LogPartition() const {
  const int n = num_chars();
  std::vector<double> beta(static_cast<std::size_t>(n) + 1, kNegInf);
  beta[static_cast<std::size_t>(n)] = 0.0;
  for (int p = n - 1; p >= 0; --p) {
    double acc = kNegInf;
    for (const LatticeEdge& edge : EdgesFrom(p)) {
      acc = LogAdd(acc, edge.log_prob + beta[static_cast<std::size_t>(edge.end)]);
    }
    beta[static_cast<std::size_t>(p)] = acc;
  }
  return beta[0];
}

double Lattice::AccumulateExpectedCounts(double weight,
                                         std::vector<double>* expected) const {
  const int n = num_chars();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> alpha(un + 1, kNegInf);
  std::vector<double> beta(un + 1, kNegInf);
  alpha[0] = 0.0;
  for (int p = 0; p < n; ++p) {
    const double a = alpha[static_cast<std::size_t>(p)];
    if (a == kNegInf) continue;
    for (const LatticeEdge& edge : EdgesFrom(p)) {
      double& target = alpha[static_cast<std::size_t>(edge.end)];
      target = LogAdd(target, a + edge.log_prob);
    }
  }
  beta[un] = 0.0;
  for (int p = n - 1; p >= 0; --p) {
    double acc = kNegInf;
    for (const LatticeEdge& edge : EdgesFrom(p)) {
      acc = LogAdd(acc, edge.log_prob + beta[static_cast<std::size_t>(edge.end)]);
    }
    beta[static_cast<std::size_t>(p)] = acc;
  }
  const double log_z = beta[0];
  for (int p = 0; p < n; ++p) {
    const double a = alpha[static_cast<std::size_t>(p)];
    if (a == kNegInf) continue;
    for (const LatticeEdge& edge : EdgesFrom(p)) {
      const double posterior =
          std::exp(a + edge.log_prob + beta[static_cast<std::size_t>(edge.end)] - log_z);
      (*expected)[static_cast<std::size_t>(edge.id)] += weight * posterior;
    }
  }
  return log_z;
}

}  // namespace polyvocab::internal
