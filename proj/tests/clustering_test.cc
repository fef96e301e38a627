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

#include "polyvocab/clustering.h"

#include <gtest/gtest.h>

#include <limits>
#include <set>

#include "polyvocab/error.h"
#include "test_util.h"

namespace polyvocab {
namespace {

std::vector<LexicalFingerprint> Points(const std::vector<std::vector<double>>& xs) {
  std::vector<LexicalFingerprint> out;
  for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({LanguageId("p" + std::to_string(i + 1)), xs[i]});
  return out;
}

double SquaredDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

// Minimum over every assignment of points to k non-empty groups of the
// within-group sum of squared distances to group means.
double ExhaustiveOptimum(const std::vector<std::vector<double>>& xs, int k) {
  const std::size_t n = xs.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> label(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      std::vector<std::vector<double>> mean(k, std::vector<double>(xs[0].size(), 0.0));
      std::vector<int> size(k, 0);
      for (std::size_t p = 0; p < n; ++p) {
        ++size[label[p]];
        for (std::size_t d = 0; d < xs[p].size(); ++d) mean[label[p]][d] += xs[p][d];
      }
      for (int c = 0; c < k; ++c) {
        if (size[c] == 0) return;
        for (double& m : mean[c]) m /= size[c];
      }
      double cost = 0;
      for (std::size_t p = 0; p < n; ++p) cost += SquaredDistance(xs[p], mean[label[p]]);
      best = std::min(best, cost);
      return;
    }
    for (int c = 0; c < k; ++c) {
      label[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

void ExpectPartition(const ClusterAssignment& a, const std::vector<LexicalFingerprint>& fps, int k) {
  ASSERT_EQ(a.clusters.size(), static_cast<std::size_t>(k));
  std::set<LanguageId> seen;
  for (const auto& c : a.clusters) {
    EXPECT_FALSE(c.empty());
    for (const auto& l : c) EXPECT_TRUE(seen.insert(l).second);
  }
  EXPECT_EQ(seen.size(), fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) EXPECT_EQ(a.ClusterOf(fps[i].language), a.labels[i]);
}

TEST(KMeansTest, FourPointExample) {
  const std::vector<std::vector<double>> xs = {{0, 0}, {0, 1}, {10, 10}, {10, 11}};
  const auto fps = Points(xs);
  const ClusterAssignment a = KMeans(fps, 2, 1);
  ExpectPartition(a, fps, 2);
  EXPECT_EQ(a.labels, std::vector<int>({0, 0, 1, 1}));
  EXPECT_NEAR(a.inertia, 1.0, 1e-12);
  EXPECT_NEAR(ExhaustiveOptimum(xs, 2), 1.0, 1e-12);
}

TEST(KMeansTest, KEqualsN) {
  const auto fps = Points({{0, 0}, {1, 5}, {3, 3}, {7, 1}});
  const ClusterAssignment a = KMeans(fps, 4, 9);
  ExpectPartition(a, fps, 4);
  EXPECT_EQ(a.inertia, 0.0);
}

TEST(KMeansTest, IdenticalPointsRepairEmptyCluster) {
  const auto fps = Points({{2, 2}, {2, 2}, {2, 2}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ClusterAssignment a = KMeans(fps, 2, seed);
    ExpectPartition(a, fps, 2);
    EXPECT_EQ(a.inertia, 0.0);
  }
}

TEST(KMeansTest, Errors) {
  const auto fps = Points({{0, 0}, {1, 1}});
  EXPECT_THROW(KMeans(fps, 3, 0), Error);
  EXPECT_THROW(KMeans(fps, 0, 0), Error);
  auto bad = fps;
  bad[1].values.push_back(1);
  EXPECT_THROW(KMeans(bad, 1, 0), Error);
}

TEST(KMeansTest, InertiaMatchesDefinitionAndNeverIncreases) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> xs(4 + rng.Below(10), std::vector<double>(3));
    for (auto& x : xs) for (double& v : x) v = 10 * rng.Uniform();
    const auto fps = Points(xs);
    const int k = 1 + static_cast<int>(rng.Below(4));
    const ClusterAssignment a = KMeans(fps, k, rng.Next());
    ExpectPartition(a, fps, k);
    double inertia = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) inertia += SquaredDistance(xs[i], a.centroids[a.labels[i]]);
    ASSERT_NEAR(inertia, a.inertia, 1e-9);
    for (std::size_t i = 1; i < a.inertia_history.size(); ++i) {
      ASSERT_LE(a.inertia_history[i], a.inertia_history[i - 1] + 1e-9);
    }
    if (xs.size() <= 8) ASSERT_GE(a.inertia, ExhaustiveOptimum(xs, k) - 1e-9);
  }
}

TEST(KMeansTest, CosineIgnoresScale) {
  const auto fps = Points({{1, 0}, {100, 1}, {0, 1}, {1, 50}});
  const ClusterAssignment a = KMeans(fps, 2, 3, 100, DistanceMetric::kCosine);
  EXPECT_EQ(a.labels[0], a.labels[1]);
  EXPECT_EQ(a.labels[2], a.labels[3]);
  EXPECT_NE(a.labels[0], a.labels[2]);
}

TEST(BestOfRestartsTest, Contracts) {
  const std::vector<std::vector<double>> xs = {{0, 0}, {0, 1}, {10, 10}, {10, 11}, {5, 5}, {20, 0}};
  const auto fps = Points(xs);
  const std::vector<std::uint64_t> one = {42};
  const ClusterAssignment single = BestOfRestarts(fps, 3, one);
  const ClusterAssignment direct = KMeans(fps, 3, 42);
  EXPECT_EQ(single.labels, direct.labels);
  EXPECT_EQ(single.inertia, direct.inertia);

  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(s);
  const ClusterAssignment best = BestOfRestarts(fps, 3, seeds);
  for (const auto s : seeds) EXPECT_LE(best.inertia, KMeans(fps, 3, s).inertia);
  EXPECT_NEAR(best.inertia, ExhaustiveOptimum(xs, 3), 1e-9);

  const std::vector<std::uint64_t> dup = {7, 7};
  EXPECT_EQ(BestOfRestarts(fps, 3, dup).seed, 7u);
  EXPECT_EQ(BestOfRestarts(fps, 3, dup).labels, KMeans(fps, 3, 7).labels);
  EXPECT_THROW(BestOfRestarts(fps, 3, std::span<const std::uint64_t>()), Error);
}

TEST(ClusterTsvTest, RoundTrip) {
  const auto fps = Points({{0, 0}, {0, 1}, {10, 10}});
  const ClusterAssignment a = KMeans(fps, 2, 5);
  const std::string tsv = FormatClusterTsv(a);
  const ClusterAssignment b = ParseClusterTsv(tsv);
  EXPECT_EQ(b.clusters, a.clusters);
  EXPECT_EQ(FormatClusterTsv(b), tsv);
  EXPECT_THROW(ParseClusterTsv("0\ten\n1\ten\n"), Error);
  EXPECT_THROW(ParseClusterTsv("x\ten\n"), Error);
}

}  // namespace
}  // namespace polyvocab
