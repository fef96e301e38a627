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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "polyvocab/error.h"
#include "test_util.h"

namespace polyvocab {
namespace {

using testing::MakeVocab;
using testing::Verbatim;

// Eq. value by hand: p(a) = 2/3, p(b) = 1/3 over [a,b] and [a].
constexpr double kTwoSentenceAlp = -0.9547712524422193;

TEST(AlpTest, HandComputedFixture) {
  const double hand = 0.5 * ((std::log(2.0 / 3) + std::log(1.0 / 3)) + std::log(2.0 / 3));
  EXPECT_NEAR(hand, kTwoSentenceAlp, 1e-15);
  const UnigramVocab v = MakeVocab({{"a", 0.5}, {"b", 0.5}});
  EXPECT_NEAR(ComputeAlp(Verbatim({"ab", "a"}), v), kTwoSentenceAlp, 1e-12);
}

TEST(AlpTest, SingleTokenIsZero) {
  const UnigramVocab v = MakeVocab({{"ab", 0.9}, {"a", 0.05}, {"b", 0.05}});
  EXPECT_NEAR(ComputeAlp(Verbatim({"ab", "ab", "ab"}), v), 0.0, 1e-15);
  EXPECT_THROW(ComputeAlp(Verbatim({}), v), Error);
}

TEST(AlpTest, DuplicationAndPermutationInvariant) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const UnigramVocab v = testing::RandomVocab(rng, "abc", 9);
    std::vector<std::string> s;
    for (int i = 0; i < 6; ++i) s.push_back(testing::RandomString(rng, "abcd", 8) + "a");
    const double base = ComputeAlp(Verbatim(s), v);
    std::vector<std::string> doubled = s;
    doubled.insert(doubled.end(), s.begin(), s.end());
    ASSERT_NEAR(ComputeAlp(Verbatim(doubled), v), base, 1e-9);
    std::reverse(s.begin(), s.end());
    ASSERT_NEAR(ComputeAlp(Verbatim(s), v), base, 1e-9);
  }
}

TEST(AlpLadderTest, InterpolationAndRange) {
  const AlpLadder l(LanguageId("x"), {{100, -10.0}, {200, -6.0}, {400, -5.0}});
  EXPECT_DOUBLE_EQ(l.Interpolate(100), -10.0);
  EXPECT_DOUBLE_EQ(l.Interpolate(150), -8.0);
  EXPECT_DOUBLE_EQ(l.Interpolate(300), -5.5);
  EXPECT_THROW(l.Interpolate(99), Error);
  EXPECT_THROW(l.Interpolate(401), Error);
  EXPECT_THROW(AlpLadder(LanguageId("x"), {{200, -1.0}, {100, -2.0}}), Error);
  EXPECT_THROW(AlpLadder(LanguageId("x"), {}), Error);
}

TEST(BuildAlpLadderTest, Examples) {
  const SentenceCorpus text = SentenceCorpus::FromRawLines(
      LanguageId("x"), {"the cat sat on the mat", "a hat and a cat", "mats and hats sat"});
  const std::vector<std::size_t> one = {30};
  EXPECT_EQ(BuildAlpLadder(text, one).points().size(), 1u);

  const SentenceCorpus flat = Verbatim({"aaaa", "aaaaaa", "aa"});
  TrainerConfig chars;
  chars.max_token_len = 1;
  const std::vector<std::size_t> sizes = {2, 3, 5};
  const AlpLadder sat = BuildAlpLadder(flat, sizes, chars);
  for (const auto& p : sat.points()) EXPECT_DOUBLE_EQ(p.alp, sat.points()[0].alp);
}

TEST(BuildAlpLadderTest, WholeWordsBeatCharacters) {
  std::vector<std::string> words;
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    std::string w;
    for (int j = 0; j < 6; ++j) w += static_cast<char>('a' + rng.Below(10));
    words.push_back(w);
  }
  std::vector<std::string> lines;
  for (int r = 0; r < 10; ++r) {
    for (std::size_t i = 0; i + 3 <= words.size(); i += 3) {
      lines.push_back(words[i] + " " + words[i + 1] + " " + words[i + 2]);
    }
  }
  const SentenceCorpus c = SentenceCorpus::FromRawLines(LanguageId("x"), lines);
  const std::size_t protected_size = MakeSeedVocab(c).protected_count();
  const std::vector<std::size_t> sizes = {protected_size, protected_size + 200};
  const AlpLadder l = BuildAlpLadder(c, sizes);
  EXPECT_GE(l.points()[1].alp, l.points()[0].alp);
}

// Ladder with the given per-chunk gains starting at |floor|.
AlpLadder GainLadder(const std::string& lang, std::int64_t floor, std::int64_t chunk,
                     const std::vector<double>& gains) {
  std::vector<LadderPoint> pts{{floor, -100.0}};
  for (double g : gains) pts.push_back({pts.back().vocab_size + chunk, pts.back().alp + g});
  return AlpLadder(LanguageId(lang), pts);
}

TEST(GreedyAllocateTest, SpecExample) {
  const std::vector<AlpLadder> ladders = {GainLadder("A", 2000, 1000, {2.0, 0.5, 0.1}),
                                          GainLadder("B", 2000, 1000, {1.0, 0.9, 0.1})};
  const CapacityAllocation a = GreedyAllocate(ladders, 7000, 1000, 2000);
  EXPECT_EQ(a.budgets.at(LanguageId("A")), 3000);
  EXPECT_EQ(a.budgets.at(LanguageId("B")), 4000);
  EXPECT_EQ(a.Sum(), 7000);
}

TEST(GreedyAllocateTest, IdenticalLaddersSplitEvenly) {
  std::vector<AlpLadder> ladders;
  for (const char* l : {"A", "B", "C"}) ladders.push_back(GainLadder(l, 2000, 1000, {1, 1, 1, 1}));
  const CapacityAllocation a = GreedyAllocate(ladders, 12000, 1000, 2000);
  for (const auto& [l, b] : a.budgets) EXPECT_EQ(b, 4000);
}

TEST(GreedyAllocateTest, FloorOnlyAndErrors) {
  const std::vector<AlpLadder> ladders = {GainLadder("A", 2000, 1000, {1.0}),
                                          GainLadder("B", 2000, 1000, {1.0})};
  const CapacityAllocation a = GreedyAllocate(ladders, 4000, 1000, 2000);
  EXPECT_EQ(a.budgets.at(LanguageId("A")), 2000);
  EXPECT_EQ(a.budgets.at(LanguageId("B")), 2000);
  EXPECT_THROW(GreedyAllocate(ladders, 3999, 1000, 2000), Error);  // infeasible
  EXPECT_THROW(GreedyAllocate(ladders, 9000, 1000, 2000), Error);  // ladders too short
  EXPECT_THROW(GreedyAllocate(ladders, 5000, 1000, 1000), Error);  // floor below ladder
}

TEST(GreedyAllocateTest, PartialLastChunk) {
  const std::vector<AlpLadder> ladders = {GainLadder("A", 100, 100, {5, 4, 3}),
                                          GainLadder("B", 100, 100, {4.5, 1, 1})};
  const CapacityAllocation a = GreedyAllocate(ladders, 450, 100, 100);
  EXPECT_EQ(a.Sum(), 450);
  EXPECT_EQ(a.budgets.at(LanguageId("A")), 250);
  EXPECT_EQ(a.budgets.at(LanguageId("B")), 200);
}

// Best total interpolated ALP over every way to hand out |chunks| chunks.
double BruteForceBest(const std::vector<AlpLadder>& ladders, std::int64_t floor,
                      std::int64_t chunk, int chunks) {
  double best = -1e300;
  std::vector<int> grant(ladders.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == ladders.size()) {
      grant[i] = left;
      double v = 0;
      for (std::size_t j = 0; j < ladders.size(); ++j) {
        const std::int64_t b = floor + grant[j] * chunk;
        if (b > ladders[j].max_size()) return;
        v += ladders[j].Interpolate(b);
      }
      best = std::max(best, v);
      return;
    }
    for (int g = 0; g <= left; ++g) {
      grant[i] = g;
      rec(i + 1, left - g);
    }
  };
  rec(0, chunks);
  return best;
}

TEST(GreedyAllocateTest, MatchesBruteForceOnConcaveLadders) {
  Rng rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(4));
    const int chunks = static_cast<int>(rng.Below(7));
    const std::int64_t chunk = 1 + static_cast<std::int64_t>(rng.Below(50));
    const std::int64_t floor = 1 + static_cast<std::int64_t>(rng.Below(100));
    std::vector<AlpLadder> ladders;
    for (int i = 0; i < n; ++i) {
      std::vector<double> gains;
      double g = 10 * rng.Uniform();
      for (int c = 0; c < 6; ++c) {
        gains.push_back(g);
        g *= rng.Uniform();
      }
      ladders.push_back(GainLadder("l" + std::to_string(i), floor, chunk, gains));
    }
    const CapacityAllocation a = GreedyAllocate(ladders, floor * n + chunks * chunk, chunk, floor);
    ASSERT_EQ(a.Sum(), floor * n + chunks * chunk);
    double value = 0;
    for (const auto& l : ladders) {
      ASSERT_GE(a.budgets.at(l.language()), floor);
      value += l.Interpolate(a.budgets.at(l.language()));
    }
    ASSERT_NEAR(value, BruteForceBest(ladders, floor, chunk, chunks), 1e-9) << "trial " << trial;
  }
}

CapacityAllocation Alloc(std::initializer_list<std::pair<const char*, std::int64_t>> b) {
  CapacityAllocation a;
  for (const auto& [l, v] : b) a.budgets[LanguageId(l)] = v, a.total += v;
  return a;
}

TEST(RescaleTest, Examples) {
  CapacityAllocation r = Rescale(Alloc({{"en", 100}, {"zh", 300}}), 800, 1);
  EXPECT_EQ(r.budgets.at(LanguageId("en")), 200);
  EXPECT_EQ(r.budgets.at(LanguageId("zh")), 600);
  r = Rescale(Alloc({{"A", 2000}, {"B", 6000}}), 4000, 2000);
  EXPECT_EQ(r.budgets.at(LanguageId("A")), 2000);
  EXPECT_EQ(r.budgets.at(LanguageId("B")), 2000);
  const CapacityAllocation same = Alloc({{"A", 2345}, {"B", 7000}, {"C", 2000}});
  EXPECT_EQ(Rescale(same, same.total, 2000).budgets, same.budgets);
  EXPECT_THROW(Rescale(same, 5999, 2000), Error);
}

TEST(RescaleTest, ContractOnRandomInstances) {
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.Below(8));
    const std::int64_t floor = 1 + static_cast<std::int64_t>(rng.Below(50));
    CapacityAllocation a;
    for (int i = 0; i < n; ++i) {
      const std::int64_t b = floor + static_cast<std::int64_t>(rng.Below(1000));
      a.budgets[LanguageId("l" + std::to_string(i))] = b;
      a.total += b;
    }
    const std::int64_t target = floor * n + static_cast<std::int64_t>(rng.Below(5000));
    const CapacityAllocation r = Rescale(a, target, floor);
    ASSERT_EQ(r.Sum(), target);
    ASSERT_EQ(r.total, target);
    for (const auto& [l, b] : r.budgets) ASSERT_GE(b, floor);
    ASSERT_EQ(Rescale(r, target, floor).budgets, r.budgets);
    // Order-preserving relabeling commutes.
    CapacityAllocation renamed;
    renamed.total = a.total;
    for (const auto& [l, b] : a.budgets) renamed.budgets[LanguageId("x" + l.code())] = b;
    const CapacityAllocation rr = Rescale(renamed, target, floor);
    for (const auto& [l, b] : r.budgets) ASSERT_EQ(rr.budgets.at(LanguageId("x" + l.code())), b);
  }
}

ClusterAssignment Clusters(const std::vector<std::vector<std::string>>& groups) {
  ClusterAssignment c;
  for (const auto& g : groups) {
    c.clusters.emplace_back();
    for (const auto& l : g) c.clusters.back().push_back(LanguageId(l));
  }
  return c;
}

TEST(ClusterCapacityTest, Examples) {
  auto caps = ClusterCapacity(Alloc({{"ja", 40000}, {"zh-TW", 30000}, {"zh-CN", 32722}}),
                              Clusters({{"ja", "zh-TW", "zh-CN"}}));
  EXPECT_EQ(caps.at(0), 102722);
  caps = ClusterCapacity(Alloc({{"A", 3}, {"B", 5}}), Clusters({{"A"}, {"B"}}));
  EXPECT_EQ(caps.at(0), 3);
  EXPECT_EQ(caps.at(1), 5);
  caps = ClusterCapacity(Alloc({{"A", 3}, {"B", 5}, {"C", 2}}), Clusters({{"A", "B"}, {"C"}}));
  EXPECT_EQ(caps.at(0), 8);
  EXPECT_EQ(caps.at(1), 2);
  EXPECT_THROW(ClusterCapacity(Alloc({{"A", 3}, {"B", 5}}), Clusters({{"A"}})), Error);
}

TEST(CapacityFilesTest, RoundTrips) {
  const CapacityAllocation a = Alloc({{"en", 5000}, {"sw", 2000}});
  const CapacityAllocation b = ParseAllocationTsv(FormatAllocationTsv(a));
  EXPECT_EQ(b.budgets, a.budgets);
  EXPECT_EQ(b.total, 7000);
  const std::vector<AlpLadder> ladders = {GainLadder("en", 10, 5, {0.123456789012345678, 1}),
                                          GainLadder("sw", 10, 5, {2})};
  const auto back = ParseLadderTsv(FormatLadderTsv(ladders));
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    ASSERT_EQ(back[i].points().size(), ladders[i].points().size());
    for (std::size_t j = 0; j < back[i].points().size(); ++j) {
      EXPECT_EQ(back[i].points()[j].alp, ladders[i].points()[j].alp);
    }
  }
  EXPECT_THROW(ParseAllocationTsv("en\tabc\n"), Error);
}

}  // namespace
}  // namespace polyvocab
