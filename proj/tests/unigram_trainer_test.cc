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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "polyvocab/error.h"
#include "polyvocab/normalizer.h"
#include "test_util.h"

namespace polyvocab {
namespace {

using testing::UniformVocab;
using testing::Verbatim;

double ProbOf(const UnigramVocab& v, const std::string& t) {
  return std::exp(v.piece(v.Find(t)).log_prob);
}

// Overlapping occurrence count of |needle| in every sentence.
std::int64_t CountOccurrences(const SentenceCorpus& c, const std::string& needle) {
  std::int64_t n = 0;
  for (const auto& s : c.sentences()) {
    for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  }
  return n;
}

TEST(SeedVocabTest, SubstringCandidates) {
  TrainerConfig config;
  config.max_token_len = 2;
  config.max_seed_size = 10;
  const SentenceCorpus c = Verbatim({"aaa"});
  const UnigramVocab v = MakeSeedVocab(c, config);
  ASSERT_TRUE(v.Contains("a"));
  ASSERT_TRUE(v.Contains("aa"));
  EXPECT_EQ(CountOccurrences(c, "a"), 3);
  EXPECT_EQ(CountOccurrences(c, "aa"), 2);
  EXPECT_FALSE(v.Contains("aaa"));
  EXPECT_NEAR(v.TotalProbability(), 1.0, 1e-9);
  v.Validate();
}

TEST(SeedVocabTest, SingleCharFallback) {
  TrainerConfig config;
  config.max_token_len = 1;
  const UnigramVocab v = MakeSeedVocab(Verbatim({"ab"}), config);
  std::vector<std::string> tokens;
  for (const auto& p : v.pieces()) tokens.push_back(p.token);
  std::sort(tokens.begin(), tokens.end());
  EXPECT_EQ(tokens, std::vector<std::string>({"<unk>", "a", "b"}));
}

TEST(SeedVocabTest, BoundaryPrefixedCandidate) {
  TrainerConfig config;
  config.max_token_len = 4;
  const SentenceCorpus c = SentenceCorpus::FromRawLines(LanguageId("xx"), {"xy xy"});
  const std::string bxy = std::string(kWordBoundary) + "xy";
  ASSERT_EQ(c.sentences()[0], bxy + bxy);
  const UnigramVocab v = MakeSeedVocab(c, config);
  ASSERT_TRUE(v.Contains(bxy));
  // Ranked by count * length: "▁xy" (2 x 3) is the top multi-char candidate.
  double best = -1e300;
  std::string best_token;
  for (const auto& p : v.pieces()) {
    if (utf8::CountChars(p.token) > 1 && p.log_prob > best) best = p.log_prob, best_token = p.token;
  }
  EXPECT_EQ(best_token, bxy);
  // The boundary never appears after the first character of a candidate.
  for (const auto& p : v.pieces()) {
    EXPECT_EQ(p.token.find(kWordBoundary, 1), std::string::npos) << p.token;
  }
}

TEST(SeedVocabTest, EmptyCorpusRejected) {
  EXPECT_THROW(MakeSeedVocab(Verbatim({})), Error);
}

TEST(SeedVocabTest, CharacterCoverageDropsRareCharacters) {
  TrainerConfig config;
  config.character_coverage = 0.9;
  std::vector<std::string> s(50, "aaaaaaaaaa");
  s.push_back("z");
  const UnigramVocab v = MakeSeedVocab(Verbatim(s), config);
  EXPECT_TRUE(v.Contains("a"));
  EXPECT_FALSE(v.Contains("z"));
  EXPECT_GT(ProbOf(v, "<unk>"), 0.0);
}

TEST(SeedVocabTest, MaxSeedSizeTruncates) {
  TrainerConfig config;
  config.max_seed_size = 3;
  const UnigramVocab v = MakeSeedVocab(Verbatim({"abcdabcd", "abcdabcd"}), config);
  EXPECT_EQ(v.size(), v.protected_count() + 3);
}

TEST(EmStepTest, WholeTokenGainsMass) {
  const SentenceCorpus c = Verbatim({"ab"});
  const UnigramVocab before = UniformVocab({"a", "b", "ab"});
  const UnigramVocab after = EmStep(c, before);
  // Hand forward-backward: paths [ab] (p) and [a,b] (p^2) with p = 1/4, so
  // E[ab] = 4/5 and E[a] = E[b] = 1/5.
  const double ratio_before = ProbOf(before, "ab") / ProbOf(before, "a");
  const double ratio_after = ProbOf(after, "ab") / ProbOf(after, "a");
  EXPECT_GT(ratio_after, ratio_before);
  EXPECT_NEAR(ratio_after, 4.0, 1e-9);
  EXPECT_NEAR(ProbOf(after, "ab"), 0.8 / 1.2, 1e-9);
  for (const auto& p : before.pieces()) EXPECT_TRUE(after.Contains(p.token));
  EXPECT_EQ(after.size(), before.size());
}

TEST(EmStepTest, ExpectedCountsMatchHandLattice) {
  double ll = 0;
  const std::vector<double> counts =
      ExpectedCounts(Verbatim({"ab"}), UniformVocab({"a", "b", "ab"}), &ll);
  const UnigramVocab v = UniformVocab({"a", "b", "ab"});
  EXPECT_NEAR(counts[v.Find("ab")], 0.8, 1e-12);
  EXPECT_NEAR(counts[v.Find("a")], 0.2, 1e-12);
  EXPECT_NEAR(ll, std::log(0.25 + 0.0625), 1e-12);
}

TEST(EmStepTest, SingleTokenCorpus) {
  const UnigramVocab v = EmStep(Verbatim({"a"}), UniformVocab({"a"}));
  EXPECT_NEAR(v.piece(v.Find("a")).log_prob, 0.0, 1e-9);
}

TEST(EmStepTest, FixedPointIsStable) {
  const SentenceCorpus c = Verbatim({"abc", "ab", "bca", "cab"});
  UnigramVocab v = UniformVocab({"a", "b", "c", "ab", "bc"});
  for (int i = 0; i < 500; ++i) v = EmStep(c, v);
  const UnigramVocab next = EmStep(c, v);
  for (const auto& p : v.pieces()) {
    EXPECT_NEAR(next.piece(next.Find(p.token)).log_prob, p.log_prob, 1e-9) << p.token;
  }
}

TEST(EmStepTest, MarginalLikelihoodNonDecreasing) {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> s;
    for (int i = 0; i < 6; ++i) s.push_back(testing::RandomString(rng, "abc", 8) + "a");
    const SentenceCorpus c = Verbatim(s);
    UnigramVocab v = testing::RandomVocab(rng, "abc", 10);
    double prev = CorpusLogLikelihood(c, v);
    for (int step = 0; step < 10; ++step) {
      v = EmStep(c, v);
      const double cur = CorpusLogLikelihood(c, v);
      ASSERT_GE(cur, prev - 1e-9) << "trial " << trial << " step " << step;
      prev = cur;
    }
  }
}

TEST(PruneTest, UnusedTokenGoesFirst) {
  const SentenceCorpus c = Verbatim({"ab", "ab"});
  UnigramVocab v = UniformVocab({"a", "b", "ab", "aa"});
  v = EmStep(c, v);
  const std::vector<double> loss = PruningLosses(c, v);
  EXPECT_NEAR(loss[v.Find("aa")], 0.0, 1e-9);
  EXPECT_GT(loss[v.Find("ab")], 0.0);
  EXPECT_TRUE(std::isinf(loss[v.Find("a")]));
  const UnigramVocab pruned = Prune(c, v, 0.5);
  EXPECT_FALSE(pruned.Contains("aa"));
  EXPECT_TRUE(pruned.Contains("ab"));
  EXPECT_NEAR(pruned.TotalProbability(), 1.0, 1e-9);
}

TEST(PruneTest, KeepFractionCeiling) {
  const SentenceCorpus c = Verbatim({"abcd", "abcd", "bcda"});
  const UnigramVocab v = UniformVocab({"a", "b", "c", "d", "ab", "bc", "cd", "da"});
  const UnigramVocab p = Prune(c, v, 0.999);
  EXPECT_GE(p.size(), v.size() - 1);
}

TEST(PruneTest, ProtectedSurviveAndSizeBound) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> s;
    for (int i = 0; i < 5; ++i) s.push_back(testing::RandomString(rng, "abcd", 10) + "b");
    const SentenceCorpus c = Verbatim(s);
    const UnigramVocab v = testing::RandomVocab(rng, "abcd", 12);
    const double kf = 0.05 + 0.9 * rng.Uniform();
    const UnigramVocab p = Prune(c, v, kf);
    for (std::size_t id = 0; id < v.size(); ++id) {
      if (v.IsProtected(static_cast<int>(id))) {
        ASSERT_TRUE(p.Contains(v.piece(static_cast<int>(id)).token));
      }
    }
    const auto removable = static_cast<double>(v.size() - v.protected_count());
    ASSERT_LE(p.size(), static_cast<std::size_t>(std::ceil(kf * removable)) + v.protected_count());
    p.Validate();
  }
}

TEST(PruneTest, PruneToSizeClampsAtProtected) {
  const SentenceCorpus c = Verbatim({"abab"});
  const UnigramVocab v = UniformVocab({"a", "b", "ab", "ba", "aba"});
  EXPECT_EQ(PruneToSize(c, v, 1).size(), v.protected_count());
  EXPECT_EQ(PruneToSize(c, v, 4).size(), 4u);
}

TEST(TrainUnigramTest, RepeatedBigram) {
  const SentenceCorpus c = Verbatim(std::vector<std::string>(100, "abab"));
  const UnigramVocab v = TrainUnigram(c, 5);
  EXPECT_EQ(v.size(), 5u);
  v.Validate();
  ASSERT_TRUE(v.Contains("ab") || v.Contains("abab"));
  EXPECT_LE(ViterbiTokenize(v, "abab").tokens.size(), 2u);
}

TEST(TrainUnigramTest, TargetAboveSeedSkipsPruning) {
  const SentenceCorpus c = Verbatim({"abc", "abc", "bcd"});
  const UnigramVocab seed = MakeSeedVocab(c);
  const UnigramVocab v = TrainUnigram(c, seed.size() + 10);
  EXPECT_EQ(v.size(), seed.size());
  for (const auto& p : seed.pieces()) EXPECT_TRUE(v.Contains(p.token));
}

TEST(TrainUnigramTest, DegenerateSingleCharacter) {
  const SentenceCorpus c = Verbatim({"aaaaaa"});
  TrainerConfig config;
  config.max_token_len = 1;
  const UnigramVocab v = TrainUnigram(c, 2, config);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_NEAR(ProbOf(v, "a"), 1.0, 1e-9);
}

TEST(TrainUnigramTest, TargetBelowProtectedSetRejected) {
  EXPECT_THROW(TrainUnigram(Verbatim({"abc"}), 2), Error);
  EXPECT_THROW(TrainUnigram(Verbatim({}), 10), Error);
}

TEST(TrainUnigramTest, DeterministicVocabFile) {
  const SentenceCorpus c = SentenceCorpus::FromRawLines(
      LanguageId("xx"), {"the cat sat", "the hat", "a cat and a hat", "sat on the mat"});
  EXPECT_EQ(FormatVocab(TrainUnigram(c, 20)), FormatVocab(TrainUnigram(c, 20)));
}

TEST(TrainUnigramTest, LadderSnapshotsHaveRequestedSizes) {
  const SentenceCorpus c = SentenceCorpus::FromRawLines(
      LanguageId("xx"), {"the cat sat on the mat", "the hat", "a cat and a hat", "mats and hats"});
  const std::vector<std::size_t> sizes = {20, 25, 30};
  const auto ladder = TrainUnigramLadder(c, sizes);
  ASSERT_EQ(ladder.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(ladder[i].size(), sizes[i]);
    ladder[i].Validate();
  }
  const std::vector<std::size_t> bad = {30, 20};
  EXPECT_THROW(TrainUnigramLadder(c, bad), Error);
}

TEST(TrainerConfigTest, Validate) {
  TrainerConfig c;
  c.keep_fraction = 1.0;
  EXPECT_THROW(c.Validate(), Error);
  c = TrainerConfig{};
  c.max_token_len = 0;
  EXPECT_THROW(c.Validate(), Error);
}

}  // namespace
}  // namespace polyvocab
