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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>

#include "polyvocab/hashing.h"
#include "polyvocab/unigram_model.h"
#include "test_util.h"

namespace polyvocab {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Result {
  int code = -1;
  std::string out;
};

Result RunCli(const std::string& args) {
  const std::string cmd = std::string(POLYVOCAB_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof(buf), pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kConfig = std::string(POLYVOCAB_SOURCE_DIR) + "/data/toy/config.json";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    vocab_ = (dir_.path() / "toy.vocab").string();
    WriteVocab(vocab_, UnigramVocab({{"<unk>", -9.0}, {"ab", -0.5}, {"a", -2.0}, {"b", -2.0},
                                     {"\xE2\x96\x81", -2.0}}));
  }
  TempDir dir_;
  std::string vocab_;
};

TEST_F(CliTest, TokenizeText) {
  Result r = RunCli("tokenize --no-normalize --vocab " + vocab_ + " --text ab");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "ab\n");
  r = RunCli("tokenize --no-normalize --vocab " + vocab_ + " --text abzab --delimiter '|'");
  EXPECT_EQ(r.out, "ab|<unk>|ab\n");
  r = RunCli("tokenize --vocab " + vocab_ + " --text ''");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliTest, TokenizeFile) {
  WriteStringToFile(dir_.path() / "in.txt", "ab a\n\nb\n");
  const Result r = RunCli("tokenize --vocab " + vocab_ + " --input " + (dir_.path() / "in.txt").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "\xE2\x96\x81 ab \xE2\x96\x81 a\n\n\xE2\x96\x81 b\n");
  WriteStringToFile(dir_.path() / "empty.txt", "");
  EXPECT_EQ(RunCli("tokenize --vocab " + vocab_ + " --input " + (dir_.path() / "empty.txt").string()).out, "");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli("tokenize --vocab /nonexistent.vocab --text ab").code, 3);
  WriteStringToFile(dir_.path() / "bad.vocab", "#ulm-vocab v1\nab\t-1\n");
  EXPECT_EQ(RunCli("tokenize --vocab " + (dir_.path() / "bad.vocab").string() + " --text ab").code, 4);
  EXPECT_EQ(RunCli("bogus-subcommand").code, 2);
  EXPECT_EQ(RunCli("sample --config /nonexistent.json --workdir " + dir_.path().string()).code, 2);
  WriteStringToFile(dir_.path() / "bad.json", R"({"k": 0})");
  EXPECT_EQ(RunCli("sample --config " + (dir_.path() / "bad.json").string() + " --workdir w").code, 2);
  const std::string wd = (dir_.path() / "work").string();
  const Result r = RunCli("merge --config " + kConfig + " --workdir " + wd);
  EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, StagesAndRunAll) {
  const std::string wd = (dir_.path() / "work").string();
  const std::string flags = " --config " + kConfig + " --workdir " + wd;
  EXPECT_EQ(RunCli("sample" + flags).code, 0);
  EXPECT_EQ(RunCli("run-all --stage-only train-langs" + flags).code, 0);
  EXPECT_TRUE(fs::exists(fs::path(wd) / "vocabs" / "lat.vocab"));
  EXPECT_FALSE(fs::exists(fs::path(wd) / "fingerprints.txt"));
  EXPECT_EQ(RunCli("run-all --stage-only nonsense" + flags).code, 2);
  Result r = RunCli("run-all --workers 2" + flags);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sample: up to date"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("analyze: done"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(fs::path(wd) / "final.vocab"));

  r = RunCli("tokenize --vocab " + wd + "/final.vocab --text 'pa'");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());

  // Different seed invalidates the sample stage.
  r = RunCli("sample --seed 99" + flags);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sample: done"), std::string::npos) << r.out;

  WriteStringToFile(fs::path(wd) / "samples" / "lat.txt", "tampered\n");
  EXPECT_EQ(RunCli("ladder" + flags).code, 4);
}

}  // namespace
}  // namespace polyvocab
