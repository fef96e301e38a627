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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "polyvocab/error.h"
#include "polyvocab/pipeline.h"
#include "polyvocab/unigram_model.h"

namespace {

using polyvocab::Error;
using polyvocab::ErrorCode;

int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kNotFound: return 3;
    case ErrorCode::kDataLoss:
    case ErrorCode::kStaleArtifact: return 4;
  }
  return 4;
}

struct PipelineFlags {
  std::string config;
  std::string workdir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string stage_only;
};

void AddPipelineFlags(CLI::App* cmd, PipelineFlags* flags) {
  cmd->add_option("--config", flags->config, "pipeline config JSON")->required();
  cmd->add_option("--workdir", flags->workdir, "artifact directory")->required();
  cmd->add_option("--seed", flags->seed, "override the config seed");
  cmd->add_option("--workers", flags->workers, "parallel workers");
}

polyvocab::PipelineConfig LoadConfig(const PipelineFlags& flags) {
  polyvocab::PipelineConfig config = polyvocab::PipelineConfig::Load(flags.config);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers) config.workers = *flags.workers;
  return config;
}

void Report(const polyvocab::StageResult& r) {
  std::cout << polyvocab::StageName(r.stage) << (r.noop ? ": up to date" : ": done") << " ("
            << r.outputs.size() << " outputs)\n";
}

struct TokenizeFlags {
  std::string vocab;
  std::optional<std::string> text;
  std::string input;
  std::string delimiter = " ";
  bool no_normalize = false;
};

void PrintTokens(const polyvocab::UnigramVocab& vocab, const std::string& line,
                 const TokenizeFlags& flags) {
  const auto tokens = polyvocab::TokenizeLine(vocab, line, !flags.no_normalize);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) std::cout << flags.delimiter;
    std::cout << tokens[i];
  }
  std::cout << '\n';
}

void Tokenize(const TokenizeFlags& flags) {
  const polyvocab::UnigramVocab vocab = polyvocab::ReadVocab(flags.vocab);
  if (flags.text) {
    if (!flags.text->empty()) PrintTokens(vocab, *flags.text, flags);
    return;
  }
  std::ifstream file;
  std::istream* in = &std::cin;
  if (!flags.input.empty() && flags.input != "-") {
    file.open(flags.input, std::ios::binary);
    if (!file) throw polyvocab::NotFoundError("cannot open input " + flags.input);
    in = &file;
  }
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    PrintTokens(vocab, line, flags);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilingual subword vocabulary construction"};
  app.require_subcommand(1);

  PipelineFlags flags;
  std::vector<std::pair<CLI::App*, polyvocab::Stage>> stage_cmds;
  for (const polyvocab::Stage stage : polyvocab::AllStages()) {
    CLI::App* cmd = app.add_subcommand(std::string(polyvocab::StageName(stage)),
                                       "run one pipeline stage");
    AddPipelineFlags(cmd, &flags);
    stage_cmds.emplace_back(cmd, stage);
  }
  CLI::App* run_all = app.add_subcommand("run-all", "run every stage in order");
  AddPipelineFlags(run_all, &flags);
  run_all->add_option("--stage-only", flags.stage_only, "run just this stage");

  TokenizeFlags tok;
  CLI::App* tokenize = app.add_subcommand("tokenize", "Viterbi-tokenize text with a vocab file");
  tokenize->add_option("--vocab", tok.vocab, "vocab file")->required();
  auto* text_opt = tokenize->add_option("--text", tok.text, "text to tokenize");
  tokenize->add_option("--input", tok.input, "input file, one sentence per line ('-' for stdin)")
      ->excludes(text_opt);
  tokenize->add_option("--delimiter", tok.delimiter, "token separator");
  tokenize->add_flag("--no-normalize", tok.no_normalize, "skip NFKC and boundary marking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (tokenize->parsed()) {
      Tokenize(tok);
      return 0;
    }
    const polyvocab::PipelineConfig config = LoadConfig(flags);
    if (run_all->parsed()) {
      if (!flags.stage_only.empty()) {
        Report(polyvocab::RunStage(polyvocab::ParseStage(flags.stage_only), config, flags.workdir));
      } else {
        for (const polyvocab::Stage stage : polyvocab::AllStages()) {
          Report(polyvocab::RunStage(stage, config, flags.workdir));
        }
      }
      return 0;
    }
    for (const auto& [cmd, stage] : stage_cmds) {
      if (cmd->parsed()) Report(polyvocab::RunStage(stage, config, flags.workdir));
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
