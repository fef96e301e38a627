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

#ifndef POLYVOCAB_PIPELINE_H_
#define POLYVOCAB_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyvocab/clustering.h"
#include "polyvocab/corpus.h"
#include "polyvocab/fingerprint.h"
#include "polyvocab/unigram_trainer.h"

namespace polyvocab {

enum class Stage {
  kSample,
  kTrainLangs,
  kFingerprint,
  kCluster,
  kLadder,
  kAllocate,
  kTrainClusters,
  kMerge,
  kAnalyze,
};

std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);
std::span<const Stage> AllStages();

struct LanguageSpec {
  LanguageId id;
  std::filesystem::path corpus;
};

// Resolved run configuration. Corpus paths in the JSON document are
// relative to the directory holding it.
struct PipelineConfig {
  std::vector<LanguageSpec> languages;
  std::int64_t vocab_size = 30000;        // per-language vocabularies
  double temperature = 2.0;
  std::int64_t sample_lines = 0;          // 0: total lines of all corpora
  std::int64_t capacity = 1'000'000;      // final multilingual capacity
  std::int64_t allocation_total = 0;      // greedy allocation total; 0: capacity
  int k = 8;
  std::int64_t chunk = 1000;
  std::int64_t floor = 2000;
  std::vector<std::int64_t> ladder_sizes; // empty: floor doubling to allocation_total
  std::uint64_t seed = 0;
  int restarts = 10;
  int kmeans_max_iters = 100;
  FingerprintMode fingerprint_mode = FingerprintMode::kNegLogProb;
  DistanceMetric metric = DistanceMetric::kEuclidean;
  TrainerConfig trainer;
  int workers = 1;

  static PipelineConfig FromJson(std::string_view json_text,
                                 const std::filesystem::path& base_dir);
  static PipelineConfig Load(const std::filesystem::path& path);

  // Canonical JSON with every default filled in and absolute corpus paths.
  std::string ToJson() const;
  // SHA-256 of the canonical JSON, excluding the worker count.
  std::string Hash() const;

  // Checks paths, k <= languages, capacity >= floor * languages and trainer
  // settings. Throws kInvalidArgument.
  void Validate() const;

  std::int64_t EffectiveAllocationTotal() const;
  std::vector<std::int64_t> EffectiveLadderSizes() const;
};

struct StageResult {
  Stage stage;
  bool noop = false;
  std::vector<std::string> outputs;  // workdir-relative
};

// Runs one stage after checking that upstream artifacts exist and still
// match the hashes recorded when they were produced. A stage whose config,
// seed and inputs are unchanged and whose outputs are intact is skipped and
// logged as a no-op.
StageResult RunStage(Stage stage, const PipelineConfig& config,
                     const std::filesystem::path& workdir);

std::vector<StageResult> RunAll(const PipelineConfig& config,
                                const std::filesystem::path& workdir);

// Workdir-relative locations of the main artifacts.
inline constexpr const char* kFinalVocabPath = "final.vocab";
inline constexpr const char* kReportsDir = "reports";

// Tokenizes one line; normalizes first unless |normalize| is false.
std::vector<std::string> TokenizeLine(const UnigramVocab& vocab, std::string_view line,
                                      bool normalize);

}  // namespace polyvocab

#endif  // POLYVOCAB_PIPELINE_H_
