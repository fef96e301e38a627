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

#include "polyvocab/pipeline.h"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "json.hpp"
#include "parallel.h"
#include "polyvocab/analysis.h"
#include "polyvocab/assembly.h"
#include "polyvocab/capacity.h"
#include "polyvocab/error.h"
#include "polyvocab/hashing.h"
#include "polyvocab/manifest.h"
#include "polyvocab/normalizer.h"
#include "polyvocab/random.h"
#include "polyvocab/utf8.h"

namespace polyvocab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::array<Stage, 9> kStages = {
    Stage::kSample,        Stage::kTrainLangs, Stage::kFingerprint,
    Stage::kCluster,       Stage::kLadder,     Stage::kAllocate,
    Stage::kTrainClusters, Stage::kMerge,      Stage::kAnalyze,
};

std::vector<Stage> Upstream(Stage stage) {
  switch (stage) {
    case Stage::kSample:
      return {};
    case Stage::kTrainLangs:
    case Stage::kLadder:
      return {Stage::kSample};
    case Stage::kFingerprint:
      return {Stage::kTrainLangs};
    case Stage::kCluster:
      return {Stage::kFingerprint};
    case Stage::kAllocate:
      return {Stage::kLadder};
    case Stage::kTrainClusters:
      return {Stage::kSample, Stage::kCluster, Stage::kAllocate};
    case Stage::kMerge:
      return {Stage::kTrainClusters};
    case Stage::kAnalyze:
      return {Stage::kSample, Stage::kTrainClusters, Stage::kMerge};
  }
  return {};
}

// Artifact named in errors when a stage has never run.
std::string_view PrimaryArtifact(Stage stage) {
  switch (stage) {
    case Stage::kSample: return "samples/";
    case Stage::kTrainLangs: return "vocabs/";
    case Stage::kFingerprint: return "fingerprints.txt";
    case Stage::kCluster: return "clusters.tsv";
    case Stage::kLadder: return "ladders.tsv";
    case Stage::kAllocate: return "allocation.tsv";
    case Stage::kTrainClusters: return "cluster_vocabs/";
    case Stage::kMerge: return kFinalVocabPath;
    case Stage::kAnalyze: return "reports/";
  }
  return "";
}

class StageRunner {
 public:
  StageRunner(const PipelineConfig& config, fs::path workdir)
      : config_(config), workdir_(std::move(workdir)) {}

  std::vector<std::string> Run(Stage stage) {
    switch (stage) {
      case Stage::kSample: Sample(); break;
      case Stage::kTrainLangs: TrainLangs(); break;
      case Stage::kFingerprint: Fingerprint(); break;
      case Stage::kCluster: Cluster(); break;
      case Stage::kLadder: Ladder(); break;
      case Stage::kAllocate: Allocate(); break;
      case Stage::kTrainClusters: TrainClusters(); break;
      case Stage::kMerge: Merge(); break;
      case Stage::kAnalyze: Analyze(); break;
    }
    return std::move(outputs_);
  }

 private:
  static std::string SamplePath(const LanguageId& id) { return "samples/" + id.code() + ".txt"; }
  static std::string VocabPath(const LanguageId& id) { return "vocabs/" + id.code() + ".vocab"; }
  static std::string FreqPath(const LanguageId& id) { return "freqs/" + id.code() + ".tsv"; }
  static std::string ClusterVocabPath(int c) {
    return "cluster_vocabs/cluster-" + std::to_string(c) + ".vocab";
  }

  void Write(const std::string& rel, std::string_view content) {
    WriteStringToFile(workdir_ / rel, content);
    outputs_.push_back(rel);
  }

  std::string Read(const std::string& rel) const { return ReadFileToString(workdir_ / rel); }

  SentenceCorpus ReadSample(const LanguageId& id) const {
    return LoadCorpus(workdir_ / SamplePath(id), id);
  }

  template <typename Fn>
  void ForEachLanguage(Fn&& fn) {
    internal::ParallelFor(config_.languages.size(), config_.workers, [&](std::size_t i) {
      const LanguageId& id = config_.languages[i].id;
      try {
        fn(i, id);
      } catch (const Error& e) {
        throw Error(e.code(), id.code() + ": " + e.what());
      }
    });
  }

  void Sample() {
    std::map<LanguageId, SentenceCorpus> corpora;
    std::map<LanguageId, std::int64_t> line_counts;
    std::int64_t total = 0;
    for (const auto& spec : config_.languages) {
      SentenceCorpus corpus = LoadCorpus(spec.corpus, spec.id);
      if (corpus.empty()) {
        throw DataLossError("corpus for " + spec.id.code() + " has no sentences");
      }
      line_counts.emplace(spec.id, corpus.line_count());
      total += corpus.line_count();
      corpora.emplace(spec.id, std::move(corpus));
    }
    const std::int64_t lines = config_.sample_lines > 0 ? config_.sample_lines : total;
    const auto quotas = TemperatureSample(line_counts, config_.temperature, lines);
    std::string table;
    for (const auto& spec : config_.languages) {
      const std::int64_t quota = quotas.at(spec.id);
      const SentenceCorpus sample = DrawSample(corpora.at(spec.id), quota,
                                               DeriveSeed(config_.seed, "sample/" + spec.id.code()));
      WriteCorpus(workdir_ / SamplePath(spec.id), sample);
      outputs_.push_back(SamplePath(spec.id));
      table += spec.id.code() + '\t' + std::to_string(quota) + '\t' +
               std::to_string(line_counts.at(spec.id)) + '\n';
    }
    Write("samples/quotas.tsv", table);
  }

  void TrainLangs() {
    const std::size_t n = config_.languages.size();
    std::vector<std::string> vocab_files(n);
    std::vector<std::string> freq_files(n);
    ForEachLanguage([&](std::size_t i, const LanguageId& id) {
      const SentenceCorpus corpus = ReadSample(id);
      const UnigramVocab vocab =
          TrainUnigram(corpus, static_cast<std::size_t>(config_.vocab_size), config_.trainer);
      vocab_files[i] = FormatVocab(vocab);
      freq_files[i] = CountTokenFrequencies(corpus, vocab).ToTsv();
    });
    for (std::size_t i = 0; i < n; ++i) {
      Write(VocabPath(config_.languages[i].id), vocab_files[i]);
      Write(FreqPath(config_.languages[i].id), freq_files[i]);
    }
  }

  void Fingerprint() {
    std::vector<UnigramVocab> vocabs;
    for (const auto& spec : config_.languages) vocabs.push_back(ParseVocab(Read(VocabPath(spec.id))));
    const SharedLexicon lexicon = BuildSharedLexicon(vocabs);
    std::vector<LexicalFingerprint> fingerprints;
    for (std::size_t i = 0; i < vocabs.size(); ++i) {
      const LanguageId& id = config_.languages[i].id;
      fingerprints.push_back(BuildFingerprint(id, vocabs[i],
                                              FrequencyTable::FromTsv(Read(FreqPath(id))), lexicon,
                                              config_.fingerprint_mode));
    }
    std::string lexicon_text;
    for (const auto& t : lexicon.tokens()) lexicon_text += t + '\n';
    Write("lexicon.txt", lexicon_text);
    Write("fingerprints.txt", FormatFingerprints(fingerprints, config_.fingerprint_mode));
  }

  void Cluster() {
    const auto fingerprints = ParseFingerprints(Read("fingerprints.txt"));
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < config_.restarts; ++i) {
      seeds.push_back(DeriveSeed(config_.seed, "kmeans/" + std::to_string(i)));
    }
    const ClusterAssignment best = BestOfRestarts(fingerprints, config_.k, seeds,
                                                  config_.kmeans_max_iters, config_.metric);
    Write("clusters.tsv", FormatClusterTsv(best));
    const json sidecar{
        {"k", config_.k},
        {"metric", DistanceMetricName(config_.metric)},
        {"restart_seeds", seeds},
        {"seed", best.seed},
        {"inertia", best.inertia},
        {"iterations", best.iterations},
        {"inertia_history", best.inertia_history},
        {"centroids", best.centroids},
    };
    Write("clusters.json", sidecar.dump(1) + "\n");
  }

  void Ladder() {
    const std::vector<std::int64_t> sizes64 = config_.EffectiveLadderSizes();
    const std::vector<std::size_t> sizes(sizes64.begin(), sizes64.end());
    std::vector<std::optional<AlpLadder>> ladders(config_.languages.size());
    ForEachLanguage([&](std::size_t i, const LanguageId& id) {
      ladders[i] = BuildAlpLadder(ReadSample(id), sizes, config_.trainer);
    });
    std::vector<AlpLadder> all;
    for (auto& l : ladders) all.push_back(std::move(*l));
    Write("ladders.tsv", FormatLadderTsv(all));
  }

  void Allocate() {
    const std::vector<AlpLadder> ladders = ParseLadderTsv(Read("ladders.tsv"));
    for (const auto& spec : config_.languages) {
      if (std::none_of(ladders.begin(), ladders.end(),
                       [&](const AlpLadder& l) { return l.language() == spec.id; })) {
        throw NotFoundError("ladders.tsv has no ladder for " + spec.id.code());
      }
    }
    const CapacityAllocation greedy = GreedyAllocate(ladders, config_.EffectiveAllocationTotal(),
                                                     config_.chunk, config_.floor);
    const CapacityAllocation final_allocation = Rescale(greedy, config_.capacity, config_.floor);
    Write("allocation.tsv", FormatAllocationTsv(final_allocation));
    json greedy_budgets = json::object();
    for (const auto& [lang, b] : greedy.budgets) greedy_budgets[lang.code()] = b;
    const json meta{
        {"total", final_allocation.total},
        {"allocation_total", greedy.total},
        {"chunk", config_.chunk},
        {"floor", config_.floor},
        {"seed", config_.seed},
        {"greedy_budgets", greedy_budgets},
    };
    Write("allocation.json", meta.dump(1) + "\n");
  }

  void TrainClusters() {
    const ClusterAssignment clusters = ParseClusterTsv(Read("clusters.tsv"));
    const CapacityAllocation allocation = ParseAllocationTsv(Read("allocation.tsv"));
    const auto capacities = ClusterCapacity(allocation, clusters);
    // Samples already carry the temperature weighting, so each cluster's
    // corpus takes all of its members' sampled lines (t = 1).
    std::map<LanguageId, SentenceCorpus> samples;
    for (const auto& spec : config_.languages) samples.emplace(spec.id, ReadSample(spec.id));
    std::map<int, std::int64_t> lines;
    for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
      for (const auto& lang : clusters.clusters[c]) {
        const auto it = samples.find(lang);
        if (it == samples.end()) throw NotFoundError("no sample for clustered language " + lang.code());
        lines[static_cast<int>(c)] += it->second.line_count();
      }
    }
    const auto corpora = BuildClusterCorpus(clusters, samples, 1.0, lines,
                                            DeriveSeed(config_.seed, "cluster-corpus"));
    const auto vocabs = TrainClusterVocabs(corpora, capacities, config_.trainer, config_.workers);
    std::string table;
    for (const auto& [c, vocab] : vocabs) {
      Write(ClusterVocabPath(c), FormatVocab(vocab));
      table += std::to_string(c) + '\t' + std::to_string(capacities.at(c)) + '\n';
    }
    Write("cluster_vocabs/capacities.tsv", table);
  }

  std::map<int, UnigramVocab> ReadClusterVocabs() const {
    std::map<int, UnigramVocab> vocabs;
    const std::string text = Read("cluster_vocabs/capacities.tsv");
    std::size_t pos = 0;
    while (pos < text.size()) {
      const std::size_t eol = text.find('\n', pos);
      const int c = std::stoi(text.substr(pos, text.find('\t', pos) - pos));
      vocabs.emplace(c, ParseVocab(Read(ClusterVocabPath(c))));
      pos = eol == std::string::npos ? text.size() : eol + 1;
    }
    return vocabs;
  }

  void Merge() {
    const ExportedVocab files = FormatMultilingualVocab(MergeVocabs(ReadClusterVocabs()));
    Write(kFinalVocabPath, files.vocab_tsv);
    Write(ProvenancePath(kFinalVocabPath).string(), files.provenance_json);
  }

  void Analyze() {
    const MultilingualVocab merged = ImportVocab(workdir_ / kFinalVocabPath);
    const UnigramVocab vocab = merged.ToUnigramVocab();
    std::vector<TokenizationStats> fertility;
    FrequencyTable occurrences;
    for (const auto& spec : config_.languages) {
      const SentenceCorpus sample = ReadSample(spec.id);
      fertility.push_back(Fertility(vocab, sample));
      const FrequencyTable counts = CountTokenFrequencies(sample, vocab);
      for (const auto& [token, count] : counts.counts()) {
        occurrences.Add(token, count);
      }
    }
    const CoverageCurve curve = CoverageCurveFromCounts(occurrences);
    const auto cluster_vocabs = ReadClusterVocabs();

    Write("reports/fertility.csv", FormatFertilityCsv(fertility));
    Write("reports/coverage.csv", FormatCoverageCsv(curve));
    json unique = json::object();
    if (cluster_vocabs.size() >= 2) {
      const OverlapReport overlap = ComputeOverlapReport(cluster_vocabs);
      Write("reports/overlap.csv", FormatOverlapCsv(overlap));
      for (std::size_t i = 0; i < overlap.cluster_ids.size(); ++i) {
        unique[std::to_string(overlap.cluster_ids[i])] = overlap.unique_fraction[i];
      }
    } else {
      Write("reports/overlap.csv", "cluster_a,cluster_b,intersection\n");
    }
    json avg = json::object();
    for (const auto& s : fertility) avg[s.language.code()] = s.avg_tokens_per_sentence;
    json sizes = json::object();
    for (const auto& [c, n] : merged.source_sizes()) sizes[std::to_string(c)] = n;
    const json summary{
        {"final_size", merged.size()},
        {"overlap_count", merged.overlap_count()},
        {"cluster_sizes", sizes},
        {"unique_fraction", unique},
        {"fertility", avg},
        {"token_types_used", curve.points().size()},
        {"utilization_99", UtilizationAt(curve, 0.99)},
    };
    Write("reports/summary.json", summary.dump(1) + "\n");
  }

  const PipelineConfig& config_;
  fs::path workdir_;
  std::vector<std::string> outputs_;
};

template <typename T>
T Take(json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  T value = doc.at(key).get<T>();
  doc.erase(key);
  return value;
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kSample: return "sample";
    case Stage::kTrainLangs: return "train-langs";
    case Stage::kFingerprint: return "fingerprint";
    case Stage::kCluster: return "cluster";
    case Stage::kLadder: return "ladder";
    case Stage::kAllocate: return "allocate";
    case Stage::kTrainClusters: return "train-clusters";
    case Stage::kMerge: return "merge";
    case Stage::kAnalyze: return "analyze";
  }
  return "";
}

Stage ParseStage(std::string_view name) {
  for (const Stage s : kStages) {
    if (StageName(s) == name) return s;
  }
  throw InvalidArgumentError("unknown stage '" + std::string(name) + "'");
}

std::span<const Stage> AllStages() { return kStages; }

PipelineConfig PipelineConfig::FromJson(std::string_view json_text, const fs::path& base_dir) {
  PipelineConfig c;
  try {
    json doc = json::parse(json_text);
    if (!doc.is_object()) throw InvalidArgumentError("config must be a JSON object");
    for (auto& lang : Take<json>(doc, "languages", json::array())) {
      fs::path corpus = lang.at("corpus").get<std::string>();
      if (corpus.is_relative()) corpus = base_dir / corpus;
      c.languages.push_back({LanguageId(lang.at("id").get<std::string>()),
                             corpus.lexically_normal()});
    }
    c.vocab_size = Take(doc, "vocab_size", c.vocab_size);
    c.temperature = Take(doc, "temperature", c.temperature);
    c.sample_lines = Take(doc, "sample_lines", c.sample_lines);
    c.capacity = Take(doc, "capacity", c.capacity);
    c.allocation_total = Take(doc, "allocation_total", c.allocation_total);
    c.k = Take(doc, "k", c.k);
    c.chunk = Take(doc, "chunk", c.chunk);
    c.floor = Take(doc, "floor", c.floor);
    c.ladder_sizes = Take(doc, "ladder_sizes", c.ladder_sizes);
    c.seed = Take(doc, "seed", c.seed);
    c.restarts = Take(doc, "restarts", c.restarts);
    c.kmeans_max_iters = Take(doc, "kmeans_max_iters", c.kmeans_max_iters);
    c.fingerprint_mode = ParseFingerprintMode(
        Take<std::string>(doc, "fingerprint_mode", std::string(FingerprintModeName(c.fingerprint_mode))));
    c.metric = ParseDistanceMetric(
        Take<std::string>(doc, "metric", std::string(DistanceMetricName(c.metric))));
    c.workers = Take(doc, "workers", c.workers);
    json trainer = Take<json>(doc, "trainer", json::object());
    TrainerConfig& t = c.trainer;
    t.max_token_len = Take(trainer, "max_token_len", t.max_token_len);
    t.min_count = Take(trainer, "min_count", t.min_count);
    t.max_seed_size = Take(trainer, "max_seed_size", t.max_seed_size);
    t.character_coverage = Take(trainer, "character_coverage", t.character_coverage);
    t.em_steps_per_round = Take(trainer, "em_steps_per_round", t.em_steps_per_round);
    t.keep_fraction = Take(trainer, "keep_fraction", t.keep_fraction);
    if (!trainer.empty()) {
      throw InvalidArgumentError("unknown trainer setting '" + trainer.begin().key() + "'");
    }
    if (!doc.empty()) throw InvalidArgumentError("unknown config key '" + doc.begin().key() + "'");
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig PipelineConfig::Load(const fs::path& path) {
  std::string text;
  try {
    text = ReadFileToString(path);
  } catch (const Error& e) {
    throw InvalidArgumentError(std::string("config: ") + e.what());
  }
  return FromJson(text, fs::absolute(path).parent_path());
}

std::string PipelineConfig::ToJson() const {
  json langs = json::array();
  for (const auto& l : languages) {
    langs.push_back({{"id", l.id.code()}, {"corpus", fs::absolute(l.corpus).lexically_normal().string()}});
  }
  const json doc{
      {"languages", langs},
      {"vocab_size", vocab_size},
      {"temperature", temperature},
      {"sample_lines", sample_lines},
      {"capacity", capacity},
      {"allocation_total", EffectiveAllocationTotal()},
      {"k", k},
      {"chunk", chunk},
      {"floor", floor},
      {"ladder_sizes", EffectiveLadderSizes()},
      {"seed", seed},
      {"restarts", restarts},
      {"kmeans_max_iters", kmeans_max_iters},
      {"fingerprint_mode", FingerprintModeName(fingerprint_mode)},
      {"metric", DistanceMetricName(metric)},
      {"workers", workers},
      {"trainer",
       {{"max_token_len", trainer.max_token_len},
        {"min_count", trainer.min_count},
        {"max_seed_size", trainer.max_seed_size},
        {"character_coverage", trainer.character_coverage},
        {"em_steps_per_round", trainer.em_steps_per_round},
        {"keep_fraction", trainer.keep_fraction}}},
  };
  return doc.dump();
}

std::string PipelineConfig::Hash() const {
  json doc = json::parse(ToJson());
  doc.erase("workers");
  // Corpus locations are covered by the corpus content hashes.
  for (auto& l : doc["languages"]) l.erase("corpus");
  return Sha256Hex(doc.dump());
}

std::int64_t PipelineConfig::EffectiveAllocationTotal() const {
  return allocation_total > 0 ? allocation_total : capacity;
}

std::vector<std::int64_t> PipelineConfig::EffectiveLadderSizes() const {
  if (!ladder_sizes.empty()) return ladder_sizes;
  std::vector<std::int64_t> sizes;
  const std::int64_t top = EffectiveAllocationTotal();
  for (std::int64_t s = floor; s > 0 && s < top; s *= 2) sizes.push_back(s);
  sizes.push_back(top);
  return sizes;
}

void PipelineConfig::Validate() const {
  if (languages.empty()) throw InvalidArgumentError("config lists no languages");
  std::set<LanguageId> ids;
  for (const auto& l : languages) {
    if (!ids.insert(l.id).second) throw InvalidArgumentError("duplicate language " + l.id.code());
    if (!fs::is_regular_file(l.corpus)) {
      throw InvalidArgumentError("corpus for " + l.id.code() + " not found: " + l.corpus.string());
    }
  }
  const auto n = static_cast<std::int64_t>(languages.size());
  if (vocab_size < 1) throw InvalidArgumentError("vocab_size must be positive");
  if (!(temperature > 0.0)) throw InvalidArgumentError("temperature must be positive");
  if (sample_lines < 0) throw InvalidArgumentError("sample_lines must be >= 0");
  if (chunk < 1 || floor < 1) throw InvalidArgumentError("chunk and floor must be positive");
  if (capacity < floor * n) {
    throw InvalidArgumentError("capacity " + std::to_string(capacity) + " is below floor x languages (" +
                               std::to_string(floor * n) + ")");
  }
  if (EffectiveAllocationTotal() < floor * n) {
    throw InvalidArgumentError("allocation_total is below floor x languages");
  }
  if (k < 1 || k > n) {
    throw InvalidArgumentError("k must be between 1 and the number of languages (" +
                               std::to_string(n) + ")");
  }
  if (restarts < 1 || kmeans_max_iters < 1) {
    throw InvalidArgumentError("restarts and kmeans_max_iters must be positive");
  }
  if (workers < 1) throw InvalidArgumentError("workers must be positive");
  const auto sizes = EffectiveLadderSizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
      throw InvalidArgumentError("ladder_sizes must be positive and strictly increasing");
    }
  }
  if (sizes.front() > floor) {
    throw InvalidArgumentError("ladder_sizes must start at or below the floor");
  }
  trainer.Validate();
}

StageResult RunStage(Stage stage, const PipelineConfig& config, const fs::path& workdir) {
  config.Validate();
  fs::create_directories(workdir);
  Manifest manifest = Manifest::Load(workdir);

  std::map<std::string, std::string> inputs;
  for (const Stage up : Upstream(stage)) {
    const ManifestRecord* record = manifest.Latest(std::string(StageName(up)));
    if (record == nullptr) {
      throw NotFoundError("missing artifact '" + std::string(PrimaryArtifact(up)) +
                          "': run stage '" + std::string(StageName(up)) + "' before '" +
                          std::string(StageName(stage)) + "'");
    }
    for (const auto& [path, hash] : record->outputs) {
      if (!fs::exists(workdir / path)) {
        throw NotFoundError("missing artifact '" + path + "' from stage '" +
                            std::string(StageName(up)) + "'");
      }
      if (Sha256File(workdir / path) != hash) {
        throw StaleArtifactError("artifact '" + path + "' changed since stage '" +
                                 std::string(StageName(up)) + "' wrote it; re-run that stage");
      }
      inputs[path] = hash;
    }
  }
  if (stage == Stage::kSample) {
    for (const auto& l : config.languages) {
      inputs["corpus:" + l.id.code()] = Sha256File(l.corpus);
    }
  }

  const std::string config_hash = config.Hash();
  manifest.RecordConfig(config_hash, config.ToJson());

  const ManifestRecord* previous = manifest.Latest(std::string(StageName(stage)));
  if (previous != nullptr && previous->config_hash == config_hash &&
      previous->seed == config.seed && previous->inputs == inputs) {
    const bool intact = std::all_of(
        previous->outputs.begin(), previous->outputs.end(), [&](const auto& out) {
          return fs::exists(workdir / out.first) && Sha256File(workdir / out.first) == out.second;
        });
    if (intact) {
      ManifestRecord record = *previous;
      record.noop = true;
      StageResult result{stage, true, {}};
      for (const auto& [path, hash] : record.outputs) result.outputs.push_back(path);
      manifest.Append(std::move(record));
      manifest.Save(workdir);
      return result;
    }
  }

  StageResult result{stage, false, StageRunner(config, workdir).Run(stage)};
  ManifestRecord record{std::string(StageName(stage)), config_hash, config.seed, inputs, {}, false};
  for (const auto& path : result.outputs) record.outputs[path] = Sha256File(workdir / path);
  manifest.Append(std::move(record));
  manifest.Save(workdir);
  return result;
}

std::vector<StageResult> RunAll(const PipelineConfig& config, const fs::path& workdir) {
  std::vector<StageResult> results;
  for (const Stage stage : kStages) results.push_back(RunStage(stage, config, workdir));
  return results;
}

std::vector<std::string> TokenizeLine(const UnigramVocab& vocab, std::string_view line,
                                      bool normalize) {
  if (const std::size_t bad = utf8::FindInvalid(line); bad != utf8::kNoError) {
    throw DataLossError("invalid UTF-8 at byte " + std::to_string(bad));
  }
  const std::string text = normalize ? NormalizeSentence(line) : std::string(line);
  return TokenStrings(vocab, ViterbiTokenize(vocab, text));
}

}  // namespace polyvocab
