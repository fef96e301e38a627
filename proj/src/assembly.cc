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

#include "polyvocab/assembly.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "json.hpp"
#include "lattice.h"
#include "parallel.h"
#include "polyvocab/error.h"
#include "polyvocab/hashing.h"
#include "polyvocab/random.h"

namespace polyvocab {

LanguageId ClusterCorpusId(int cluster_id) {
  return LanguageId("cluster-" + std::to_string(cluster_id));
}

std::map<int, SentenceCorpus> BuildClusterCorpus(
    const ClusterAssignment& clusters, const std::map<LanguageId, SentenceCorpus>& corpora,
    double temperature, const std::map<int, std::int64_t>& lines_per_cluster,
    std::uint64_t seed) {
  std::map<int, SentenceCorpus> out;
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    const int id = static_cast<int>(c);
    const auto lines = lines_per_cluster.find(id);
    if (lines == lines_per_cluster.end()) {
      throw InvalidArgumentError("no line count for cluster " + std::to_string(id));
    }
    std::map<LanguageId, std::int64_t> line_counts;
    for (const auto& lang : clusters.clusters[c]) {
      const auto it = corpora.find(lang);
      if (it == corpora.end()) {
        throw NotFoundError("no corpus for " + lang.code() + " in cluster " + std::to_string(id));
      }
      line_counts.emplace(lang, it->second.line_count());
    }
    const auto quotas = TemperatureSample(line_counts, temperature, lines->second);
    std::vector<std::string> sentences;
    for (const auto& [lang, quota] : quotas) {
      const SentenceCorpus drawn =
          DrawSample(corpora.at(lang), quota,
                     DeriveSeed(seed, "cluster/" + std::to_string(id) + "/" + lang.code()));
      sentences.insert(sentences.end(), drawn.sentences().begin(), drawn.sentences().end());
    }
    out.emplace(id, SentenceCorpus(ClusterCorpusId(id), std::move(sentences)));
  }
  return out;
}

std::map<int, SentenceCorpus> BuildClusterCorpus(
    const ClusterAssignment& clusters, const std::map<LanguageId, SentenceCorpus>& corpora,
    double temperature, std::int64_t lines, std::uint64_t seed) {
  std::map<int, std::int64_t> per_cluster;
  for (std::size_t c = 0; c < clusters.clusters.size(); ++c) {
    per_cluster[static_cast<int>(c)] = lines;
  }
  return BuildClusterCorpus(clusters, corpora, temperature, per_cluster, seed);
}

std::map<int, UnigramVocab> TrainClusterVocabs(
    const std::map<int, SentenceCorpus>& cluster_corpora,
    const std::map<int, std::int64_t>& capacities, const TrainerConfig& config, int workers) {
  std::vector<int> ids;
  for (const auto& [id, corpus] : cluster_corpora) {
    if (!capacities.contains(id)) {
      throw InvalidArgumentError("no capacity for cluster " + std::to_string(id));
    }
    ids.push_back(id);
  }
  std::vector<std::optional<UnigramVocab>> results(ids.size());
  internal::ParallelFor(ids.size(), workers, [&](std::size_t i) {
    const int id = ids[i];
    const std::int64_t capacity = capacities.at(id);
    try {
      if (capacity <= 0) throw InvalidArgumentError("capacity must be positive");
      UnigramVocab vocab = TrainUnigram(cluster_corpora.at(id),
                                        static_cast<std::size_t>(capacity), config);
      if (vocab.size() != static_cast<std::size_t>(capacity)) {
        throw InvalidArgumentError("corpus supports only " + std::to_string(vocab.size()) +
                                   " pieces, below the capacity of " + std::to_string(capacity));
      }
      results[i] = std::move(vocab);
    } catch (const Error& e) {
      throw Error(e.code(), "cluster " + std::to_string(id) + ": " + e.what());
    }
  });
  std::map<int, UnigramVocab> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], std::move(*results[i]));
  return out;
}

MultilingualVocab::MultilingualVocab(std::vector<Piece> entries,
                                     std::vector<std::vector<int>> provenance,
                                     std::map<int, std::int64_t> source_sizes)
    : entries_(std::move(entries)),
      provenance_(std::move(provenance)),
      source_sizes_(std::move(source_sizes)) {
  if (entries_.size() != provenance_.size()) {
    throw InvalidArgumentError("provenance does not cover every entry");
  }
  std::map<int, std::int64_t> counted;
  for (auto& sources : provenance_) {
    std::sort(sources.begin(), sources.end());
    if (sources.empty() || std::unique(sources.begin(), sources.end()) != sources.end()) {
      throw InvalidArgumentError("each entry needs distinct contributing clusters");
    }
    for (const int c : sources) ++counted[c];
  }
  if (counted != source_sizes_) {
    throw InvalidArgumentError("provenance disagrees with the cluster vocabulary sizes");
  }
}

std::int64_t MultilingualVocab::overlap_count() const {
  std::int64_t sum = 0;
  for (const auto& [c, n] : source_sizes_) sum += n;
  return sum - static_cast<std::int64_t>(entries_.size());
}

UnigramVocab MultilingualVocab::ToUnigramVocab() const { return UnigramVocab(entries_); }

MultilingualVocab MergeVocabs(const std::map<int, UnigramVocab>& cluster_vocabs) {
  if (cluster_vocabs.empty()) throw InvalidArgumentError("no cluster vocabularies to merge");
  struct Merged {
    double log_prob = -std::numeric_limits<double>::infinity();
    std::vector<int> sources;
  };
  std::map<std::string, Merged, std::less<>> merged;
  std::map<int, std::int64_t> source_sizes;
  for (const auto& [cluster, vocab] : cluster_vocabs) {
    source_sizes[cluster] = static_cast<std::int64_t>(vocab.size());
    for (const Piece& p : vocab.pieces()) {
      Merged& m = merged[p.token];
      m.log_prob = std::max(m.log_prob, p.log_prob);
      m.sources.push_back(cluster);
    }
  }
  double log_z = -std::numeric_limits<double>::infinity();
  for (const auto& [token, m] : merged) log_z = internal::LogAdd(log_z, m.log_prob);
  std::vector<Piece> pieces;
  pieces.reserve(merged.size());
  for (const auto& [token, m] : merged) {
    pieces.push_back({token, std::min(0.0, m.log_prob - log_z)});
  }
  pieces = SortedPieces(std::move(pieces));
  std::vector<std::vector<int>> provenance;
  provenance.reserve(pieces.size());
  for (const Piece& p : pieces) provenance.push_back(merged.find(p.token)->second.sources);
  return MultilingualVocab(std::move(pieces), std::move(provenance), std::move(source_sizes));
}

ExportedVocab FormatMultilingualVocab(const MultilingualVocab& vocab) {
  ExportedVocab out{FormatVocab(vocab.ToUnigramVocab()), {}};
  nlohmann::json provenance = nlohmann::json::object();
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    provenance[std::to_string(i)] = vocab.provenance()[i];
  }
  nlohmann::json sizes = nlohmann::json::object();
  for (const auto& [c, n] : vocab.source_sizes()) sizes[std::to_string(c)] = n;
  out.provenance_json =
      nlohmann::json{{"provenance", provenance}, {"source_sizes", sizes}}.dump(1) + "\n";
  return out;
}

MultilingualVocab ParseMultilingualVocab(std::string_view vocab_tsv,
                                         std::string_view provenance_json) {
  const UnigramVocab vocab = ParseVocab(vocab_tsv);
  if (SortedPieces(vocab.pieces()) != vocab.pieces()) {
    throw DataLossError("multilingual vocab entries are not in canonical order");
  }
  try {
    const auto doc = nlohmann::json::parse(provenance_json);
    std::vector<std::vector<int>> provenance(vocab.size());
    std::vector<bool> filled(vocab.size(), false);
    for (const auto& [key, sources] : doc.at("provenance").items()) {
      std::size_t used = 0;
      const unsigned long index = std::stoul(key, &used);
      if (used != key.size() || index >= vocab.size() || filled[index]) {
        throw DataLossError("provenance sidecar: bad token index '" + key + "'");
      }
      provenance[index] = sources.get<std::vector<int>>();
      filled[index] = true;
    }
    if (std::find(filled.begin(), filled.end(), false) != filled.end()) {
      throw DataLossError("provenance sidecar does not cover every token");
    }
    std::map<int, std::int64_t> sizes;
    for (const auto& [key, n] : doc.at("source_sizes").items()) {
      sizes[std::stoi(key)] = n.get<std::int64_t>();
    }
    return MultilingualVocab(vocab.pieces(), std::move(provenance), std::move(sizes));
  } catch (const nlohmann::json::exception& e) {
    throw DataLossError(std::string("provenance sidecar: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDataLoss) throw;
    throw DataLossError(std::string("provenance sidecar: ") + e.what());
  } catch (const std::logic_error& e) {
    throw DataLossError(std::string("provenance sidecar: ") + e.what());
  }
}

std::filesystem::path ProvenancePath(const std::filesystem::path& vocab_path) {
  std::filesystem::path p = vocab_path;
  p += ".provenance.json";
  return p;
}

void ExportVocab(const MultilingualVocab& vocab, const std::filesystem::path& path) {
  const ExportedVocab files = FormatMultilingualVocab(vocab);
  WriteStringToFile(path, files.vocab_tsv);
  WriteStringToFile(ProvenancePath(path), files.provenance_json);
}

MultilingualVocab ImportVocab(const std::filesystem::path& path) {
  return ParseMultilingualVocab(ReadFileToString(path), ReadFileToString(ProvenancePath(path)));
}

}  // namespace polyvocab
