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

#ifndef POLYVOCAB_ASSEMBLY_H_
#define POLYVOCAB_ASSEMBLY_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polyvocab/clustering.h"
#include "polyvocab/corpus.h"
#include "polyvocab/unigram_model.h"
#include "polyvocab/unigram_trainer.h"

namespace polyvocab {

LanguageId ClusterCorpusId(int cluster_id);

// Temperature-samples |lines_per_cluster[c]| lines over the members of each
// cluster and concatenates the member samples in language order.
std::map<int, SentenceCorpus> BuildClusterCorpus(
    const ClusterAssignment& clusters, const std::map<LanguageId, SentenceCorpus>& corpora,
    double temperature, const std::map<int, std::int64_t>& lines_per_cluster,
    std::uint64_t seed);

// Same number of lines for every cluster.
std::map<int, SentenceCorpus> BuildClusterCorpus(
    const ClusterAssignment& clusters, const std::map<LanguageId, SentenceCorpus>& corpora,
    double temperature, std::int64_t lines, std::uint64_t seed);

// Trains each cluster's vocabulary at exactly its capacity, using up to
// |workers| threads. Failures are reported with the cluster id.
std::map<int, UnigramVocab> TrainClusterVocabs(
    const std::map<int, SentenceCorpus>& cluster_corpora,
    const std::map<int, std::int64_t>& capacities, const TrainerConfig& config,
    int workers = 1);

// Union of per-cluster vocabularies with provenance.
//
// Entries are in vocab-file order (unknown token at index 0, then descending
// log-probability, then token). A token found in several clusters keeps its
// largest log-probability before the whole table is renormalized.
class MultilingualVocab {
 public:
  MultilingualVocab(std::vector<Piece> entries, std::vector<std::vector<int>> provenance,
                    std::map<int, std::int64_t> source_sizes);

  const std::vector<Piece>& entries() const { return entries_; }
  // Sorted cluster ids that contributed each entry.
  const std::vector<std::vector<int>>& provenance() const { return provenance_; }
  const std::map<int, std::int64_t>& source_sizes() const { return source_sizes_; }
  std::size_t size() const { return entries_.size(); }
  // Sum of source sizes minus the number of distinct entries.
  std::int64_t overlap_count() const;

  UnigramVocab ToUnigramVocab() const;

 private:
  std::vector<Piece> entries_;
  std::vector<std::vector<int>> provenance_;
  std::map<int, std::int64_t> source_sizes_;
};

MultilingualVocab MergeVocabs(const std::map<int, UnigramVocab>& cluster_vocabs);

// The vocabulary TSV plus a JSON sidecar
// {"provenance": {token_index: [cluster ids]}, "source_sizes": {cluster: size}}.
struct ExportedVocab {
  std::string vocab_tsv;
  std::string provenance_json;
};
ExportedVocab FormatMultilingualVocab(const MultilingualVocab& vocab);
MultilingualVocab ParseMultilingualVocab(std::string_view vocab_tsv,
                                         std::string_view provenance_json);

std::filesystem::path ProvenancePath(const std::filesystem::path& vocab_path);
void ExportVocab(const MultilingualVocab& vocab, const std::filesystem::path& path);
MultilingualVocab ImportVocab(const std::filesystem::path& path);

}  // namespace polyvocab

#endif  // POLYVOCAB_ASSEMBLY_H_
