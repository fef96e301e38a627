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

#ifndef POLYVOCAB_CLUSTERING_H_
#define POLYVOCAB_CLUSTERING_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyvocab/corpus.h"
#include "polyvocab/fingerprint.h"

namespace polyvocab {

enum class DistanceMetric {
  kEuclidean,
  kCosine,  // Euclidean on L2-normalized vectors
};

DistanceMetric ParseDistanceMetric(std::string_view name);
std::string_view DistanceMetricName(DistanceMetric metric);

struct ClusterAssignment {
  // clusters[c] lists member languages in input order. Cluster ids are
  // numbered by first appearance in the input.
  std::vector<std::vector<LanguageId>> clusters;
  std::vector<int> labels;  // cluster id of each input fingerprint
  std::vector<std::vector<double>> centroids;
  double inertia = 0.0;
  // Inertia after each Lloyd iteration's centroid update.
  std::vector<double> inertia_history;
  int iterations = 0;
  std::uint64_t seed = 0;

  int ClusterOf(const LanguageId& language) const;
};

// Lloyd's algorithm with seeded k-means++ initialization. Runs until the
// assignment stops changing or |max_iters| iterations. A cluster left empty
// takes the point farthest from its own centroid among clusters with more
// than one member.
ClusterAssignment KMeans(std::span<const LexicalFingerprint> fingerprints, int k,
                         std::uint64_t seed, int max_iters = 100,
                         DistanceMetric metric = DistanceMetric::kEuclidean);

// Lowest-inertia run over |seeds|; ties go to the lowest seed.
ClusterAssignment BestOfRestarts(std::span<const LexicalFingerprint> fingerprints, int k,
                                 std::span<const std::uint64_t> seeds, int max_iters = 100,
                                 DistanceMetric metric = DistanceMetric::kEuclidean);

// "cluster_id<TAB>language" lines in cluster order.
std::string FormatClusterTsv(const ClusterAssignment& assignment);
// Membership only: centroids and inertia are not part of the TSV.
ClusterAssignment ParseClusterTsv(std::string_view text);

}  // namespace polyvocab

#endif  // POLYVOCAB_CLUSTERING_H_
