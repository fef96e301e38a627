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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polyvocab/error.h"
#include "polyvocab/random.h"

namespace polyvocab {
namespace {

using Point = std::vector<double>;

double SquaredDistance(const Point& a, const Point& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

std::vector<Point> PrepareInput(std::span<const LexicalFingerprint> fingerprints, int k,
                                DistanceMetric metric) {
  if (fingerprints.empty()) throw InvalidArgumentError("no fingerprints to cluster");
  if (k < 1) throw InvalidArgumentError("k must be positive");
  if (static_cast<std::size_t>(k) > fingerprints.size()) {
    throw InvalidArgumentError("k = " + std::to_string(k) + " exceeds the number of languages (" +
                               std::to_string(fingerprints.size()) + ")");
  }
  const std::size_t dim = fingerprints.front().values.size();
  std::vector<Point> points;
  points.reserve(fingerprints.size());
  for (const auto& fp : fingerprints) {
    if (fp.values.size() != dim) {
      throw InvalidArgumentError("fingerprint dimension mismatch for " + fp.language.code());
    }
    Point p = fp.values;
    if (metric == DistanceMetric::kCosine) {
      double norm = 0.0;
      for (const double v : p) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (double& v : p) v /= norm;
      }
    }
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<Point> KMeansPlusPlus(const std::vector<Point>& points, int k, Rng& rng) {
  const std::size_t n = points.size();
  std::vector<Point> centers;
  std::vector<bool> chosen(n, false);
  std::size_t first = rng.Below(n);
  centers.push_back(points[first]);
  chosen[first] = true;
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = SquaredDistance(points[i], centers[0]);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += chosen[i] ? 0.0 : d2[i];
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i] || d2[i] == 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > target) break;
      }
    } else {
      // Every remaining point coincides with a center.
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (!chosen[i]) pick = i;
      }
    }
    chosen[pick] = true;
    centers.push_back(points[pick]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], SquaredDistance(points[i], centers.back()));
    }
  }
  return centers;
}

int Nearest(const Point& p, const std::vector<Point>& centers) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = SquaredDistance(p, centers[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

void RepairEmptyClusters(const std::vector<Point>& points, const std::vector<Point>& centers,
                         int k, std::vector<int>* labels) {
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (const int l : *labels) ++sizes[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] > 0) continue;
    std::size_t farthest = points.size();
    double farthest_d = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int from = (*labels)[i];
      if (sizes[static_cast<std::size_t>(from)] < 2) continue;
      const double d = SquaredDistance(points[i], centers[static_cast<std::size_t>(from)]);
      if (d > farthest_d) {
        farthest_d = d;
        farthest = i;
      }
    }
    --sizes[static_cast<std::size_t>((*labels)[farthest])];
    (*labels)[farthest] = c;
    ++sizes[static_cast<std::size_t>(c)];
  }
}

std::vector<Point> Centroids(const std::vector<Point>& points, const std::vector<int>& labels,
                             int k) {
  const std::size_t dim = points.front().size();
  std::vector<Point> centers(static_cast<std::size_t>(k), Point(dim, 0.0));
  std::vector<double> sizes(static_cast<std::size_t>(k), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& c = centers[static_cast<std::size_t>(labels[i])];
    for (std::size_t d = 0; d < dim; ++d) c[d] += points[i][d];
    sizes[static_cast<std::size_t>(labels[i])] += 1.0;
  }
  for (std::size_t c = 0; c < centers.size(); ++c) {
    for (double& v : centers[c]) v /= sizes[c];
  }
  return centers;
}

double Inertia(const std::vector<Point>& points, const std::vector<int>& labels,
               const std::vector<Point>& centers) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sum += SquaredDistance(points[i], centers[static_cast<std::size_t>(labels[i])]);
  }
  return sum;
}

}  // namespace

DistanceMetric ParseDistanceMetric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::kEuclidean;
  if (name == "cosine") return DistanceMetric::kCosine;
  throw InvalidArgumentError("unknown distance metric '" + std::string(name) + "'");
}

std::string_view DistanceMetricName(DistanceMetric metric) {
  return metric == DistanceMetric::kEuclidean ? "euclidean" : "cosine";
}

int ClusterAssignment::ClusterOf(const LanguageId& language) const {
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (std::find(clusters[c].begin(), clusters[c].end(), language) != clusters[c].end()) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

ClusterAssignment KMeans(std::span<const LexicalFingerprint> fingerprints, int k,
                         std::uint64_t seed, int max_iters, DistanceMetric metric) {
  if (max_iters < 1) throw InvalidArgumentError("max_iters must be positive");
  const std::vector<Point> points = PrepareInput(fingerprints, k, metric);
  Rng rng(seed);
  std::vector<Point> centers = KMeansPlusPlus(points, k, rng);

  ClusterAssignment out;
  out.seed = seed;
  std::vector<int> labels;
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> next(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) next[i] = Nearest(points[i], centers);
    RepairEmptyClusters(points, centers, k, &next);
    const bool converged = next == labels;
    labels = std::move(next);
    centers = Centroids(points, labels, k);
    out.inertia_history.push_back(Inertia(points, labels, centers));
    out.iterations = iter + 1;
    if (converged) break;
  }

  // Renumber clusters by first appearance.
  std::vector<int> relabel(static_cast<std::size_t>(k), -1);
  int next_id = 0;
  for (const int l : labels) {
    if (relabel[static_cast<std::size_t>(l)] < 0) relabel[static_cast<std::size_t>(l)] = next_id++;
  }
  out.clusters.resize(static_cast<std::size_t>(k));
  out.centroids.resize(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    out.centroids[static_cast<std::size_t>(relabel[static_cast<std::size_t>(c)])] =
        std::move(centers[static_cast<std::size_t>(c)]);
  }
  out.labels.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.labels[i] = relabel[static_cast<std::size_t>(labels[i])];
    out.clusters[static_cast<std::size_t>(out.labels[i])].push_back(fingerprints[i].language);
  }
  out.inertia = out.inertia_history.back();
  return out;
}

ClusterAssignment BestOfRestarts(std::span<const LexicalFingerprint> fingerprints, int k,
                                 std::span<const std::uint64_t> seeds, int max_iters,
                                 DistanceMetric metric) {
  if (seeds.empty()) throw InvalidArgumentError("no restart seeds given");
  std::vector<std::uint64_t> ordered(seeds.begin(), seeds.end());
  std::sort(ordered.begin(), ordered.end());
  ClusterAssignment best = KMeans(fingerprints, k, ordered.front(), max_iters, metric);
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i] == ordered[i - 1]) continue;
    ClusterAssignment run = KMeans(fingerprints, k, ordered[i], max_iters, metric);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

std::string FormatClusterTsv(const ClusterAssignment& assignment) {
  std::string out;
  for (std::size_t c = 0; c < assignment.clusters.size(); ++c) {
    for (const auto& lang : assignment.clusters[c]) {
      out += std::to_string(c) + '\t' + lang.code() + '\n';
    }
  }
  return out;
}

ClusterAssignment ParseClusterTsv(std::string_view text) {
  ClusterAssignment out;
  std::size_t line_no = 0;
  std::map<LanguageId, int> seen;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    const std::string line(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    const std::size_t tab = line.find('\t');
    int id = -1;
    try {
      std::size_t used = 0;
      id = std::stoi(line.substr(0, tab), &used);
      if (tab == std::string::npos || used != tab || id < 0) throw std::invalid_argument("id");
    } catch (const std::exception&) {
      throw DataLossError("cluster file line " + std::to_string(line_no) +
                          ": expected cluster_id<TAB>language");
    }
    LanguageId lang(line.substr(tab + 1));
    if (!seen.emplace(lang, id).second) {
      throw DataLossError("cluster file line " + std::to_string(line_no) +
                          ": language listed twice");
    }
    if (static_cast<std::size_t>(id) >= out.clusters.size()) out.clusters.resize(id + 1);
    out.clusters[static_cast<std::size_t>(id)].push_back(lang);
    out.labels.push_back(id);
  }
  for (std::size_t c = 0; c < out.clusters.size(); ++c) {
    if (out.clusters[c].empty()) {
      throw DataLossError("cluster file: cluster " + std::to_string(c) + " has no members");
    }
  }
  return out;
}

}  // namespace polyvocab
