// Copyright 2026 The ToneLab Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tonelab/cluster/assignment.hpp"
#include "tonelab/cluster/hierarchical.hpp"
#include "tonelab/cluster/mds.hpp"
#include "tonelab/core/curve.hpp"
#include "tonelab/core/distance_matrix.hpp"
#include "tonelab/detail/parallel.hpp"
#include "tonelab/dialect/corpus.hpp"
#include "tonelab/error.hpp"

namespace tonelab::dialect {

enum class Metric { kTone2Vec, kCategorical };

inline std::string_view metric_name(Metric m) { return m == Metric::kTone2Vec ? "tone2vec" : "categorical"; }

inline Metric parse_metric(std::string_view s) {
  if (s == "tone2vec") return Metric::kTone2Vec;
  if (s == "categorical") return Metric::kCategorical;
  throw InputError("unknown metric '" + std::string(s) + "' (expected tone2vec or categorical)");
}

struct RegionDistance {
  double value = 0.0;
  std::size_t shared = 0;
  /// Words present in only one of the two lexicons.
  std::size_t skipped = 0;
};

/// Mean per-word distance over the words both regions transcribe.
inline RegionDistance region_distance(const RegionLexicon& a, const RegionLexicon& b, Metric metric) {
  RegionDistance out;
  double sum = 0.0;
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  // Both maps are sorted by word id: merge-walk them.
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      ++out.skipped;
      ++ia;
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      ++out.skipped;
      ++ib;
    } else {
      sum += metric == Metric::kTone2Vec ? core::lookup_distance(ia->second, ib->second)
                                         : core::categorical_distance(ia->second, ib->second);
      ++out.shared;
      ++ia;
      ++ib;
    }
  }
  if (out.shared == 0) {
    throw InputError("region_distance: regions " + a.region_id + " and " + b.region_id + " share no words");
  }
  out.value = sum / static_cast<double>(out.shared);
  return out;
}

struct CoverageWarning {
  std::string first;
  std::string second;
  std::size_t skipped = 0;
};

struct RegionMatrix {
  core::DistanceMatrix distances;
  std::vector<CoverageWarning> warnings;
};

/// Region x region mean distances in corpus order, plus one coverage warning
/// per pair that had unshared words.
inline RegionMatrix region_distance_matrix(const DialectCorpus& corpus, Metric metric) {
  const std::size_t n = corpus.regions.size();
  if (n < 2) throw InputError("need at least 2 regions for pairwise analysis");
  std::vector<double> values(n * n, 0.0);
  std::vector<std::size_t> skipped(n * n, 0);
  tonelab::detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto r = region_distance(corpus.regions[i], corpus.regions[j], metric);
      values[i * n + j] = r.value;
      skipped[i * n + j] = r.skipped;
    }
  });
  RegionMatrix out;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(corpus.regions[i].region_id);
    for (std::size_t j = i + 1; j < n; ++j) {
      values[j * n + i] = values[i * n + j];
      if (skipped[i * n + j] > 0) {
        out.warnings.push_back({corpus.regions[i].region_id, corpus.regions[j].region_id, skipped[i * n + j]});
      }
    }
  }
  out.distances = core::DistanceMatrix(std::move(labels), std::move(values));
  return out;
}

struct LinkageReport {
  cluster::Linkage linkage = cluster::Linkage::kSingle;
  cluster::Dendrogram dendrogram;
  cluster::ClusterAssignment assignment;
  std::optional<double> accuracy;
};

struct DialectClusterReport {
  Metric metric = Metric::kTone2Vec;
  std::size_t k = 2;
  std::vector<std::string> regions;
  std::vector<LinkageReport> linkages;
  std::vector<CoverageWarning> warnings;
};

/// Region distances -> agglomerative clustering -> two-way cut, scored
/// against the gold labels when the corpus has them. One report per linkage
/// in `linkages`.
inline DialectClusterReport dialect_cluster_pipeline(const DialectCorpus& corpus, Metric metric,
                                                     std::span<const cluster::Linkage> linkages) {
  if (corpus.regions.size() < 2) throw InputError("dialect clustering needs at least 2 regions");
  auto rm = region_distance_matrix(corpus, metric);
  DialectClusterReport report;
  report.metric = metric;
  report.regions = rm.distances.labels();
  report.warnings = std::move(rm.warnings);
  for (const auto l : linkages) {
    LinkageReport lr;
    lr.linkage = l;
    lr.dendrogram = cluster::hierarchical_cluster(rm.distances, l);
    lr.assignment = cluster::cut_tree(lr.dendrogram, report.k);
    if (corpus.gold) lr.accuracy = cluster::two_cluster_accuracy(lr.assignment, corpus.gold_vector());
    report.linkages.push_back(std::move(lr));
  }
  return report;
}

inline DialectClusterReport dialect_cluster_pipeline(const DialectCorpus& corpus, Metric metric,
                                                     cluster::Linkage linkage) {
  const cluster::Linkage one[] = {linkage};
  return dialect_cluster_pipeline(corpus, metric, one);
}

/// One-dimensional classical MDS of the region distances; the coordinate
/// gaps between regions read as tonal variance.
inline cluster::MdsResult dialect_variance_map(const DialectCorpus& corpus, Metric metric, std::size_t dims = 1) {
  return cluster::classical_mds(region_distance_matrix(corpus, metric).distances, dims);
}

}  // namespace tonelab::dialect
