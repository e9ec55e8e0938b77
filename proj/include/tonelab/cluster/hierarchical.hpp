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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "tonelab/cluster/assignment.hpp"
#include "tonelab/core/distance_matrix.hpp"
#include "tonelab/detail/format.hpp"
#include "tonelab/error.hpp"

namespace tonelab::cluster {

/// The seven agglomeration rules, named by their dialectometry short codes.
enum class Linkage {
  kSingle,            // sl
  kComplete,          // cl
  kGroupAverage,      // ga, UPGMA
  kWeightedAverage,   // wa, WPGMA
  kCentroid,          // uc, UPGMC
  kMedian,            // wc, WPGMC
  kWard,              // mv, minimum variance
};

inline constexpr std::array<Linkage, 7> kAllLinkages = {
    Linkage::kSingle,   Linkage::kComplete, Linkage::kGroupAverage, Linkage::kWeightedAverage,
    Linkage::kCentroid, Linkage::kMedian,   Linkage::kWard};

inline std::string_view linkage_code(Linkage l) {
  switch (l) {
    case Linkage::kSingle: return "sl";
    case Linkage::kComplete: return "cl";
    case Linkage::kGroupAverage: return "ga";
    case Linkage::kWeightedAverage: return "wa";
    case Linkage::kCentroid: return "uc";
    case Linkage::kMedian: return "wc";
    case Linkage::kWard: return "mv";
  }
  return "?";
}

inline Linkage parse_linkage(std::string_view code) {
  for (Linkage l : kAllLinkages) {
    if (linkage_code(l) == code) return l;
  }
  throw InputError("unknown linkage '" + std::string(code) + "' (expected sl, cl, ga, wa, uc, wc or mv)");
}

/// Centroid, median and Ward updates are defined on squared dissimilarities.
inline bool uses_squared(Linkage l) {
  return l == Linkage::kCentroid || l == Linkage::kMedian || l == Linkage::kWard;
}

/// One agglomeration step. Original items are clusters 0..n-1; the cluster
/// formed at step s gets id n + s. first < second.
struct Merge {
  std::size_t first = 0;
  std::size_t second = 0;
  double height = 0.0;
  std::size_t size = 0;
};

/// n - 1 merges in order. Heights of sl/cl/ga/wa/mv never decrease; uc and wc
/// may produce inversions, which are kept as computed.
struct Dendrogram {
  std::size_t leaves = 0;
  Linkage linkage = Linkage::kSingle;
  std::vector<Merge> merges;
};

/// Lance-Williams update of the dissimilarity between the merge of i and j
/// and a third cluster k. For squared linkages every argument is squared.
inline double lance_williams(Linkage l, double d_ik, double d_jk, double d_ij, double n_i, double n_j,
                             double n_k) {
  switch (l) {
    case Linkage::kSingle: return std::min(d_ik, d_jk);
    case Linkage::kComplete: return std::max(d_ik, d_jk);
    case Linkage::kGroupAverage: return (n_i * d_ik + n_j * d_jk) / (n_i + n_j);
    case Linkage::kWeightedAverage: return 0.5 * (d_ik + d_jk);
    case Linkage::kCentroid: {
      const double s = n_i + n_j;
      return (n_i * d_ik + n_j * d_jk) / s - n_i * n_j * d_ij / (s * s);
    }
    case Linkage::kMedian: return 0.5 * d_ik + 0.5 * d_jk - 0.25 * d_ij;
    case Linkage::kWard:
      return ((n_i + n_k) * d_ik + (n_j + n_k) * d_jk - n_k * d_ij) / (n_i + n_j + n_k);
  }
  return 0.0;
}

/// Agglomerative clustering on a precomputed dissimilarity matrix.
///
/// At each step the pair with the smallest current dissimilarity merges.
/// Equal dissimilarities are resolved by the pair of smallest member item
/// indices, compared lexicographically, so results do not depend on
/// floating-point accident or container order. uc, wc and mv run on squared
/// input and report heights as the square root (negative squared values,
/// possible on non-Euclidean input, report as 0).
inline Dendrogram hierarchical_cluster(const core::DistanceMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  if (n < 2) throw InputError("hierarchical_cluster: need at least 2 items");
  const bool squared = uses_squared(linkage);

  std::vector<double> work(n * n);
  for (std::size_t i = 0; i < n * n; ++i) work[i] = squared ? d.values()[i] * d.values()[i] : d.values()[i];
  auto at = [&](std::size_t i, std::size_t j) -> double& { return work[i * n + j]; };

  std::vector<std::size_t> id(n), size(n, 1), key(n);
  std::iota(id.begin(), id.end(), 0);
  std::iota(key.begin(), key.end(), 0);
  std::vector<bool> active(n, true);

  Dendrogram dg{n, linkage, {}};
  dg.merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = n, bj = n;
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_key{n, n};
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double v = at(i, j);
        const std::pair<std::size_t, std::size_t> k{std::min(key[i], key[j]), std::max(key[i], key[j])};
        if (v < best || (v == best && k < best_key)) {
          best = v;
          best_key = k;
          bi = i;
          bj = j;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]);
    const double nj = static_cast<double>(size[bj]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double v = lance_williams(linkage, at(bi, k), at(bj, k), best, ni, nj, static_cast<double>(size[k]));
      at(bi, k) = v;
      at(k, bi) = v;
    }
    Merge m;
    m.first = std::min(id[bi], id[bj]);
    m.second = std::max(id[bi], id[bj]);
    m.height = squared ? std::sqrt(std::max(best, 0.0)) : best;
    m.size = size[bi] + size[bj];
    dg.merges.push_back(m);

    id[bi] = n + step;
    size[bi] += size[bj];
    key[bi] = std::min(key[bi], key[bj]);
    active[bj] = false;
  }
  return dg;
}

/// Flat partition into k clusters: the first n - k merges are applied.
/// Clusters are numbered 0..k-1 in order of their smallest item.
inline ClusterAssignment cut_tree(const Dendrogram& dg, std::size_t k) {
  const std::size_t n = dg.leaves;
  if (k < 1 || k > n) {
    throw InputError("cut_tree: k = " + std::to_string(k) + " outside 1.." + std::to_string(n));
  }
  // Union-find over cluster ids 0 .. 2n-2.
  std::vector<std::size_t> parent(2 * n - 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s < n - k; ++s) {
    const Merge& m = dg.merges[s];
    parent[find(m.first)] = n + s;
    parent[find(m.second)] = n + s;
  }
  ClusterAssignment out;
  out.labels.assign(n, -1);
  std::vector<int> root_label(2 * n - 1, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (root_label[r] < 0) root_label[r] = next++;
    out.labels[i] = root_label[r];
  }
  return out;
}

/// Merge table CSV: step,first,second,height,size.
inline void write_dendrogram_csv(std::ostream& os, const Dendrogram& dg) {
  os << "step,first,second,height,size\n";
  for (std::size_t s = 0; s < dg.merges.size(); ++s) {
    const Merge& m = dg.merges[s];
    os << s << ',' << m.first << ',' << m.second << ',' << tonelab::detail::fixed(m.height, 6) << ','
       << m.size << '\n';
  }
}

}  // namespace tonelab::cluster
