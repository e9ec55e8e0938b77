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

#include <cmath>
#include <cstddef>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "tonelab/cluster/assignment.hpp"
#include "tonelab/detail/parallel.hpp"
#include "tonelab/error.hpp"

namespace tonelab::cluster {

inline constexpr double kDefaultEps = 0.6;
inline constexpr std::size_t kDefaultMinSamples = 4;

using Point = std::vector<double>;

inline double euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Density clustering. A point is core when at least `min_samples` points,
/// itself included, lie within `eps` (inclusive). Clusters grow from core
/// points in ascending index order by breadth-first expansion; a border
/// point reachable from several clusters joins the first one that reaches
/// it. Everything else is kNoise.
inline ClusterAssignment dbscan(std::span<const Point> points, double eps = kDefaultEps,
                                std::size_t min_samples = kDefaultMinSamples) {
  if (points.empty()) throw InputError("dbscan: no points");
  if (!(eps > 0.0)) throw InputError("dbscan: eps must be positive");
  if (min_samples < 1) throw InputError("dbscan: min_samples must be at least 1");
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != dim) {
      throw InputError("dbscan: point " + std::to_string(i) + " has dimension " +
                       std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
    }
  }

  std::vector<std::vector<std::size_t>> neighbors(n);
  tonelab::detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (euclidean(points[i], points[j]) <= eps) neighbors[i].push_back(j);
    }
  });

  constexpr int kUnvisited = -2;
  ClusterAssignment out;
  out.labels.assign(n, kUnvisited);
  int cluster = 0;
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.labels[i] != kUnvisited) continue;
    if (neighbors[i].size() < min_samples) {
      out.labels[i] = kNoise;  // may still become a border point later
      continue;
    }
    out.labels[i] = cluster;
    queue.assign(neighbors[i].begin(), neighbors[i].end());
    while (!queue.empty()) {
      const std::size_t q = queue.front();
      queue.pop_front();
      if (out.labels[q] == kNoise) out.labels[q] = cluster;
      if (out.labels[q] != kUnvisited) continue;
      out.labels[q] = cluster;
      if (neighbors[q].size() >= min_samples) {
        queue.insert(queue.end(), neighbors[q].begin(), neighbors[q].end());
      }
    }
    ++cluster;
  }
  return out;
}

}  // namespace tonelab::cluster
