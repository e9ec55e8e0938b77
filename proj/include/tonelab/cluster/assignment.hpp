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
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tonelab/error.hpp"

namespace tonelab::cluster {

inline constexpr int kNoise = -1;

/// Cluster id per item, contiguous from 0; kNoise for points a density
/// clustering leaves unassigned.
struct ClusterAssignment {
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }
  int cluster_count() const {
    int top = -1;
    for (int l : labels) top = std::max(top, l);
    return top + 1;
  }
  std::size_t noise_count() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kNoise));
  }
};

/// Agreement with binary gold labels, maximized over the two ways of
/// matching predicted clusters {0, 1} to gold classes {0, 1}.
inline double two_cluster_accuracy(const ClusterAssignment& pred, std::span<const int> gold) {
  if (pred.size() != gold.size()) {
    throw InputError("two_cluster_accuracy: " + std::to_string(pred.size()) + " predictions vs " +
                     std::to_string(gold.size()) + " gold labels");
  }
  if (pred.size() == 0) throw InputError("two_cluster_accuracy: no items");
  std::size_t same = 0, flipped = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int p = pred.labels[i];
    if (p != 0 && p != 1) throw InputError("two_cluster_accuracy: prediction uses more than 2 clusters");
    if (gold[i] != 0 && gold[i] != 1) throw InputError("two_cluster_accuracy: gold labels must be 0 or 1");
    if (p == gold[i]) ++same;
    else ++flipped;
  }
  return static_cast<double>(std::max(same, flipped)) / static_cast<double>(gold.size());
}

}  // namespace tonelab::cluster
