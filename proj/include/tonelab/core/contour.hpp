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

#include <array>
#include <cmath>

#include "tonelab/core/transcription.hpp"

namespace tonelab::core {

/// Relative pitch of a transcription on [0, 1], always three points.
using NormalizedContour = std::array<double, 3>;

/// Range normalization of the digits before any midpoint expansion: highest
/// level -> 1, lowest -> 0. Two-digit tones give two values. Level tones
/// (max == min) map every point to 0.5.
inline std::array<double, 3> normalize_levels(const Transcription& t, std::size_t* count) {
  std::array<double, 3> out{};
  const int lo = t.min_level();
  const int hi = t.max_level();
  for (std::size_t i = 0; i < t.size(); ++i) {
    out[i] = (hi == lo) ? 0.5 : static_cast<double>(t[i] - lo) / (hi - lo);
  }
  *count = t.size();
  return out;
}

/// Range-normalized contour with two-digit tones expanded to three points
/// by inserting the midpoint: (y1, y2) -> (y1, (y1 + y2) / 2, y2).
inline NormalizedContour normalize_contour(const Transcription& t) {
  std::size_t n = 0;
  const auto v = normalize_levels(t, &n);
  if (n == 3) return v;
  return {v[0], 0.5 * (v[0] + v[1]), v[1]};
}

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Relative-pitch discrepancy between two transcriptions: the L1 distance
/// between their sigmoid-squashed normalized contours. Two-digit contours are
/// expanded to three points before squashing (445 vs 45 gives 0.1225;
/// squashing first would give 0.1155).
inline double variance_metric(const Transcription& l1, const Transcription& l2) {
  const auto u = normalize_contour(l1);
  const auto v = normalize_contour(l2);
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) sum += std::abs(sigmoid(u[i]) - sigmoid(v[i]));
  return sum;
}

}  // namespace tonelab::core
