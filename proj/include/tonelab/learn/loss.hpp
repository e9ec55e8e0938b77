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
#include <span>
#include <utility>

#include "tonelab/core/transcription.hpp"
#include "tonelab/error.hpp"

namespace tonelab::learn {

/// Three predicted pitch levels (start, middle, end), each in [1, 5].
using PitchTriple = std::array<double, 3>;

inline bool is_valid(const PitchTriple& z) {
  for (double v : z) {
    if (!std::isfinite(v) || v < core::kMinLevel || v > core::kMaxLevel) return false;
  }
  return true;
}

/// Label as three target levels. Two-digit labels get their midpoint in the
/// middle slot, which makes the two-digit loss a special case of the
/// three-digit one.
inline std::array<double, 3> target_levels(const core::Transcription& y) {
  if (y.size() == 3) return {double(y[0]), double(y[1]), double(y[2])};
  return {double(y[0]), 0.5 * (y[0] + y[1]), double(y[1])};
}

/// L1 discrepancy between a predicted triple and a label.
///   |y| = 3: |z1 - y1| + |z2 - y2| + |z3 - y3|
///   |y| = 2: |z1 - y1| + |z3 - y2| + |z2 - (y1 + y2) / 2|
inline double pitch_distance_hat(const PitchTriple& z, const core::Transcription& y) {
  if (y.size() == 3) {
    return std::abs(z[0] - y[0]) + std::abs(z[1] - y[1]) + std::abs(z[2] - y[2]);
  }
  return std::abs(z[0] - y[0]) + std::abs(z[2] - y[1]) + std::abs(z[1] - 0.5 * (y[0] + y[1]));
}

/// Sum of pitch_distance_hat over the batch, in batch order.
inline double pitch_loss(std::span<const std::pair<PitchTriple, core::Transcription>> batch) {
  if (batch.empty()) throw InputError("pitch_loss: empty batch");
  double sum = 0.0;
  for (const auto& [z, y] : batch) sum += pitch_distance_hat(z, y);
  return sum;
}

/// Sign subgradient of pitch_distance_hat with respect to z. Components whose
/// absolute-value argument is exactly zero get 0.
inline std::array<double, 3> pitch_loss_subgradient(const PitchTriple& z,
                                                    const core::Transcription& y) {
  const auto t = target_levels(y);
  std::array<double, 3> g{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double d = z[i] - t[i];
    g[i] = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  }
  return g;
}

}  // namespace tonelab::learn
