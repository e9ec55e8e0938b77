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
#include <cmath>

#include "tonelab/core/transcription.hpp"
#include "tonelab/error.hpp"
#include "tonelab/learn/loss.hpp"

namespace tonelab::learn {

inline constexpr double kDefaultBeta = 0.5;

/// |z1 + z3 - 2 z2|: zero when the three levels are collinear.
inline double linearity_margin(const PitchTriple& z) { return std::abs(z[0] + z[2] - 2.0 * z[1]); }

/// Nearest pitch level, ties away from zero, clamped to 1..5.
inline int round_level(double v) {
  return std::clamp(static_cast<int>(std::round(v)), core::kMinLevel, core::kMaxLevel);
}

/// Collapses a predicted triple to a transcription. A near-linear triple
/// (margin below beta) is a two-digit tone built from its endpoints;
/// anything else keeps all three levels.
inline core::Transcription decode_transcription(const PitchTriple& z, double beta = kDefaultBeta) {
  if (!(beta > 0.0)) throw InputError("decode: beta must be positive");
  if (linearity_margin(z) < beta) return {round_level(z[0]), round_level(z[2])};
  return {round_level(z[0]), round_level(z[1]), round_level(z[2])};
}

}  // namespace tonelab::learn
