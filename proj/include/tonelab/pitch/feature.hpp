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
#include <numeric>
#include <vector>

#include "tonelab/core/transcription.hpp"
#include "tonelab/error.hpp"
#include "tonelab/learn/decode.hpp"
#include "tonelab/pitch/f0.hpp"

namespace tonelab::pitch {

inline constexpr std::size_t kMinVoicedFrames = 5;
inline constexpr std::size_t kDefaultFeatureSize = 20;

/// K z-normalized log2-F0 samples of one syllable.
using ContourFeature = std::vector<double>;

/// Half-open frame range [begin, end) of the longest run of voiced frames,
/// earliest on ties. Throws when the run is shorter than kMinVoicedFrames.
inline std::pair<std::size_t, std::size_t> longest_voiced_run(const F0Track& track) {
  std::size_t best_begin = 0, best_len = 0;
  for (std::size_t i = 0; i < track.size();) {
    if (track.f0[i] <= 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < track.size() && track.f0[j] > 0.0) ++j;
    if (j - i > best_len) {
      best_begin = i;
      best_len = j - i;
    }
    i = j;
  }
  if (best_len < kMinVoicedFrames) {
    throw NumericError("insufficient voiced frames: longest voiced run has " + std::to_string(best_len) +
                       " frames, need " + std::to_string(kMinVoicedFrames));
  }
  return {best_begin, best_begin + best_len};
}

/// log2(F0) of the longest voiced run at `count` evenly spaced instants from
/// its first to its last frame, by linear interpolation.
inline std::vector<double> resample_log_f0(const F0Track& track, std::size_t count) {
  if (count < 2) throw InputError("resample_log_f0: need at least 2 points");
  const auto [begin, end] = longest_voiced_run(track);
  const double t0 = track.times[begin];
  const double t1 = track.times[end - 1];
  std::vector<double> out(count);
  std::size_t seg = begin;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = (k + 1 == count) ? t1 : t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(count - 1);
    while (seg + 2 < end && track.times[seg + 1] < t) ++seg;
    const double ta = track.times[seg], tb = track.times[seg + 1];
    const double la = std::log2(track.f0[seg]), lb = std::log2(track.f0[seg + 1]);
    const double w = std::clamp((t - ta) / (tb - ta), 0.0, 1.0);
    out[k] = la + w * (lb - la);
  }
  return out;
}

/// Per-utterance z-normalized log-F0 contour. The variance floor of 1e-6
/// keeps flat contours at zero instead of amplifying rounding noise.
inline ContourFeature contour_feature(const F0Track& track, std::size_t k = kDefaultFeatureSize) {
  auto v = resample_log_f0(track, k);
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(k);
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(k);
  const double scale = 1.0 / std::sqrt(std::max(var, 1e-6));
  for (double& x : v) x = (x - mean) * scale;
  return v;
}

/// Least-squares quadratic through (i, y[i]), i = 0..n-1. Returns the fitted
/// values at every i.
inline std::vector<double> quadratic_fit(const std::vector<double>& y) {
  const std::size_t n = y.size();
  const double mid = 0.5 * static_cast<double>(n - 1);
  // Normal equations in the centered variable u = i - mid.
  double s[5] = {0, 0, 0, 0, 0};
  double r[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) - mid;
    double p = 1.0;
    for (int e = 0; e < 5; ++e) {
      s[e] += p;
      if (e < 3) r[e] += p * y[i];
      p *= u;
    }
  }
  // [s0 s1 s2; s1 s2 s3; s2 s3 s4] [c0 c1 c2]^T = r, solved by Gaussian elimination.
  double m[3][4] = {{s[0], s[1], s[2], r[0]}, {s[1], s[2], s[3], r[1]}, {s[2], s[3], s[4], r[2]}};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    }
    std::swap(m[col], m[piv]);
    if (m[col][col] == 0.0) throw NumericError("quadratic_fit: singular system (need at least 3 points)");
    for (int row = col + 1; row < 3; ++row) {
      const double f = m[row][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[row][c] -= f * m[col][c];
    }
  }
  double coef[3];
  for (int row = 2; row >= 0; --row) {
    double acc = m[row][3];
    for (int c = row + 1; c < 3; ++c) acc -= m[row][c] * coef[c];
    coef[row] = acc / m[row][row];
  }
  std::vector<double> fitted(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) - mid;
    fitted[i] = coef[0] + (coef[1] + coef[2] * u) * u;
  }
  return fitted;
}

inline constexpr std::size_t kBaselinePoints = 20;
inline constexpr std::array<std::size_t, 3> kBaselinePicks = {1, 9, 18};
/// Fitted log2-F0 range (octaves) below which the contour counts as level:
/// 0.12 semitone, far above tracker jitter on a steady tone (under 1e-4)
/// and far below one pitch level.
inline constexpr double kBaselineFlatOctaves = 0.01;

/// The F0 quadratic-fit baseline before decoding: the fitted contour read at
/// the second, middle (index 9 of 0..19) and second-to-last of 20 points,
/// mapped affinely so the fitted contour's minimum is level 1 and its
/// maximum level 5. A flat fit reads as level 3.
inline learn::PitchTriple f0_baseline_triple(const F0Track& track) {
  const auto fitted = quadratic_fit(resample_log_f0(track, kBaselinePoints));
  const auto [lo, hi] = std::minmax_element(fitted.begin(), fitted.end());
  learn::PitchTriple z{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double v = fitted[kBaselinePicks[i]];
    z[i] = (*hi - *lo < kBaselineFlatOctaves) ? 3.0 : std::clamp(1.0 + 4.0 * (v - *lo) / (*hi - *lo), 1.0, 5.0);
  }
  return z;
}

inline core::Transcription f0_baseline_transcribe(const F0Track& track, double beta = learn::kDefaultBeta) {
  return learn::decode_transcription(f0_baseline_triple(track), beta);
}

}  // namespace tonelab::pitch
