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
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "tonelab/detail/format.hpp"
#include "tonelab/error.hpp"
#include "tonelab/pitch/wav.hpp"

namespace tonelab::pitch {

struct F0Config {
  double frame_ms = 40.0;
  double hop_ms = 10.0;
  double fmin = 50.0;
  double fmax = 600.0;
  double voicing_threshold = 0.15;
};

/// Frame-level F0 estimates; f0 == 0 marks an unvoiced frame. times[i] is
/// the center of frame i in seconds.
struct F0Track {
  std::vector<double> times;
  std::vector<double> f0;
  double frame_hop = 0.0;

  std::size_t size() const { return f0.size(); }
  std::size_t voiced_count() const {
    return static_cast<std::size_t>(std::count_if(f0.begin(), f0.end(), [](double v) { return v > 0.0; }));
  }
};

inline void validate(const F0Config& cfg) {
  if (!(cfg.fmin >= 50.0 && cfg.fmax <= 600.0 && cfg.fmin < cfg.fmax)) {
    throw InputError("F0 config: need 50 <= fmin < fmax <= 600 Hz");
  }
  if (!(cfg.frame_ms > 0.0 && cfg.hop_ms > 0.0)) throw InputError("F0 config: frame and hop must be positive");
  if (!(cfg.voicing_threshold > 0.0 && cfg.voicing_threshold < 1.0)) {
    throw InputError("F0 config: voicing threshold must lie in (0, 1)");
  }
}

namespace detail {

/// Per-frame YIN state: squared-difference function d, its cumulative mean
/// normalization, and the chosen lag.
class YinFrame {
 public:
  YinFrame(std::size_t window, std::size_t tau_min, std::size_t tau_max)
      : window_(window), tau_min_(tau_min), tau_max_(tau_max), diff_(tau_max + 2), cmnd_(tau_max + 2) {}

  /// F0 in Hz for the samples starting at `x`, or 0 when unvoiced. Reads
  /// window + tau_max + 1 samples.
  double estimate(const double* x, double sample_rate, double threshold) {
    double energy = 0.0;
    for (std::size_t j = 0; j < window_ + tau_max_ + 1; ++j) energy += x[j] * x[j];
    if (energy <= 1e-20 * static_cast<double>(window_)) return 0.0;

    diff_[0] = 0.0;
    for (std::size_t tau = 1; tau <= tau_max_ + 1; ++tau) {
      double s = 0.0;
      for (std::size_t j = 0; j < window_; ++j) {
        const double d = x[j] - x[j + tau];
        s += d * d;
      }
      diff_[tau] = s;
    }
    cmnd_[0] = 1.0;
    double running = 0.0;
    for (std::size_t tau = 1; tau <= tau_max_ + 1; ++tau) {
      running += diff_[tau];
      cmnd_[tau] = running > 0.0 ? diff_[tau] * static_cast<double>(tau) / running : 1.0;
    }

    std::size_t tau = tau_min_;
    for (; tau <= tau_max_; ++tau) {
      if (cmnd_[tau] < threshold) {
        while (tau + 1 <= tau_max_ && cmnd_[tau + 1] < cmnd_[tau]) ++tau;
        break;
      }
    }
    if (tau > tau_max_) return 0.0;

    // Parabolic refinement of the dip on the raw difference function.
    double shift = 0.0;
    const double a = diff_[tau - 1], b = diff_[tau], c = diff_[tau + 1];
    const double denom = a - 2.0 * b + c;
    if (denom > 0.0) shift = std::clamp(0.5 * (a - c) / denom, -1.0, 1.0);
    return sample_rate / (static_cast<double>(tau) + shift);
  }

 private:
  std::size_t window_, tau_min_, tau_max_;
  std::vector<double> diff_, cmnd_;
};

}  // namespace detail

/// YIN-style F0 tracking: squared-difference function, cumulative mean
/// normalization, first dip under the absolute threshold, parabolic
/// interpolation. Frames with no dip under the threshold, silent frames, and
/// estimates outside [fmin, fmax] are unvoiced.
inline F0Track extract_f0(const AudioClip& clip, const F0Config& cfg = {}) {
  validate(cfg);
  if (clip.samples.empty()) throw InputError("extract_f0: empty clip");
  if (clip.sample_rate < AudioClip::kMinSampleRate) {
    throw InputError("extract_f0: sample rate " + std::to_string(clip.sample_rate) + " Hz below 8000");
  }
  const double sr = clip.sample_rate;
  const auto frame_len = static_cast<std::size_t>(std::lround(cfg.frame_ms * sr / 1000.0));
  const auto hop = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg.hop_ms * sr / 1000.0)));
  const auto tau_max = static_cast<std::size_t>(std::floor(sr / cfg.fmin));
  const auto tau_min = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(sr / cfg.fmax)));
  if (frame_len < tau_max + 1 + tau_max / 2) {
    throw InputError("extract_f0: frame of " + tonelab::detail::fixed(cfg.frame_ms, 1) +
                     " ms is too short for fmin " + tonelab::detail::fixed(cfg.fmin, 1) + " Hz");
  }
  if (clip.samples.size() < frame_len) {
    throw InputError("extract_f0: clip shorter than one analysis frame");
  }
  const std::size_t window = frame_len - tau_max - 1;
  const std::size_t frames = 1 + (clip.samples.size() - frame_len) / hop;

  F0Track track;
  track.frame_hop = static_cast<double>(hop) / sr;
  track.times.resize(frames);
  track.f0.resize(frames);
  detail::YinFrame yin(window, tau_min, tau_max);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::size_t start = i * hop;
    track.times[i] = (static_cast<double>(start) + 0.5 * static_cast<double>(frame_len)) / sr;
    double f = yin.estimate(clip.samples.data() + start, sr, cfg.voicing_threshold);
    if (f < cfg.fmin || f > cfg.fmax) f = 0.0;
    track.f0[i] = f;
  }
  return track;
}

inline void write_track_csv(std::ostream& os, const F0Track& track) {
  os << "time_s,f0_hz\n";
  for (std::size_t i = 0; i < track.size(); ++i) {
    os << tonelab::detail::fixed(track.times[i], 6) << ',' << tonelab::detail::fixed(track.f0[i], 6) << '\n';
  }
}

}  // namespace tonelab::pitch
