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

#include "tonelab/core/transcription.hpp"

namespace tonelab::core {

/// Simulated pitch trajectory f(x) = a x^2 + b x + c on the fixed domain
/// x in [1, 3]. Knots sit at x = 1, 2, 3 (start, middle, end of the syllable).
struct PitchCurve {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static constexpr double kDomainBegin = 1.0;
  static constexpr double kDomainEnd = 3.0;

  double operator()(double x) const { return (a * x + b) * x + c; }

  /// Antiderivative with zero constant term.
  double primitive(double x) const { return ((a / 3.0 * x + b / 2.0) * x + c) * x; }

  friend PitchCurve operator-(const PitchCurve& l, const PitchCurve& r) {
    return {l.a - r.a, l.b - r.b, l.c - r.c};
  }
};

/// Two digits (p, q): the line through (1, p) and (3, q). Three digits
/// (p, q, r): the parabola through (1, p), (2, q), (3, r). Every
/// coefficient is a multiple of 1/2, so the result is exact in binary
/// floating point.
inline PitchCurve curve_of(const Transcription& t) {
  if (t.size() == 2) {
    const double slope = (t[1] - t[0]) / 2.0;
    return {0.0, slope, t[0] - slope};
  }
  const double p = t[0], q = t[1], r = t[2];
  const double a = (p - 2.0 * q + r) / 2.0;
  const double b = q - p - 3.0 * a;
  return {a, b, p - a - b};
}

namespace detail {

/// Real roots of g strictly inside (lo, hi), ascending. At most two.
inline std::size_t interior_roots(const PitchCurve& g, double lo, double hi,
                                  std::array<double, 2>& out) {
  std::size_t n = 0;
  auto keep = [&](double x) {
    if (x > lo && x < hi) out[n++] = x;
  };
  if (g.a == 0.0) {
    if (g.b != 0.0) keep(-g.c / g.b);
  } else {
    const double disc = g.b * g.b - 4.0 * g.a * g.c;
    if (disc > 0.0) {
      // Cancellation-free pair: q = -(b + sign(b) sqrt(disc)) / 2.
      const double q = -0.5 * (g.b + std::copysign(std::sqrt(disc), g.b));
      double r1 = q / g.a;
      double r2 = (q != 0.0) ? g.c / q : -r1;
      if (r1 > r2) std::swap(r1, r2);
      keep(r1);
      keep(r2);
    }
    // disc == 0 is a tangency: g keeps its sign, no split needed.
  }
  return n;
}

}  // namespace detail

/// Integral of |g| over [lo, hi], split at the sign changes of g.
inline double integrate_abs(const PitchCurve& g, double lo = PitchCurve::kDomainBegin,
                            double hi = PitchCurve::kDomainEnd) {
  std::array<double, 2> roots{};
  const std::size_t n = detail::interior_roots(g, lo, hi, roots);
  std::array<double, 4> knots{};
  knots[0] = lo;
  for (std::size_t i = 0; i < n; ++i) knots[i + 1] = roots[i];
  knots[n + 1] = hi;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n + 2; ++i) {
    total += std::abs(g.primitive(knots[i + 1]) - g.primitive(knots[i]));
  }
  return total;
}

/// Area between the simulated pitch curves of two transcriptions on [1, 3].
/// A pseudometric: distinct transcriptions with coincident curves, such as
/// (35) and (345), are at distance 0.
inline double tone_distance(const Transcription& l1, const Transcription& l2) {
  // Fixed operand order keeps the result bitwise symmetric.
  if (l2 < l1) return integrate_abs(curve_of(l2) - curve_of(l1));
  return integrate_abs(curve_of(l1) - curve_of(l2));
}

/// The categorical baseline: 0 for identical digit sequences, 1 otherwise.
inline int categorical_distance(const Transcription& l1, const Transcription& l2) {
  return l1 == l2 ? 0 : 1;
}

}  // namespace tonelab::core
