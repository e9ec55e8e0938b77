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
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "tonelab/core/distance_matrix.hpp"
#include "tonelab/detail/format.hpp"
#include "tonelab/error.hpp"

namespace tonelab::cluster {

/// Classical scaling output: coords is n x dims row-major. Each axis is
/// defined up to sign; the sign is fixed so that the first item with a
/// nonzero coordinate on that axis is positive.
struct MdsResult {
  std::size_t dims = 0;
  std::vector<std::string> labels;
  std::vector<double> coords;
  std::vector<double> eigenvalues;

  std::size_t size() const { return labels.size(); }
  double operator()(std::size_t item, std::size_t axis) const { return coords[item * dims + axis]; }
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

namespace detail {

using Matrix = std::vector<double>;  // n x n row-major

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Removes the components along the all-ones vector and along each of `basis`
/// (assumed orthonormal).
inline void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  for (const auto& b : basis) {
    const double p = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p * b[i];
  }
}

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

/// Dominant eigenpair of (m + shift I) restricted to the complement of
/// `basis` and the ones vector. Converged when the residual
/// |(m + shift I) v - lambda v| drops below tolerance * scale.
inline EigenPair power_iteration(const Matrix& m, std::size_t n, double shift,
                                 const std::vector<std::vector<double>>& basis, double scale,
                                 const PowerIterationOptions& opt) {
  // Start from a fixed pseudo-random vector, or from the unit vector that
  // survives deflation best. With a repeated eigenvalue the previous
  // eigenvector is the projected start itself, which would leave only
  // roundoff here.
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + std::sin(0.4 + 1.3 * static_cast<double>(i));
  const double start_norm = std::sqrt(dot(v, v));
  orthogonalize(v, basis);
  double norm = std::sqrt(dot(v, v));
  if (norm < 1e-6 * start_norm) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      orthogonalize(e, basis);
      const double en = std::sqrt(dot(e, e));
      if (en > norm) {
        v = std::move(e);
        norm = en;
      }
    }
  }
  if (norm < 1e-12) return {0.0, std::vector<double>(n, 0.0)};
  for (double& x : v) x /= norm;

  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = shift * in[i];
      for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * in[j];
      out[i] = s;
    }
    orthogonalize(out, basis);
  };

  double residual = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    apply(v, w);
    const double lambda = dot(v, w);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (w[i] - lambda * v[i]) * (w[i] - lambda * v[i]);
    residual = std::sqrt(residual);
    if (residual <= opt.tolerance * scale) return {lambda, v};
    norm = std::sqrt(dot(w, w));
    if (norm == 0.0) return {0.0, v};
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  throw NumericError("classical_mds: power iteration did not converge in " +
                     std::to_string(opt.max_iterations) + " iterations (residual " +
                     std::to_string(residual) + ")");
}

}  // namespace detail

/// Torgerson double centering B = -1/2 J D^2 J.
inline std::vector<double> double_centered(const core::DistanceMatrix& d) {
  const std::size_t n = d.size();
  std::vector<double> sq(n * n), row(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sq[i * n + j] = d(i, j) * d(i, j);
      row[i] += sq[i * n + j];
    }
    total += row[i];
    row[i] /= static_cast<double>(n);
  }
  total /= static_cast<double>(n * n);
  std::vector<double> b(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = -0.5 * (sq[i * n + j] - row[i] - row[j] + total);
  }
  return b;
}

/// Classical (Torgerson) MDS into 1 or 2 dimensions. The leading eigenpairs
/// of the double-centered matrix come from power iteration with deflation;
/// when the dominant remaining eigenvalue is negative the matrix is shifted
/// by its magnitude so the largest algebraic eigenvalue is found instead.
/// Coordinates are eigenvector * sqrt(max(eigenvalue, 0)).
inline MdsResult classical_mds(const core::DistanceMatrix& d, std::size_t dims,
                               const PowerIterationOptions& opt = {}) {
  if (dims != 1 && dims != 2) throw InputError("classical_mds: dims must be 1 or 2");
  const std::size_t n = d.size();
  if (n < dims + 1) {
    throw InputError("classical_mds: need at least " + std::to_string(dims + 1) + " items for " +
                     std::to_string(dims) + " dimension(s)");
  }
  const auto b = double_centered(d);
  double frob = 0.0;
  for (double x : b) frob += x * x;
  const double scale = std::max(std::sqrt(frob), 1e-300);

  MdsResult out;
  out.dims = dims;
  out.labels = d.labels();
  out.coords.assign(n * dims, 0.0);
  std::vector<std::vector<double>> basis;
  for (std::size_t axis = 0; axis < dims; ++axis) {
    detail::EigenPair pair;
    double shift = 0.0;
    try {
      pair = detail::power_iteration(b, n, 0.0, basis, scale, opt);
      if (pair.value < 0.0) shift = -pair.value;
    } catch (const NumericError&) {
      // Opposite eigenvalues of equal magnitude: make the spectrum nonnegative.
      shift = scale;
    }
    if (shift > 0.0) {
      pair = detail::power_iteration(b, n, shift, basis, scale, opt);
      pair.value -= shift;
    }
    auto& v = pair.vector;
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] != 0.0) {
        if (v[i] < 0.0) {
          for (double& x : v) x = -x;
        }
        break;
      }
    }
    const double s = std::sqrt(std::max(pair.value, 0.0));
    for (std::size_t i = 0; i < n; ++i) out.coords[i * dims + axis] = v[i] * s;
    out.eigenvalues.push_back(pair.value);
    basis.push_back(v);
  }
  return out;
}

/// CSV: item,x[,y] with 6 decimals.
inline void write_mds_csv(std::ostream& os, const MdsResult& r) {
  os << "item,x" << (r.dims == 2 ? ",y" : "") << '\n';
  for (std::size_t i = 0; i < r.size(); ++i) {
    os << r.labels[i];
    for (std::size_t a = 0; a < r.dims; ++a) os << ',' << tonelab::detail::fixed(r(i, a), 6);
    os << '\n';
  }
}

}  // namespace tonelab::cluster
