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
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tonelab/core/curve.hpp"
#include "tonelab/core/transcription.hpp"
#include "tonelab/detail/format.hpp"
#include "tonelab/detail/parallel.hpp"
#include "tonelab/error.hpp"

namespace tonelab::core {

/// Labeled n x n dissimilarity matrix, row-major.
///
/// Invariants (checked on construction): square, symmetric, zero diagonal,
/// entries finite and nonnegative.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  DistanceMatrix(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    validate();
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

  /// Rows and columns reordered so that new item k is old item order[k].
  DistanceMatrix permuted(std::span<const std::size_t> order) const {
    const std::size_t n = size();
    std::vector<std::string> labels(n);
    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = labels_[order[i]];
      for (std::size_t j = 0; j < n; ++j) values[i * n + j] = (*this)(order[i], order[j]);
    }
    return {std::move(labels), std::move(values)};
  }

 private:
  void validate() const {
    const std::size_t n = labels_.size();
    if (values_.size() != n * n) {
      throw InputError("distance matrix: expected " + std::to_string(n * n) + " values for " +
                       std::to_string(n) + " labels, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (values_[i * n + i] != 0.0) {
        throw InputError("distance matrix: nonzero diagonal at " + labels_[i]);
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double v = values_[i * n + j];
        if (!std::isfinite(v) || v < 0.0) {
          throw InputError("distance matrix: entry (" + labels_[i] + ", " + labels_[j] +
                           ") is negative or not finite");
        }
        const double w = values_[j * n + i];
        if (std::abs(v - w) > 1e-12 * std::max(1.0, std::abs(v))) {
          throw InputError("distance matrix: not symmetric at (" + labels_[i] + ", " +
                           labels_[j] + ")");
        }
      }
    }
  }

  std::vector<std::string> labels_;
  std::vector<double> values_;
};

/// Pairwise tone_distance, labels in input order. Duplicates are allowed.
inline DistanceMatrix build_distance_matrix(std::span<const Transcription> ls) {
  if (ls.empty()) throw InputError("build_distance_matrix: empty transcription list");
  const std::size_t n = ls.size();
  std::vector<double> values(n * n, 0.0);
  tonelab::detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) values[i * n + j] = tone_distance(ls[i], ls[j]);
    }
  });
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& t : ls) labels.push_back(t.str());
  return {std::move(labels), std::move(values)};
}

/// The full 150 x 150 database over all_transcriptions(), computed once.
inline const DistanceMatrix& tone_database() {
  static const DistanceMatrix db = build_distance_matrix(all_transcriptions());
  return db;
}

/// Database lookup; equal to tone_distance(a, b).
inline double lookup_distance(const Transcription& a, const Transcription& b) {
  return tone_database()(canonical_index(a), canonical_index(b));
}

/// CSV: a header row (empty corner cell, then labels), then one labeled row
/// per item, values with `decimals` digits.
inline void write_csv(std::ostream& os, const DistanceMatrix& m, int decimals = 6) {
  const std::size_t n = m.size();
  for (const auto& l : m.labels()) os << ',' << l;
  os << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    os << m.labels()[i];
    for (std::size_t j = 0; j < n; ++j) os << ',' << tonelab::detail::fixed(m(i, j), decimals);
    os << '\n';
  }
}

inline DistanceMatrix read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("distance matrix CSV: empty input");
  auto header = tonelab::detail::split(tonelab::detail::trim(line), ',');
  if (header.size() < 2) throw ParseError("distance matrix CSV: header has no labels");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  std::vector<double> values;
  values.reserve(n * n);
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (tonelab::detail::trim(line).empty()) continue;
    auto cells = tonelab::detail::split(tonelab::detail::trim(line), ',');
    if (cells.size() != n + 1 || row >= n || cells[0] != labels[row]) {
      throw ParseError("distance matrix CSV: malformed row at line " + std::to_string(line_no));
    }
    for (std::size_t j = 1; j <= n; ++j) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cells[j], &used));
        if (used != cells[j].size()) throw std::invalid_argument(cells[j]);
      } catch (const std::exception&) {
        throw ParseError("distance matrix CSV: bad number '" + cells[j] + "' at line " +
                         std::to_string(line_no));
      }
    }
    ++row;
  }
  if (row != n) throw ParseError("distance matrix CSV: expected " + std::to_string(n) + " rows");
  return {std::move(labels), std::move(values)};
}

}  // namespace tonelab::core
