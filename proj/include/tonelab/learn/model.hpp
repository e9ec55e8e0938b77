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
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tonelab/core/transcription.hpp"
#include "tonelab/error.hpp"
#include "tonelab/learn/loss.hpp"

namespace tonelab::learn {

/// Affine map followed by a scaled sigmoid, z = 1 + 4 sigmoid(W x + b), so
/// every output is a valid PitchTriple. W is 3 x K, stored row-major.
struct LinearToneModel {
  static constexpr double kSquashOffset = 1.0;
  static constexpr double kSquashScale = 4.0;

  std::size_t feature_size = 0;
  std::vector<double> weights;  // 3 * feature_size
  std::array<double, 3> bias{};

  static LinearToneModel zeros(std::size_t k) {
    return {k, std::vector<double>(3 * k, 0.0), {}};
  }

  std::size_t parameter_count() const { return weights.size() + bias.size(); }

  double weight(std::size_t row, std::size_t col) const { return weights[row * feature_size + col]; }

  friend bool operator==(const LinearToneModel&, const LinearToneModel&) = default;
};

namespace detail {

inline double logistic(double a) { return 1.0 / (1.0 + std::exp(-a)); }

inline std::array<double, 3> activations(const LinearToneModel& m, std::span<const double> x) {
  std::array<double, 3> a = m.bias;
  for (std::size_t r = 0; r < 3; ++r) {
    const double* w = m.weights.data() + r * m.feature_size;
    for (std::size_t c = 0; c < m.feature_size; ++c) a[r] += w[c] * x[c];
  }
  return a;
}

/// Uniform double in [0, 1) from the top 53 bits; stable across standard
/// library implementations, unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Forward pass: the tonal embedding of one contour feature.
inline PitchTriple embed(const LinearToneModel& m, std::span<const double> x) {
  if (x.size() != m.feature_size) {
    throw InputError("embed: feature length " + std::to_string(x.size()) +
                     " does not match model K = " + std::to_string(m.feature_size));
  }
  const auto a = detail::activations(m, x);
  PitchTriple z{};
  for (std::size_t r = 0; r < 3; ++r) {
    z[r] = LinearToneModel::kSquashOffset + LinearToneModel::kSquashScale * detail::logistic(a[r]);
  }
  return z;
}

struct TrainConfig {
  double lr = 0.05;
  int epochs = 500;
  std::uint64_t seed = 0;
  double l2 = 0.0;
};

using TrainingExample = std::pair<std::vector<double>, core::Transcription>;

struct TrainResult {
  LinearToneModel model;
  /// Summed pitch loss of the parameters after 0, 1, ..., epochs updates.
  std::vector<double> loss_history;
  std::size_t best_epoch = 0;
};

/// Seeded uniform(-0.1, 0.1) initialization of every parameter, weights
/// row-major first, then bias.
inline LinearToneModel init_tone_model(std::size_t k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LinearToneModel m = LinearToneModel::zeros(k);
  for (double& w : m.weights) w = -0.1 + 0.2 * detail::unit_uniform(rng);
  for (double& b : m.bias) b = -0.1 + 0.2 * detail::unit_uniform(rng);
  return m;
}

inline double training_loss(const LinearToneModel& m, std::span<const TrainingExample> data) {
  double sum = 0.0;
  for (const auto& [x, y] : data) sum += pitch_distance_hat(embed(m, x), y);
  return sum;
}

/// Full-batch subgradient descent on the summed pitch loss (plus an optional
/// l2 penalty on the weights). Each step uses the batch-mean subgradient, so
/// `lr` does not need rescaling with the dataset size. Subgradient steps are
/// not monotone; the returned model is the iterate with the lowest loss,
/// earliest on ties, so it never scores worse than the initialization.
inline TrainResult train_tone_model(std::span<const TrainingExample> data, const TrainConfig& cfg) {
  if (data.empty()) throw InputError("train: empty dataset");
  const std::size_t k = data.front().first.size();
  std::set<std::string> labels;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].first.size() != k) {
      throw InputError("train: example " + std::to_string(i) + " has feature length " +
                       std::to_string(data[i].first.size()) + ", expected " + std::to_string(k));
    }
    labels.insert(data[i].second.str());
  }
  if (labels.size() < 2) throw InputError("train: need at least 2 distinct labels");
  if (cfg.epochs < 0) throw InputError("train: epochs must be nonnegative");

  LinearToneModel model = init_tone_model(k, cfg.seed);
  TrainResult result{model, {training_loss(model, data)}, 0};
  double best = result.loss_history.front();

  const double inv_n = 1.0 / static_cast<double>(data.size());
  std::vector<double> grad_w(model.weights.size());
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    std::array<double, 3> grad_b{};
    for (const auto& [x, y] : data) {
      const auto a = detail::activations(model, x);
      PitchTriple z{};
      std::array<double, 3> s{};
      for (std::size_t r = 0; r < 3; ++r) {
        s[r] = detail::logistic(a[r]);
        z[r] = LinearToneModel::kSquashOffset + LinearToneModel::kSquashScale * s[r];
      }
      const auto g = pitch_loss_subgradient(z, y);
      for (std::size_t r = 0; r < 3; ++r) {
        const double da = g[r] * LinearToneModel::kSquashScale * s[r] * (1.0 - s[r]);
        if (da == 0.0) continue;
        double* gw = grad_w.data() + r * k;
        for (std::size_t c = 0; c < k; ++c) gw[c] += da * x[c];
        grad_b[r] += da;
      }
    }
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
      model.weights[i] -= cfg.lr * (grad_w[i] * inv_n + 2.0 * cfg.l2 * model.weights[i]);
    }
    for (std::size_t r = 0; r < 3; ++r) model.bias[r] -= cfg.lr * grad_b[r] * inv_n;

    const double loss = training_loss(model, data);
    result.loss_history.push_back(loss);
    if (loss < best) {
      best = loss;
      result.model = model;
      result.best_epoch = static_cast<std::size_t>(epoch);
    }
  }
  return result;
}

}  // namespace tonelab::learn
