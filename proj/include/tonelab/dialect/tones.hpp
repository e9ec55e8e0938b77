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

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tonelab/cluster/dbscan.hpp"
#include "tonelab/core/transcription.hpp"
#include "tonelab/detail/parallel.hpp"
#include "tonelab/error.hpp"
#include "tonelab/learn/decode.hpp"
#include "tonelab/learn/model.hpp"
#include "tonelab/pitch/f0.hpp"
#include "tonelab/pitch/feature.hpp"
#include "tonelab/pitch/wav.hpp"

namespace tonelab::dialect {

struct ToneCategory {
  int cluster = 0;
  /// Most frequent decoded transcription among the members; ties go to the
  /// lexicographically smallest token.
  core::Transcription representative{3, 3};
  std::vector<std::size_t> members;
};

struct ToneClustering {
  std::vector<learn::PitchTriple> embeddings;
  std::vector<core::Transcription> decoded;
  cluster::ClusterAssignment assignment;
  std::vector<ToneCategory> categories;
  std::vector<std::size_t> noise;

  std::size_t category_count() const { return categories.size(); }
};

struct ToneClusteringConfig {
  double eps = cluster::kDefaultEps;
  std::size_t min_samples = cluster::kDefaultMinSamples;
  double beta = learn::kDefaultBeta;
};

/// Density clustering of tonal embeddings; each cluster becomes one tone
/// category named by its modal decoded transcription. An all-noise result
/// is zero categories, not an error.
inline ToneClustering cluster_tone_embeddings(std::vector<learn::PitchTriple> embeddings,
                                              const ToneClusteringConfig& cfg = {}) {
  ToneClustering out;
  out.embeddings = std::move(embeddings);
  if (out.embeddings.empty()) return out;
  std::vector<cluster::Point> points;
  points.reserve(out.embeddings.size());
  for (const auto& z : out.embeddings) {
    points.emplace_back(z.begin(), z.end());
    out.decoded.push_back(learn::decode_transcription(z, cfg.beta));
  }
  out.assignment = cluster::dbscan(points, cfg.eps, cfg.min_samples);

  const int k = out.assignment.cluster_count();
  out.categories.resize(static_cast<std::size_t>(k));
  std::vector<std::map<std::string, std::size_t>> votes(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < out.embeddings.size(); ++i) {
    const int c = out.assignment.labels[i];
    if (c == cluster::kNoise) {
      out.noise.push_back(i);
      continue;
    }
    out.categories[c].members.push_back(i);
    ++votes[c][out.decoded[i].str()];
  }
  for (int c = 0; c < k; ++c) {
    auto& cat = out.categories[c];
    cat.cluster = c;
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [token, count] : votes[c]) {  // map order: smallest token first
      if (count > best_count) {
        best = token;
        best_count = count;
      }
    }
    cat.representative = core::parse_transcription(best);
  }
  return out;
}

/// Clip -> F0 -> contour feature (K from the model) -> embedding, then
/// cluster_tone_embeddings.
inline ToneClustering tone_clustering_pipeline(std::span<const pitch::AudioClip> clips,
                                               const learn::LinearToneModel& model,
                                               const ToneClusteringConfig& cfg = {},
                                               const pitch::F0Config& f0 = {}) {
  std::vector<learn::PitchTriple> embeddings(clips.size());
  tonelab::detail::parallel_for(clips.size(), [&](std::size_t i) {
    try {
      const auto feature = pitch::contour_feature(pitch::extract_f0(clips[i], f0), model.feature_size);
      embeddings[i] = learn::embed(model, feature);
    } catch (const InputError& e) {
      throw InputError("clip " + std::to_string(i) + ": " + e.what());
    } catch (const NumericError& e) {
      throw NumericError("clip " + std::to_string(i) + ": " + e.what());
    }
  });
  return cluster_tone_embeddings(std::move(embeddings), cfg);
}

}  // namespace tonelab::dialect
