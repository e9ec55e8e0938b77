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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "tonelab/error.hpp"
#include "tonelab/learn/decode.hpp"
#include "tonelab/learn/loss.hpp"
#include "tonelab/learn/model.hpp"
#include "tonelab/learn/model_io.hpp"

namespace tonelab::learn {
namespace {

using core::parse_transcription;
using core::Transcription;

TEST(LossTest, DistanceHat) {
  EXPECT_EQ(pitch_distance_hat({3, 1, 2}, parse_transcription("312")), 0.0);
  EXPECT_EQ(pitch_distance_hat({3, 4, 5}, parse_transcription("35")), 0.0);
  // |3-3| + |3-5| + |3-4|
  EXPECT_EQ(pitch_distance_hat({3, 3, 3}, parse_transcription("35")), 3.0);
  EXPECT_EQ(pitch_distance_hat({1, 1, 1}, parse_transcription("555")), 12.0);
}

TEST(LossTest, BatchIsAdditive) {
  const std::pair<PitchTriple, Transcription> p{{3, 3, 3}, parse_transcription("35")};
  const std::vector<std::pair<PitchTriple, Transcription>> one{p}, two{p, p};
  EXPECT_EQ(pitch_loss(one), 3.0);
  EXPECT_EQ(pitch_loss(two), 6.0);
  EXPECT_THROW(pitch_loss({}), InputError);
}

TEST(LossTest, TwoDigitLabelsMatchExpandedForm) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.0, 5.0);
  std::uniform_int_distribution<int> d(1, 5);
  for (int i = 0; i < 500; ++i) {
    const PitchTriple z{u(rng), u(rng), u(rng)};
    const int a = d(rng), b = d(rng);
    const double mid = 0.5 * (a + b);
    const double direct = std::abs(z[0] - a) + std::abs(z[1] - mid) + std::abs(z[2] - b);
    EXPECT_NEAR(pitch_distance_hat(z, Transcription{a, b}), direct, 1e-12);
  }
}

TEST(LossTest, SubgradientSignsAndZeros) {
  EXPECT_EQ(pitch_loss_subgradient({3, 3, 3}, parse_transcription("35")), (std::array<double, 3>{0, -1, -1}));
  EXPECT_EQ(pitch_loss_subgradient({3, 1, 2}, parse_transcription("312")), (std::array<double, 3>{0, 0, 0}));
  EXPECT_EQ(pitch_loss_subgradient({5, 1, 4}, parse_transcription("222")), (std::array<double, 3>{1, -1, 1}));
}

TEST(LossTest, SubgradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(1.0, 5.0);
  const auto& all = core::all_transcriptions();
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  const double h = 1e-6;
  for (int n = 0; n < 300; ++n) {
    const PitchTriple z{u(rng), u(rng), u(rng)};
    const auto& y = all[pick(rng)];
    const auto g = pitch_loss_subgradient(z, y);
    for (std::size_t i = 0; i < 3; ++i) {
      auto zp = z, zm = z;
      zp[i] += h;
      zm[i] -= h;
      const double fd = (pitch_distance_hat(zp, y) - pitch_distance_hat(zm, y)) / (2 * h);
      EXPECT_NEAR(g[i], fd, 1e-5);
    }
  }
}

TEST(DecodeTest, Examples) {
  EXPECT_EQ(decode_transcription({2.6, 3.4, 4.6}), parse_transcription("35"));
  EXPECT_EQ(decode_transcription({3.0, 1.0, 2.0}), parse_transcription("312"));
  EXPECT_EQ(decode_transcription({5.0, 5.0, 5.0}), parse_transcription("55"));
  // Ties round away from zero.
  EXPECT_EQ(decode_transcription({3.5, 3.0, 2.5}), parse_transcription("43"));
  EXPECT_EQ(decode_transcription({1, 5, 1}, 10.0), parse_transcription("11"));
  EXPECT_THROW(decode_transcription({3, 3, 3}, 0.0), InputError);
  EXPECT_THROW(decode_transcription({3, 3, 3}, -1.0), InputError);
}

TEST(DecodeTest, BoundaryOfLinearity) {
  // Margin exactly beta is not linear.
  EXPECT_EQ(decode_transcription({2.0, 3.0, 4.5}, 0.5).size(), 3u);
  EXPECT_EQ(decode_transcription({2.0, 3.0, 4.49}, 0.5).size(), 2u);
  EXPECT_NEAR(linearity_margin({2.0, 3.0, 4.5}), 0.5, 0);
}

TEST(DecodeTest, RoundLevelClamps) {
  EXPECT_EQ(round_level(0.2), 1);
  EXPECT_EQ(round_level(7.0), 5);
  EXPECT_EQ(round_level(2.5), 3);
  EXPECT_EQ(round_level(2.49), 2);
}

TEST(ModelTest, ZeroModelEmbedsToMiddle) {
  const auto m = LinearToneModel::zeros(4);
  const std::vector<double> x(4, 0.0);
  EXPECT_EQ(embed(m, x), (PitchTriple{3, 3, 3}));
  EXPECT_EQ(m.parameter_count(), 15u);
  const std::vector<double> wrong(5, 0.0);
  EXPECT_THROW(embed(m, wrong), InputError);
}

TEST(ModelTest, EmbedStaysInRange) {
  auto m = init_tone_model(3, 1);
  for (double& w : m.weights) w *= 1e4;
  const std::vector<double> x{5, -3, 2};
  const auto z = embed(m, x);
  EXPECT_TRUE(is_valid(z));
  EXPECT_EQ(embed(m, x), z);
}

TEST(ModelTest, InitIsSeededAndBounded) {
  const auto a = init_tone_model(20, 42), b = init_tone_model(20, 42), c = init_tone_model(20, 43);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (double w : a.weights) {
    EXPECT_GE(w, -0.1);
    EXPECT_LT(w, 0.1);
  }
}

std::vector<TrainingExample> toy_set() {
  // Rising, falling and dipping shapes on K = 5.
  std::vector<TrainingExample> d;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  const std::vector<std::pair<std::vector<double>, const char*>> protos{
      {{-1.4, -0.7, 0, 0.7, 1.4}, "24"}, {{1.4, 0.7, 0, -0.7, -1.4}, "42"}, {{0.8, -0.4, -0.9, -0.4, 0.8}, "424"}};
  for (int i = 0; i < 10; ++i) {
    for (const auto& [x, y] : protos) {
      auto v = x;
      for (double& e : v) e += noise(rng);
      d.push_back({v, parse_transcription(y)});
    }
  }
  return d;
}

TEST(TrainTest, ZeroLearningRateKeepsInit) {
  TrainConfig cfg;
  cfg.lr = 0.0;
  cfg.epochs = 20;
  cfg.seed = 9;
  const auto r = train_tone_model(toy_set(), cfg);
  EXPECT_EQ(r.model, init_tone_model(5, 9));
  EXPECT_EQ(r.loss_history.size(), 21u);
}

TEST(TrainTest, SmallSetLossDecreases) {
  // The trainer needs two distinct labels, so two mirrored examples stand in
  // for a single one.
  const std::vector<TrainingExample> two{{{0.3, -1.0, 0.5}, parse_transcription("25")},
                                         {{-0.3, 1.0, -0.5}, parse_transcription("41")}};
  TrainConfig cfg;
  cfg.lr = 0.05;
  cfg.epochs = 10;
  const auto r = train_tone_model(two, cfg);
  for (std::size_t e = 1; e < r.loss_history.size(); ++e) EXPECT_LT(r.loss_history[e], r.loss_history[e - 1]);
}

TEST(TrainTest, FitsSeparableSet) {
  const auto data = toy_set();
  TrainConfig cfg;
  cfg.seed = 1;
  const auto r = train_tone_model(data, cfg);
  std::size_t ok = 0;
  for (const auto& [x, y] : data) ok += decode_transcription(embed(r.model, x)) == y;
  EXPECT_GE(ok, 27u);
  EXPECT_LE(r.loss_history[r.best_epoch], r.loss_history.front());
  EXPECT_EQ(training_loss(r.model, data), r.loss_history[r.best_epoch]);
}

TEST(TrainTest, Deterministic) {
  TrainConfig cfg;
  cfg.seed = 77;
  cfg.epochs = 50;
  const auto a = train_tone_model(toy_set(), cfg);
  const auto b = train_tone_model(toy_set(), cfg);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(TrainTest, RejectsBadData) {
  TrainConfig cfg;
  EXPECT_THROW(train_tone_model({}, cfg), InputError);
  std::vector<TrainingExample> same{{{0.0, 1.0}, parse_transcription("24")}, {{1.0, 0.0}, parse_transcription("24")}};
  EXPECT_THROW(train_tone_model(same, cfg), InputError);
  std::vector<TrainingExample> ragged{{{0.0, 1.0}, parse_transcription("24")}, {{1.0}, parse_transcription("42")}};
  EXPECT_THROW(train_tone_model(ragged, cfg), InputError);
  cfg.epochs = -1;
  EXPECT_THROW(train_tone_model(toy_set(), cfg), InputError);
}

TEST(ModelIoTest, JsonRoundTripIsExact) {
  TrainConfig cfg;
  cfg.epochs = 30;
  const auto m = train_tone_model(toy_set(), cfg).model;
  const auto path = (std::filesystem::temp_directory_path() / "tonelab_model_io_test.json").string();
  save_model(path, m);
  EXPECT_EQ(load_model(path), m);
  std::filesystem::remove(path);
}

TEST(ModelIoTest, RejectsBadFiles) {
  EXPECT_THROW(load_model("/nonexistent/model.json"), IoError);
  const auto path = (std::filesystem::temp_directory_path() / "tonelab_model_bad.json").string();
  for (const char* text : {"not json", "{\"format\": \"other\"}",
                           "{\"format\": \"tonelab.linear_tone_model\", \"version\": 1, \"K\": 2, \"weights\": [1],"
                           " \"bias\": [0,0,0], \"squash\": {\"offset\": 1, \"scale\": 4}}"}) {
    std::ofstream(path) << text;
    EXPECT_THROW(load_model(path), IoError) << text;
  }
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace tonelab::learn
