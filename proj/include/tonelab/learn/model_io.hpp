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

#include <fstream>
#include <string>

#include "json.hpp"
#include "tonelab/error.hpp"
#include "tonelab/learn/model.hpp"

namespace tonelab::learn {

inline constexpr const char* kModelFormat = "tonelab.linear_tone_model";
inline constexpr int kModelVersion = 1;

inline nlohmann::ordered_json to_json(const LinearToneModel& m) {
  nlohmann::ordered_json j;
  j["format"] = kModelFormat;
  j["version"] = kModelVersion;
  j["K"] = m.feature_size;
  j["weights"] = m.weights;
  j["bias"] = m.bias;
  j["squash"] = {{"offset", LinearToneModel::kSquashOffset},
                 {"scale", LinearToneModel::kSquashScale}};
  return j;
}

inline LinearToneModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kModelFormat) throw IoError("model: unknown format");
    if (j.at("version").get<int>() != kModelVersion) {
      throw IoError("model: unsupported version " + j.at("version").dump());
    }
    const auto& sq = j.at("squash");
    if (sq.at("offset").get<double>() != LinearToneModel::kSquashOffset ||
        sq.at("scale").get<double>() != LinearToneModel::kSquashScale) {
      throw IoError("model: unsupported squash constants");
    }
    LinearToneModel m;
    m.feature_size = j.at("K").get<std::size_t>();
    m.weights = j.at("weights").get<std::vector<double>>();
    const auto bias = j.at("bias").get<std::vector<double>>();
    if (m.weights.size() != 3 * m.feature_size || bias.size() != 3) {
      throw IoError("model: parameter shapes do not match K");
    }
    std::copy(bias.begin(), bias.end(), m.bias.begin());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("model: ") + e.what());
  }
}

inline void save_model(const std::string& path, const LinearToneModel& m) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write model file " + path);
  os << to_json(m).dump(2) << '\n';
}

inline LinearToneModel load_model(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open model file " + path);
  try {
    return model_from_json(nlohmann::json::parse(is));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("model " + path + ": " + e.what());
  }
}

}  // namespace tonelab::learn
