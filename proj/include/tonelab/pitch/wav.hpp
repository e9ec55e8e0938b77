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
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "tonelab/error.hpp"

namespace tonelab::pitch {

/// Mono audio, samples in [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;

  static constexpr int kMinSampleRate = 8000;

  double duration() const { return sample_rate > 0 ? double(samples.size()) / sample_rate : 0.0; }
};

enum class WavEncoding { kPcm16, kFloat32 };

namespace detail {

inline std::uint16_t le16(const unsigned char* p) { return std::uint16_t(p[0] | (p[1] << 8)); }
inline std::uint32_t le32(const unsigned char* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}
inline void put16(std::string& out, std::uint16_t v) {
  out.push_back(char(v & 0xff));
  out.push_back(char(v >> 8));
}
inline void put32(std::string& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(char((v >> s) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xfffe;

}  // namespace detail

/// Decodes an in-memory RIFF/WAVE image. Supports 16-bit PCM and 32-bit IEEE
/// float (plain or WAVE_FORMAT_EXTENSIBLE), any channel count; channels are
/// averaged to mono.
inline AudioClip decode_wav(const std::vector<unsigned char>& bytes, const std::string& name = "") {
  const std::string where = name.empty() ? "wav" : name;
  auto malformed = [&](const std::string& why) { return IoError(where + ": malformed WAV, " + why); };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw malformed("missing RIFF/WAVE header");
  }
  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = detail::le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) throw malformed("chunk extends past end of file");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw malformed("fmt chunk too short");
      const unsigned char* f = bytes.data() + body;
      format = detail::le16(f);
      channels = detail::le16(f + 2);
      rate = detail::le32(f + 4);
      block_align = detail::le16(f + 12);
      bits = detail::le16(f + 14);
      if (format == detail::kFormatExtensible) {
        if (size < 40) throw malformed("extensible fmt chunk too short");
        format = detail::le16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw malformed("no fmt chunk");
  if (data == nullptr) throw malformed("no data chunk");
  if (channels == 0 || rate == 0) throw malformed("zero channels or sample rate");

  const bool pcm16 = format == detail::kFormatPcm && bits == 16;
  const bool f32 = format == detail::kFormatFloat && bits == 32;
  if (!pcm16 && !f32) {
    throw IoError(where + ": unsupported WAV encoding (format " + std::to_string(format) + ", " +
                  std::to_string(bits) + " bits); expected PCM16 or float32");
  }
  const std::size_t sample_bytes = bits / 8;
  if (block_align != channels * sample_bytes) throw malformed("inconsistent block alignment");
  const std::size_t frames = data_size / block_align;
  if (frames == 0) throw IoError(where + ": empty audio");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < channels; ++c) {
      const unsigned char* p = data + i * block_align + c * sample_bytes;
      if (pcm16) {
        acc += static_cast<std::int16_t>(detail::le16(p)) / 32768.0;
      } else {
        const std::uint32_t raw = detail::le32(p);
        float v;
        std::memcpy(&v, &raw, sizeof v);
        acc += v;
      }
    }
    clip.samples[i] = acc / channels;
  }
  return clip;
}

inline AudioClip read_wav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open audio file " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return decode_wav(bytes, path);
}

/// Serializes interleaved channels (one vector per channel, equal lengths).
inline std::string encode_wav(const std::vector<std::vector<double>>& channels, int sample_rate,
                              WavEncoding enc = WavEncoding::kPcm16) {
  const std::uint16_t nch = static_cast<std::uint16_t>(channels.size());
  const std::size_t frames = channels.empty() ? 0 : channels.front().size();
  const std::uint16_t bits = enc == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t align = static_cast<std::uint16_t>(nch * bits / 8);
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames * align);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  detail::put32(out, 36 + data_size);
  out += "WAVEfmt ";
  detail::put32(out, 16);
  detail::put16(out, enc == WavEncoding::kPcm16 ? detail::kFormatPcm : detail::kFormatFloat);
  detail::put16(out, nch);
  detail::put32(out, static_cast<std::uint32_t>(sample_rate));
  detail::put32(out, static_cast<std::uint32_t>(sample_rate) * align);
  detail::put16(out, align);
  detail::put16(out, bits);
  out += "data";
  detail::put32(out, data_size);
  for (std::size_t i = 0; i < frames; ++i) {
    for (const auto& ch : channels) {
      const double v = std::clamp(ch[i], -1.0, 1.0);
      if (enc == WavEncoding::kPcm16) {
        const auto s = static_cast<std::int16_t>(std::lround(v * 32767.0));
        detail::put16(out, static_cast<std::uint16_t>(s));
      } else {
        const float f = static_cast<float>(v);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof raw);
        detail::put32(out, raw);
      }
    }
  }
  return out;
}

inline void write_wav(const std::string& path, const AudioClip& clip,
                      WavEncoding enc = WavEncoding::kPcm16) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write audio file " + path);
  os << encode_wav({clip.samples}, clip.sample_rate, enc);
}

}  // namespace tonelab::pitch
