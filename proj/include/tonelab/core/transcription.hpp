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
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tonelab/error.hpp"

namespace tonelab::core {

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 5;

/// A five-scale tone transcription: two or three pitch levels in 1..5, 1 the
/// lowest. Level and simple contour tones use two digits ("55", "35"),
/// complex contours three ("312").
class Transcription {
 public:
  /// Throws ParseError when the length or any digit is out of range.
  Transcription(std::initializer_list<int> digits) { assign(digits.begin(), digits.end()); }

  explicit Transcription(std::span<const int> digits) { assign(digits.begin(), digits.end()); }

  std::size_t size() const { return size_; }
  int operator[](std::size_t i) const { return digits_[i]; }
  int first() const { return digits_[0]; }
  int last() const { return digits_[size_ - 1]; }
  bool is_contour() const { return size_ == 3; }

  std::span<const int> digits() const { return {digits_.data(), size_}; }

  int min_level() const { return *std::min_element(digits_.begin(), digits_.begin() + size_); }
  int max_level() const { return *std::max_element(digits_.begin(), digits_.begin() + size_); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < size_; ++i) out.push_back(static_cast<char>('0' + digits_[i]));
    return out;
  }

  friend bool operator==(const Transcription& a, const Transcription& b) {
    return std::ranges::equal(a.digits(), b.digits());
  }

  // Lexicographic on the digit sequence, which coincides with comparing the
  // text forms.
  friend bool operator<(const Transcription& a, const Transcription& b) {
    return std::ranges::lexicographical_compare(a.digits(), b.digits());
  }

 private:
  template <class It>
  void assign(It begin, It end) {
    const auto n = static_cast<std::size_t>(std::distance(begin, end));
    if (n != 2 && n != 3) {
      throw ParseError("transcription must have 2 or 3 digits, got " + std::to_string(n));
    }
    size_ = n;
    std::size_t i = 0;
    for (It it = begin; it != end; ++it, ++i) {
      if (*it < kMinLevel || *it > kMaxLevel) {
        throw ParseError("pitch level out of range 1..5: " + std::to_string(*it));
      }
      digits_[i] = *it;
    }
  }

  std::array<int, 3> digits_{};
  std::size_t size_ = 0;
};

/// Parses "35", "312" or the parenthesized forms "(35)", "(312)".
inline Transcription parse_transcription(std::string_view text) {
  std::string_view body = text;
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    body = body.substr(1, body.size() - 2);
  }
  if (body.size() != 2 && body.size() != 3) {
    throw ParseError("invalid transcription token '" + std::string(text) +
                     "': length must be 2 or 3 digits");
  }
  std::array<int, 3> digits{};
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c < '0' || c > '9') {
      throw ParseError("invalid transcription token '" + std::string(text) +
                       "': non-digit character");
    }
    if (c < '1' || c > '5') {
      throw ParseError("invalid transcription token '" + std::string(text) + "': digit " +
                       std::string(1, c) + " outside 1..5");
    }
    digits[i] = c - '0';
  }
  return Transcription(std::span<const int>(digits.data(), body.size()));
}

/// Every valid transcription in canonical order: the 25 two-digit forms in
/// ascending order, then the 125 three-digit forms.
inline const std::vector<Transcription>& all_transcriptions() {
  static const std::vector<Transcription> all = [] {
    std::vector<Transcription> out;
    out.reserve(150);
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 5; ++b) out.push_back({a, b});
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 5; ++b)
        for (int c = 1; c <= 5; ++c) out.push_back({a, b, c});
    return out;
  }();
  return all;
}

/// Position of `t` in all_transcriptions().
inline std::size_t canonical_index(const Transcription& t) {
  if (t.size() == 2) return static_cast<std::size_t>((t[0] - 1) * 5 + (t[1] - 1));
  return 25 + static_cast<std::size_t>((t[0] - 1) * 25 + (t[1] - 1) * 5 + (t[2] - 1));
}

}  // namespace tonelab::core
