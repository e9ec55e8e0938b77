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
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tonelab/core/transcription.hpp"
#include "tonelab/detail/format.hpp"
#include "tonelab/error.hpp"

namespace tonelab::dialect {

/// One region's transcriptions of the survey word list, keyed by word id.
struct RegionLexicon {
  std::string region_id;
  std::map<std::string, core::Transcription> entries;
};

struct DialectCorpus {
  /// Regions in order of first appearance in the input.
  std::vector<RegionLexicon> regions;
  /// Binary gold class per region id, when known.
  std::optional<std::map<std::string, int>> gold;

  std::vector<int> gold_vector() const {
    std::vector<int> out;
    for (const auto& r : regions) out.push_back(gold->at(r.region_id));
    return out;
  }
};

namespace detail {

inline std::vector<std::size_t> header_columns(const std::string& line, const std::vector<std::string>& wanted,
                                               const std::string& what) {
  const auto cells = tonelab::detail::split(tonelab::detail::trim(line), '\t');
  std::vector<std::size_t> idx;
  for (const auto& w : wanted) {
    std::size_t found = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (tonelab::detail::trim(cells[c]) == w) found = c;
    }
    if (found == cells.size()) throw ParseError(what + ": missing column '" + w + "'");
    idx.push_back(found);
  }
  return idx;
}

}  // namespace detail

/// Reads the corpus TSV: a header naming the columns region, word_id and
/// transcription (any order, extra columns ignored), then one row per
/// (region, word). All invalid tokens are reported together, by line.
inline DialectCorpus load_corpus(std::istream& is, const std::string& name = "corpus") {
  std::string line;
  if (!std::getline(is, line) || tonelab::detail::trim(line).empty()) throw ParseError(name + ": empty file");
  const auto cols = detail::header_columns(line, {"region", "word_id", "transcription"}, name);
  const std::size_t need = std::max({cols[0], cols[1], cols[2]}) + 1;

  DialectCorpus corpus;
  std::map<std::string, std::size_t> region_index;
  std::string errors;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (tonelab::detail::trim(line).empty()) continue;
    const auto cells = tonelab::detail::split(tonelab::detail::trim(line), '\t');
    if (cells.size() < need) {
      errors += "  line " + std::to_string(line_no) + ": expected at least " + std::to_string(need) + " columns\n";
      continue;
    }
    const std::string region(tonelab::detail::trim(cells[cols[0]]));
    const std::string word(tonelab::detail::trim(cells[cols[1]]));
    const std::string token(tonelab::detail::trim(cells[cols[2]]));
    try {
      const auto t = core::parse_transcription(token);
      auto [it, fresh] = region_index.try_emplace(region, corpus.regions.size());
      if (fresh) corpus.regions.push_back({region, {}});
      if (!corpus.regions[it->second].entries.emplace(word, t).second) {
        errors += "  line " + std::to_string(line_no) + ": duplicate (" + region + ", " + word + ")\n";
      }
    } catch (const ParseError& e) {
      errors += "  line " + std::to_string(line_no) + ": token '" + token + "': " + e.what() + "\n";
    }
  }
  if (!errors.empty()) throw ParseError(name + ": invalid rows\n" + errors);
  if (corpus.regions.empty()) throw ParseError(name + ": no data rows");
  return corpus;
}

inline DialectCorpus load_corpus(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open corpus " + path);
  return load_corpus(is, path);
}

/// Attaches gold labels from a TSV with columns region and gold_label
/// (0 or 1). Every corpus region must be labeled.
inline void load_gold(DialectCorpus& corpus, std::istream& is, const std::string& name = "gold") {
  std::string line;
  if (!std::getline(is, line) || tonelab::detail::trim(line).empty()) throw ParseError(name + ": empty file");
  const auto cols = detail::header_columns(line, {"region", "gold_label"}, name);
  std::map<std::string, int> gold;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (tonelab::detail::trim(line).empty()) continue;
    const auto cells = tonelab::detail::split(tonelab::detail::trim(line), '\t');
    const auto at = "line " + std::to_string(line_no);
    if (cells.size() <= std::max(cols[0], cols[1])) throw ParseError(name + ": " + at + ": too few columns");
    const std::string region(tonelab::detail::trim(cells[cols[0]]));
    const std::string label(tonelab::detail::trim(cells[cols[1]]));
    if (label != "0" && label != "1") throw ParseError(name + ": " + at + ": gold_label must be 0 or 1");
    if (!gold.emplace(region, label == "1" ? 1 : 0).second) {
      throw ParseError(name + ": " + at + ": duplicate region " + region);
    }
  }
  for (const auto& r : corpus.regions) {
    if (!gold.count(r.region_id)) throw ParseError(name + ": no gold label for region " + r.region_id);
  }
  for (const auto& [region, label] : gold) {
    bool known = false;
    for (const auto& r : corpus.regions) known = known || r.region_id == region;
    if (!known) throw ParseError(name + ": gold label for unknown region " + region);
  }
  corpus.gold = std::move(gold);
}

inline void load_gold(DialectCorpus& corpus, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open gold labels " + path);
  load_gold(corpus, is, path);
}

}  // namespace tonelab::dialect
