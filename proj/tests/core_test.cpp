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
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tonelab/core/contour.hpp"
#include "tonelab/core/curve.hpp"
#include "tonelab/core/distance_matrix.hpp"
#include "tonelab/core/transcription.hpp"
#include "tonelab/error.hpp"

namespace tonelab::core {
namespace {

Transcription T(const char* s) { return parse_transcription(s); }

TEST(TranscriptionTest, ParsesPlainAndParenthesized) {
  EXPECT_EQ(T("41").str(), "41");
  EXPECT_EQ(T("(312)").str(), "312");
  EXPECT_EQ(T("(312)"), T("312"));
  EXPECT_TRUE(T("214").is_contour());
  EXPECT_FALSE(T("55").is_contour());
  EXPECT_EQ(T("214").min_level(), 1);
  EXPECT_EQ(T("214").max_level(), 4);
}

TEST(TranscriptionTest, RejectsMalformedTokens) {
  for (const char* bad : {"", "4", "1234", "06", "46", "4a", "(41", "()", "(3)", " 41"}) {
    EXPECT_THROW(T(bad), ParseError) << bad;
  }
  EXPECT_THROW((Transcription{1, 6}), ParseError);
  EXPECT_THROW((Transcription{1}), ParseError);
}

TEST(TranscriptionTest, ParseErrorIsInputError) {
  try {
    T("61");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("61"), std::string::npos);
  }
}

TEST(TranscriptionTest, CanonicalOrder) {
  const auto& all = all_transcriptions();
  ASSERT_EQ(all.size(), 150u);
  EXPECT_EQ(all.front().str(), "11");
  EXPECT_EQ(all[24].str(), "55");
  EXPECT_EQ(all[25].str(), "111");
  EXPECT_EQ(all.back().str(), "555");
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(canonical_index(all[i]), i);
  for (std::size_t i = 1; i < 25; ++i) EXPECT_LT(all[i - 1], all[i]);
}

TEST(CurveTest, PassesThroughKnots) {
  for (const auto& t : all_transcriptions()) {
    const auto c = curve_of(t);
    EXPECT_DOUBLE_EQ(c(1.0), t.first());
    EXPECT_DOUBLE_EQ(c(3.0), t.last());
    if (t.size() == 3) {
      EXPECT_DOUBLE_EQ(c(2.0), t[1]);
    }
    for (double x : {1.25, 1.7, 2.0, 2.6}) EXPECT_NEAR(c(x), testing::lagrange_pitch(t, x), 1e-12);
  }
}

TEST(DistanceTest, ReferenceValues) {
  EXPECT_NEAR(tone_distance(T("41"), T("312")), 2.268353822, 1e-6);
  EXPECT_NEAR(tone_distance(T("11"), T("55")), 8.0, 1e-15);
  // Lines crossing at x = 2: two triangles of area 1.
  EXPECT_NEAR(tone_distance(T("13"), T("31")), 2.0, 1e-15);
  EXPECT_EQ(tone_distance(T("35"), T("35")), 0.0);
}

TEST(DistanceTest, CoincidentCurvesAreAtZero) {
  EXPECT_NEAR(tone_distance(T("35"), T("345")), 0.0, 1e-15);
  EXPECT_NEAR(tone_distance(T("11"), T("111")), 0.0, 1e-15);
  EXPECT_EQ(categorical_distance(T("35"), T("345")), 1);
  EXPECT_EQ(categorical_distance(T("35"), T("35")), 0);
}

TEST(DistanceTest, ExactlySymmetric) {
  // 12 vs 431 differs in the last bit if the operands are not ordered.
  for (const auto& a : all_transcriptions())
    for (const auto& b : all_transcriptions()) ASSERT_EQ(tone_distance(a, b), tone_distance(b, a)) << a.str() << " " << b.str();
}

TEST(DistanceTest, ShiftInvariant) {
  for (const auto& a : all_transcriptions()) {
    if (a.max_level() == 5) continue;
    std::vector<int> up;
    for (int d : a.digits()) up.push_back(d + 1);
    const Transcription a1{std::span<const int>(up)};
    for (const auto& b : all_transcriptions()) {
      if (b.max_level() == 5) continue;
      std::vector<int> bu;
      for (int d : b.digits()) bu.push_back(d + 1);
      EXPECT_NEAR(tone_distance(a1, Transcription(std::span<const int>(bu))), tone_distance(a, b), 1e-12);
    }
  }
}

TEST(DistanceTest, AgreesWithQuadratureOnAllPairs) {
  const auto& all = all_transcriptions();
  double worst = 0.0;
  for (const auto& a : all)
    for (const auto& b : all) worst = std::max(worst, std::abs(tone_distance(a, b) - testing::quadrature_distance(a, b)));
  EXPECT_LE(worst, 1e-9);
}

TEST(DistanceTest, IntegrateAbsHandlesTouchingRoot) {
  // (x - 2)^2 touches zero inside the interval.
  const PitchCurve g{1.0, -4.0, 4.0};
  EXPECT_NEAR(integrate_abs(g), 2.0 / 3.0, 1e-14);
  const PitchCurve zero{0.0, 0.0, 0.0};
  EXPECT_EQ(integrate_abs(zero), 0.0);
}

TEST(DistanceMatrixTest, ValidatesInput) {
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, 1, 1}), InputError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, 1, 2, 0}), InputError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {1, 1, 1, 0}), InputError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, -1, -1, 0}), InputError);
  EXPECT_THROW(DistanceMatrix({"a", "b"}, {0, NAN, NAN, 0}), InputError);
  EXPECT_NO_THROW(DistanceMatrix({"a", "b"}, {0, 1, 1, 0}));
  EXPECT_THROW(build_distance_matrix({}), InputError);
}

TEST(DistanceMatrixTest, BuildKeepsInputOrderAndDuplicates) {
  const std::vector<Transcription> ls{T("55"), T("11"), T("55")};
  const auto m = build_distance_matrix(ls);
  EXPECT_EQ(m.labels(), (std::vector<std::string>{"55", "11", "55"}));
  EXPECT_DOUBLE_EQ(m(0, 1), 8.0);
  EXPECT_EQ(m(0, 2), 0.0);
}

TEST(DistanceMatrixTest, DatabaseMatchesDirectComputation) {
  const auto& db = tone_database();
  ASSERT_EQ(db.size(), 150u);
  const auto& all = all_transcriptions();
  for (std::size_t i = 0; i < 150; ++i) {
    EXPECT_EQ(db.labels()[i], all[i].str());
    for (std::size_t j = 0; j < 150; j += 7) EXPECT_EQ(db(i, j), tone_distance(all[i], all[j]));
  }
  EXPECT_EQ(lookup_distance(T("41"), T("312")), tone_distance(T("41"), T("312")));
}

TEST(DistanceMatrixTest, CsvRoundTrip) {
  const std::vector<Transcription> ls{T("41"), T("312"), T("55")};
  const auto m = build_distance_matrix(ls);
  std::stringstream ss;
  write_csv(ss, m);
  EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), ",41,312,55");
  const auto back = read_csv(ss);
  EXPECT_EQ(back.labels(), m.labels());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(back(i, j), m(i, j), 5e-7);
}

TEST(DistanceMatrixTest, CsvRejectsGarbage) {
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), ParseError);
  std::istringstream bad(",a,b\na,0,x\nb,1,0\n");
  EXPECT_THROW(read_csv(bad), ParseError);
  std::istringstream asym(",a,b\na,0,1\nb,2,0\n");
  EXPECT_THROW(read_csv(asym), InputError);
}

TEST(DistanceMatrixTest, Permuted) {
  const std::vector<Transcription> ls{T("41"), T("312"), T("55")};
  const auto m = build_distance_matrix(ls);
  const std::vector<std::size_t> order{2, 0, 1};
  const auto p = m.permuted(order);
  EXPECT_EQ(p.labels()[0], "55");
  EXPECT_EQ(p(0, 1), m(2, 0));
  EXPECT_EQ(p(1, 2), m(0, 1));
}

TEST(ContourTest, Normalization) {
  const auto c = normalize_contour(T("412"));
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  EXPECT_NEAR(c[1], 0.0, 1e-12);
  EXPECT_NEAR(c[2], 1.0 / 3.0, 1e-12);
  std::size_t n = 0;
  const auto raw = normalize_levels(T("25"), &n);
  EXPECT_EQ(n, 2u);
  EXPECT_EQ(raw[0], 0.0);
  EXPECT_EQ(raw[1], 1.0);
  EXPECT_EQ(normalize_contour(T("25")), (NormalizedContour{0.0, 0.5, 1.0}));
  EXPECT_EQ(normalize_contour(T("33")), (NormalizedContour{0.5, 0.5, 0.5}));
  EXPECT_EQ(normalize_contour(T("444")), (NormalizedContour{0.5, 0.5, 0.5}));
}

TEST(ContourTest, VarianceReferenceValues) {
  const auto ref = T("445");
  const std::vector<std::pair<const char*, double>> expected{
      {"445", 0.0000}, {"45", 0.1225}, {"245", 0.1608}, {"255", 0.2311}, {"154", 0.2829}, {"251", 0.5243}};
  for (const auto& [tok, v] : expected) EXPECT_NEAR(variance_metric(ref, T(tok)), v, 5e-4) << tok;
}

TEST(ContourTest, VarianceProperties) {
  const auto& all = all_transcriptions();
  for (const auto& a : all) {
    EXPECT_EQ(variance_metric(a, a), 0.0);
    for (const auto& b : all) {
      const double v = variance_metric(a, b);
      EXPECT_EQ(v, variance_metric(b, a));
      EXPECT_EQ(v == 0.0, normalize_contour(a) == normalize_contour(b)) << a.str() << " " << b.str();
    }
  }
  // Same relative shape at different registers.
  EXPECT_EQ(variance_metric(T("24"), T("35")), 0.0);
  EXPECT_EQ(variance_metric(T("11"), T("55")), 0.0);
}

}  // namespace
}  // namespace tonelab::core
