// Copyright 2026 The npball Authors
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

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/gap.hpp"
#include "npball/holo.hpp"

namespace {

using namespace npball;

TEST(GapRhs, GeometricPartialSums) {
  const GapSpec spec;  // b_k = 1, m_k = 2^k
  for (int K : {1, 4, 12}) {
    const double want = (4.0 / 3.0) * (1.0 - std::pow(0.25, K));
    EXPECT_NEAR(gap_np_rhs(spec, 1.0, K).value, want, 1e-15) << K;
  }
  EXPECT_NEAR(gap_np_rhs(spec, 1.0, 12).value, 4.0 / 3.0, 1e-6);
  EXPECT_FALSE(gap_np_rhs(spec, 1.0, 12).divergent);
}

TEST(GapRhs, WitnessesBehave) {
  const auto [f1, f2] = separation_witnesses(1, 0.5, 1.0);
  const SeriesSum s = gap_np_rhs(f2, 0.5, 12);
  ASSERT_EQ(s.partial_sums.size(), 12u);
  for (int k = 0; k < 12; ++k) EXPECT_NEAR(s.partial_sums[k], k + 1.0, 1e-9);
  EXPECT_TRUE(s.divergent);
  for (int K = 1; K <= 12; ++K) {
    const MaxTerm m = gap_aq_rhs(f1, 1.0, K);
    EXPECT_NEAR(m.value, 1.0, 1e-14);
    EXPECT_FALSE(m.unbounded);
  }
  // f2 at p2: ratio 2^{-1/2}, so partial sums approach 1 / (1 - 2^{-1/2}).
  const double limit = 1.0 / (1.0 - std::sqrt(0.5));
  EXPECT_NEAR(gap_np_rhs(f2, 1.0, 40).value, limit * (1.0 - std::pow(0.5, 20)), 1e-12);
  EXPECT_THROW(gap_np_rhs(f2, 1.0, 41), UsageError);
  EXPECT_THROW(separation_witnesses(1, 1.0, 0.5), UsageError);
  EXPECT_THROW(separation_witnesses(1, 0.5, 1.5), UsageError);
}

TEST(GapRhs, OverflowIsFlagged) {
  GapSpec spec;
  spec.b.beta = 400.0;  // 2^{400 k}
  const SeriesSum s = gap_np_rhs(spec, 0.5, 10);
  EXPECT_TRUE(s.divergent);
  EXPECT_TRUE(s.overflow);
}

TEST(GapBlocks, CardinalityBound) {
  GapSpec spec;
  spec.c = 1.5;
  spec.m.kind = MRule::Kind::list;
  spec.m.values = {2, 3, 5, 8, 12};
  spec.b.kind = BRule::Kind::list;
  spec.b.values = {1.0, 1.0, 1.0, 1.0, 1.0};
  spec.truncations = {5};
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(max_block_cardinality(spec, 5), 2);
  EXPECT_LE(max_block_cardinality(spec, 5), block_cardinality_bound(1.5));
  // blocks {2,3}, {5}, {8,12}: 2^{-2}*4 + 2^{-4}*1 + 2^{-6}*4 at p = 1
  EXPECT_NEAR(gap_dyadic_blocks(spec, 1.0, 5), 1.0 + 1.0 / 16 + 4.0 / 64, 1e-15);
  const double ratio = gap_dyadic_blocks(spec, 1.0, 5) / gap_np_rhs(spec, 1.0, 5).value;
  EXPECT_GE(ratio, 1.0);
  EXPECT_LE(ratio, dyadic_bracket(1.5, 1.0));
}

TEST(GapSpec, ValidationAndJson) {
  GapSpec spec;
  spec.m.kind = MRule::Kind::list;
  spec.m.values = {1, 2, 3};
  spec.b.kind = BRule::Kind::list;
  spec.b.values = {1.0, 1.0, 1.0};
  spec.truncations = {3};
  EXPECT_THROW(spec.validate(), UsageError);  // 3/2 < c = 2
  GapSpec ok;
  ok.b.beta = 0.75;
  const nlohmann::json j = ok;
  EXPECT_EQ(j.get<GapSpec>(), ok);
  EXPECT_NEAR(std::abs(ok.b_at(4)), 8.0, 1e-12);
  EXPECT_EQ(ok.m_at(5), 32);
}

TEST(GapMoments, BetaMomentRatioMatchesBeta) {
  for (int n : {1, 2}) {
    for (double m : {1.0, 4.0, 64.0}) {
      for (double p : {0.5, 1.0}) {
        const double want = std::beta(n + m, p + 1.0) * std::pow(m, p + 1.0);
        EXPECT_NEAR(beta_moment_ratio(n, m, p), want, 1e-12 * want);
      }
    }
  }
}

TEST(GapMoments, GeneratorL2Constants) {
  const std::vector<double> one = generator_l2_constants(1, {1, 4, 9});
  for (double v : one) EXPECT_NEAR(v, 1.0, 1e-14);
  const std::vector<int> degrees = {1, 2, 5, 8};
  const std::vector<double> two = generator_l2_constants(2, degrees);
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const int m = degrees[i], a = (m + 1) / 2, b = m / 2;
    const double l2sq = std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(m + 2.0);
    const double supsq = std::pow(static_cast<double>(a) / m, a) * std::pow(static_cast<double>(b) / m, b);
    EXPECT_NEAR(two[i], std::sqrt(l2sq / supsq), 1e-12) << m;
  }
}

}  // namespace
