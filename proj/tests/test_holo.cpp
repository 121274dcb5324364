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

#include "npball/corpus.hpp"
#include "npball/errors.hpp"
#include "npball/gap.hpp"
#include "npball/holo.hpp"
#include "npball/literal.hpp"
#include "support/oracles.hpp"

namespace {

using namespace npball;

CVector pt(std::initializer_list<Complex> c) { return BallPoint(c).coords(); }

TEST(Polynomial, ArithmeticAndEvaluation) {
  const Polynomial z = Polynomial::variable(1, 0);
  const Polynomial p = (z + Polynomial::constant(1, 1.0)).pow(3);  // 1 + 3z + 3z^2 + z^3
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.coeff({2}), Complex(3.0));
  const Complex w(0.3, -0.4);
  EXPECT_NEAR(std::abs(p.eval(pt({w})) - std::pow(1.0 + w, 3)), 0.0, 1e-14);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(Polynomial::monomial({2, 1}).degree(), 3);
}

TEST(PolynomialProperty, DilationAndLinearComposition) {
  oracle::Gen gen(21);
  for (int i = 0; i < 100; ++i) {
    const int n = gen.integer(1, 3);
    const Polynomial f = gen.polynomial(n, 6);
    const CVector z = gen.ball_point(n, 0.9);
    const double r = gen.uniform(0.1, 1.0);
    EXPECT_NEAR(std::abs(f.dilated(r).eval(z) - f.eval(r * z)), 0.0, 1e-12);
    const CMatrix v = gen.unitary(n);
    EXPECT_NEAR(std::abs(f.composed_linear(v).eval(z) - f.eval(v * z)), 0.0, 1e-11);
    const Polynomial g = gen.polynomial(n, 4);
    EXPECT_NEAR(std::abs((f * g).eval(z) - f.eval(z) * g.eval(z)), 0.0, 1e-11);
  }
}

TEST(Literal, ParsesPolynomials) {
  const Polynomial p = parse_polynomial("(0.3+0.4i) + (1-0.5i) z^2 - z/4", 1);
  EXPECT_EQ(p.coeff({0}), Complex(0.3, 0.4));
  EXPECT_EQ(p.coeff({2}), Complex(1.0, -0.5));
  EXPECT_EQ(p.coeff({1}), Complex(-0.25, 0.0));
  const Polynomial q = parse_polynomial("z1 z2^2 - 0.5 i z1 + 2(z1+z2)^2", 2);
  EXPECT_EQ(q.coeff({1, 2}), Complex(1.0));
  EXPECT_EQ(q.coeff({1, 0}), Complex(0.0, -0.5));
  EXPECT_EQ(q.coeff({1, 1}), Complex(4.0));
  EXPECT_EQ(parse_polynomial("i", 1).coeff({0}), Complex(0.0, 1.0));
}

TEST(Literal, RejectsMalformedInput) {
  EXPECT_THROW(parse_polynomial("z+", 1), UsageError);
  EXPECT_THROW(parse_polynomial("z3", 2), UsageError);
  EXPECT_THROW(parse_polynomial("z^-1", 1), UsageError);
  EXPECT_THROW(parse_polynomial("z / z", 1), UsageError);
  EXPECT_THROW(parse_polynomial("(1 + z", 1), UsageError);
  EXPECT_THROW(parse_function("gap:nonsense", 1), UsageError);
}

TEST(Literal, JsonTermsAndGapSeries) {
  const FunctionLiteral f =
      parse_function(R"({"n": 1, "terms": [{"alpha": [2], "re": 1, "im": -1}]})", 1);
  ASSERT_TRUE(f.f.as_polynomial());
  EXPECT_EQ(f.f.as_polynomial()->coeff({2}), Complex(1.0, -1.0));

  const FunctionLiteral g = parse_function("gap:power:beta=0:K=4", 1);
  ASSERT_TRUE(g.gap);
  const Polynomial p = *g.f.as_polynomial();
  for (int m : {1, 2, 4, 8}) EXPECT_EQ(p.coeff({m}), Complex(1.0)) << m;
  EXPECT_EQ(p.size(), 4u);

  const FunctionLiteral w = parse_function("gap:f2:p1=0.5:K=3", 1);
  ASSERT_TRUE(w.gap);
  EXPECT_NEAR(std::abs(w.gap->spec.b_at(2)), std::pow(2.0, 2 * 0.75), 1e-12);
}

TEST(HoloFunction, TransformsEvaluatePointwise) {
  oracle::Gen gen(31);
  const HoloFunction f = HoloFunction::polynomial(gen.polynomial(2, 5));
  const HoloFunction u = HoloFunction::polynomial(gen.polynomial(2, 3));
  const Automorphism phi(BallPoint(gen.ball_point(2, 0.7)), gen.unitary(2));
  const HoloFunction wf = weighted_compose(f, phi);
  const HoloFunction cf = compose(f, phi);
  const HoloFunction uf = multiply(u, f);
  const HoloFunction fr = dilate(f, 0.5);
  for (int i = 0; i < 20; ++i) {
    const CVector z = gen.ball_point(2, 0.9);
    const Complex fz = f.eval(phi.apply(z));
    EXPECT_NEAR(std::abs(wf.eval(z) - kernel_apply(phi.base().coords(), z) * fz), 0.0, 1e-11);
    EXPECT_NEAR(std::abs(cf.eval(z) - fz), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(uf.eval(z) - u.eval(z) * f.eval(z)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(fr.eval(z) - f.eval(0.5 * z)), 0.0, 1e-12);
  }
  EXPECT_TRUE(uf.as_polynomial().has_value());
  EXPECT_FALSE(wf.as_polynomial().has_value());
}

TEST(GapSeries, GeneratorIsSupNormalized) {
  const HomogeneousGenerator gen2 = standard_generator(2);
  for (int m : {1, 2, 3, 8, 15}) {
    const Polynomial p = gen2(m);
    EXPECT_EQ(p.degree(), m);
    // |z1|^a |z2|^b on the sphere peaks at |z1|^2 = a/m.
    const int a = (m + 1) / 2, b = m / 2;
    CVector zeta(2);
    zeta[0] = std::sqrt(static_cast<double>(a) / m);
    zeta[1] = std::sqrt(static_cast<double>(b) / m);
    EXPECT_NEAR(std::abs(p.eval(zeta)), 1.0, 1e-12) << m;
  }
}

TEST(GapSeries, TruncationAndTail) {
  GapSpec spec;  // b_k = 1, m_k = 2^k
  const GapSeries g = gap_series(spec, 5);
  const Polynomial p = truncate(g, 5);
  EXPECT_EQ(p.degree(), 16);
  EXPECT_EQ(p.size(), 5u);
  const double r = 0.9;
  double tail = 0.0;
  for (int k = 5; k < g.available_terms(); ++k) tail += std::pow(r, std::ldexp(1.0, k));
  EXPECT_NEAR(g.tail_bound(r), tail, 1e-15);
  EXPECT_THROW(truncate(g, 0), UsageError);
}

TEST(Corpus, ParsesAndHasExpectedShape) {
  const auto& fs = function_corpus();
  ASSERT_EQ(fs.size(), 12u);
  int gaps = 0;
  for (const auto& e : fs) {
    const HoloFunction f = corpus_function(e);
    EXPECT_TRUE(f.as_polynomial().has_value()) << e.name;
    EXPECT_FALSE(f.is_zero()) << e.name;
    gaps += e.gap ? 1 : 0;
  }
  EXPECT_EQ(gaps, 2);
  const auto& pairs = multiplier_corpus();
  ASSERT_EQ(pairs.size(), 10u);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto u = parse_function(pairs[i].first, 1).f.as_polynomial();
    ASSERT_TRUE(u);
    EXPECT_EQ(u->degree() == 0, i < 3) << pairs[i].first;
  }
}

}  // namespace
