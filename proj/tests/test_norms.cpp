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
#include "npball/literal.hpp"
#include "npball/norms.hpp"
#include "npball/search.hpp"
#include "support/oracles.hpp"

namespace {

using namespace npball;

HoloFunction poly(const std::string& text, int n = 1) {
  return HoloFunction::polynomial(parse_polynomial(text, n));
}

TEST(Search, FindsInteriorMaximum) {
  for (int n : {1, 2}) {
    CVector c = CVector::Zero(n);
    c[0] = Complex(0.31, -0.42);
    if (n == 2) c[1] = Complex(0.0, 0.2);
    SearchSpec spec;
    spec.tolerance = 1e-7;
    const SearchResult r = maximize_over_ball([&](const CVector& a) { return -(a - c).squaredNorm(); },
                                              n, spec);
    EXPECT_LT((r.argmax - c).norm(), 1e-5) << n;
    EXPECT_FALSE(r.touched_limit);
  }
}

TEST(Search, ReportsBoundaryOptimum) {
  SearchSpec spec;
  spec.levels = {0.3, 0.6, 0.85};
  spec.max_radius = 0.9;
  const SearchResult r = maximize_over_ball([](const CVector& a) { return a[0].real(); }, 1, spec);
  EXPECT_NEAR(r.value, 0.9, 1e-3);
  EXPECT_TRUE(r.touched_limit);
  EXPECT_LE(r.argmax.norm(), 0.9 + 1e-15);
}

TEST(Search, NoFiniteValueThrows) {
  EXPECT_THROW(maximize_over_ball([](const CVector&) { return NAN; }, 1, SearchSpec{}), NumericError);
}

TEST(Search, SpecValidationAndJson) {
  SearchSpec s;
  s.seeds.push_back(CVector::Constant(1, Complex(0.1, 0.2)));
  const nlohmann::json j = s;
  EXPECT_TRUE(j.get<SearchSpec>() == s);
  SearchSpec bad;
  bad.levels = {0.5, 0.3};
  EXPECT_THROW(bad.validate(1), UsageError);
  for (const auto& d : sphere_directions(2, 16)) EXPECT_NEAR(d.norm(), 1.0, 1e-14);
  EXPECT_EQ(sphere_directions(1, 8).size(), 8u);
}

TEST(Norms, WorkedValues) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  EXPECT_NEAR(norm_np(HoloFunction::constant(1, 1.0), 1.0, SearchSpec{}, quad).value,
              std::sqrt(0.5), 1e-6);
  EXPECT_NEAR(norm_a2p(poly("z"), 0.0, quad).value, std::sqrt(oracle::monomial_moment({1}, 0.0)), 1e-14);
  EXPECT_NEAR(norm_bergman_type(poly("z"), 0.5).value, 0.5, 1e-8);
  EXPECT_NEAR(norm_sup(poly("(1+z)/2")).value, 1.0, 1e-9);
}

TEST(NormsOracle, GrowthNormOfMonomials) {
  // sup_r r^k (1-r^2)^q is attained at r^2 = k / (k + 2q).
  for (int k : {1, 3, 6}) {
    for (double q : {0.25, 0.5, 1.0}) {
      const double t = k / (k + 2.0 * q);
      const double want = std::pow(t, k / 2.0) * std::pow(1.0 - t, q);
      const MultiIndex alpha{k};
      EXPECT_NEAR(norm_bergman_type(HoloFunction::polynomial(Polynomial::monomial(alpha)), q).value,
                  want, 1e-8 * want);
    }
  }
}

TEST(NormsOracle, A2pOfRandomPolynomialsMatchesMoments) {
  oracle::Gen gen(91);
  for (int i = 0; i < 20; ++i) {
    const int n = gen.integer(1, 2);
    const Polynomial f = gen.polynomial(n, 7);
    const double p = gen.uniform(0.0, 2.0);
    double want = 0.0;  // monomials are orthogonal
    for (const auto& [alpha, c] : f.coeffs()) want += std::norm(c) * oracle::monomial_moment(alpha, p);
    const double got = norm_a2p(HoloFunction::polynomial(f), p, QuadSpec::for_dimension(n)).value;
    EXPECT_NEAR(got * got, want, 1e-12 * want);
  }
}

TEST(NormsProperty, DecreasingInExponent) {
  oracle::Gen gen(101);
  const QuadSpec quad = QuadSpec::for_dimension(1);
  for (int i = 0; i < 4; ++i) {
    const HoloFunction f = HoloFunction::polynomial(gen.polynomial(1, 5));
    double previous = INFINITY;
    for (double p : {0.25, 0.5, 1.0, 1.5}) {
      const double v = norm_np(f, p, SearchSpec{}, quad).value;
      EXPECT_LE(v, previous * (1.0 + 1e-9));
      EXPECT_GE(v, norm_a2p(f, p, quad).value - 1e-12);
      previous = v;
    }
  }
}

TEST(NormsProperty, IsometryResidualIsSmall) {
  oracle::Gen gen(111);
  const QuadSpec quad = QuadSpec::for_dimension(1, Backend::quadrature);
  for (int i = 0; i < 3; ++i) {
    const HoloFunction f = HoloFunction::polynomial(gen.polynomial(1, 6));
    const Automorphism phi(BallPoint(gen.ball_point(1, 0.8)), gen.unitary(1));
    EXPECT_LT(isometry_residual(f, phi, 0.5, quad, SearchSpec{}), 2e-2);
  }
}

TEST(Norms, MultiplierAndComposition) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const MultiplierReport m =
      multiplier_check(HoloFunction::constant(1, Complex(0.0, 0.5)), poly("1 + z^2"), 1.0, SearchSpec{}, quad);
  EXPECT_TRUE(m.holds);
  EXPECT_NEAR(m.uf_norm, 0.5 * m.f_norm, 1e-12 * m.f_norm);
  const MultiplierReport m2 = multiplier_check(poly("z"), poly("1 - z"), 0.5, SearchSpec{}, quad);
  EXPECT_TRUE(m2.holds);
  EXPECT_LE(m2.ratio, 1.0);

  const CompositionReport c = composition_bound_check(
      Automorphism::involution(BallPoint({Complex(0.5, 0.0)})), poly("1 + z^3"), 1.0, SearchSpec{}, quad);
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.bound, 3.0, 1e-14);  // ((1+a)/(1-a))^{(n+1)/2} at a = 1/2
}

TEST(Norms, PolynomialsAreInLittleSpace) {
  const Np0Report r = np0_test(poly("1 + 2z - z^3"), 1.0, SearchSpec{}, QuadSpec::for_dimension(1));
  EXPECT_EQ(r.verdict, Verdict::member);
  EXPECT_EQ(r.radii.size(), 10u);
  EXPECT_LT(r.decay_trace.back(), 0.05 * r.norm_sq);
}

TEST(NormsOracle, SphereKernelConstantOnDisc) {
  // For n = 1: (1-|a|^2)^p sum_k c_k(p)^2 (r|a|)^{2k}.
  auto oracle_value = [](double a, double r, double p) {
    double c = 1.0, s = 0.0;
    const double x = (r * a) * (r * a);
    for (int k = 0; k < 20000; ++k) {
      s += c * c * std::pow(x, k);
      c *= (p + k) / (k + 1.0);
    }
    return std::pow(1.0 - a * a, p) * s;
  };
  const QuadSpec quad = QuadSpec::for_dimension(1);
  for (double p : {0.25, 0.5, 1.0}) {
    double best = 0.0;
    for (double a : {0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99, 0.999}) {
      for (double r : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 0.999}) best = std::max(best, oracle_value(a, r, p));
    }
    EXPECT_NEAR(sphere_kernel_constant(1, p, quad), best, 1e-10 * best) << p;
    EXPECT_GE(best, 1.0);
  }
}

TEST(Norms, ShellBound) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const double c = sphere_kernel_constant(1, 0.5, quad);
  const ShellBoundReport r = shell_bound_check(poly("1 + z^4"), 0.5, c, SearchSpec{}, quad);
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.lhs, r.rhs * (1.0 + 1e-9));
}

TEST(Norms, RejectsBadExponent) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  EXPECT_THROW(norm_np(poly("z"), -1.0, SearchSpec{}, quad), UsageError);
  EXPECT_THROW(norm_bergman_type(poly("z"), 0.0), UsageError);
}

}  // namespace
