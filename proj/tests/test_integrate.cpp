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
#include "npball/integrate.hpp"
#include "npball/norms.hpp"
#include "npball/quadrature.hpp"
#include "support/oracles.hpp"

namespace {

using namespace npball;

TEST(GaussJacobi, ExactForPolynomialsTimesWeight) {
  for (double alpha : {0.0, 0.25, 1.5, 3.0}) {
    for (double beta : {0.0, 1.0, 0.5}) {
      const auto rule = gauss_jacobi_unit(12, alpha, beta);
      for (int k = 0; k < 24; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule->size(); ++i) s += rule->weights[i] * std::pow(rule->nodes[i], k);
        const double exact = std::beta(k + beta + 1.0, alpha + 1.0);
        EXPECT_NEAR(s, exact, 1e-13 * exact) << alpha << ' ' << beta << ' ' << k;
      }
    }
  }
}

TEST(PairwiseSum, OrderIndependentOfLength) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(SphereRules, IntegrateMonomialMoments) {
  const SphereRule c = circle_rule(16);
  const SphereRule h = hopf_rule(8, 16, 16);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b + a <= 6; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        s += h.weights[i] * std::norm(std::pow(h.points[i][0], a) * std::pow(h.points[i][1], b));
      }
      // sphere moment = ball moment / (n B(n+|alpha|, 1))
      const double exact = oracle::monomial_moment({a, b}, 0.0) / (2.0 * std::beta(2.0 + a + b, 1.0));
      EXPECT_NEAR(s, exact, 1e-14);
      EXPECT_NEAR(sphere_weight({a, b}), exact, 1e-15);
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c.weights[i] * std::norm(std::pow(c.points[i][0], 3));
  EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST(MonteCarloSphere, SeededAndNormalized) {
  const SphereRule a = mc_sphere_rule(3, 256, 42), b = mc_sphere_rule(3, 256, 42);
  const SphereRule c = mc_sphere_rule(3, 256, 43);
  ASSERT_EQ(a.size(), 256u);
  EXPECT_EQ((a.points[17] - b.points[17]).norm(), 0.0);
  EXPECT_GT((a.points[17] - c.points[17]).norm(), 0.0);
  for (const auto& p : a.points) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
}

TEST(QuadSpec, ValidationRules) {
  EXPECT_NO_THROW(QuadSpec::for_dimension(1).validate(1));
  EXPECT_THROW(QuadSpec::for_dimension(1).validate(2), UsageError);
  QuadSpec mc = QuadSpec::for_dimension(3);
  EXPECT_THROW(mc.validate(3), UsageError);  // no seed
  mc.seed = 5;
  EXPECT_NO_THROW(mc.validate(3));
  QuadSpec bad = QuadSpec::for_dimension(1);
  bad.radial_nodes = 0;
  EXPECT_THROW(bad.validate(1), UsageError);
}

TEST(QuadSpec, JsonRoundTrip) {
  QuadSpec s = QuadSpec::for_dimension(2, Backend::quadrature);
  s.seed = 99;
  s.tube_nodes = 40;
  const nlohmann::json j = s;
  EXPECT_EQ(j.get<QuadSpec>(), s);
  EXPECT_EQ(nlohmann::json(j.get<QuadSpec>()).dump(), j.dump());
  EXPECT_EQ(QuadSpec::for_dimension(1).refined(4).radial_nodes, 4 * QuadSpec::for_dimension(1).radial_nodes);
}

TEST(BallIntegral, MonomialMomentsAgainstBeta) {
  for (int n : {1, 2}) {
    const QuadSpec spec = QuadSpec::for_dimension(n);
    for (double w : {0.0, 0.25, 1.0, 2.5}) {
      for (int a = 0; a <= 4; ++a) {
        const MultiIndex alpha = n == 1 ? MultiIndex{a} : MultiIndex{a, 4 - a};
        auto g = [&](const CVector& z) {
          Complex m = 1.0;
          for (int i = 0; i < n; ++i) m *= std::pow(z[i], alpha[i]);
          return std::norm(m);
        };
        const double exact = oracle::monomial_moment(alpha, w);
        EXPECT_NEAR(ball_integral(g, n, spec, w).value, exact, 1e-13 * exact) << n << ' ' << w << ' ' << a;
      }
    }
  }
}

TEST(BallIntegral, MonteCarloRuleIsDeterministic) {
  QuadSpec spec = QuadSpec::for_dimension(3);
  spec.seed = 7;
  auto g = [](const CVector& z) { return std::norm(z[0]); };
  const double x = ball_integral(g, 3, spec).value, y = ball_integral(g, 3, spec).value;
  EXPECT_EQ(x, y);
  EXPECT_NEAR(x, oracle::monomial_moment({1, 0, 0}, 0.0), 0.05);
  // Radial functions are exact under any normalized sphere rule.
  EXPECT_NEAR(ball_integral([](const CVector& z) { return z.squaredNorm(); }, 3, spec).value, 0.75, 1e-13);
}

TEST(RadialProfile, MatchesSphereAverage) {
  oracle::Gen gen(41);
  const Polynomial f = gen.polynomial(2, 5);
  const RadialProfile m = radial_profile(f);
  const SphereRule rule = hopf_rule(16, 32, 32);
  for (double r : {0.2, 0.7, 1.0}) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::norm(f.eval(r * rule.points[i]));
    EXPECT_NEAR(m(r), s, 1e-12 * std::max(1.0, s));
  }
}

TEST(KernelSeries, MatchesBinomialSeries) {
  for (double q : {0.25, 1.0, 1.75}) {
    const KernelSeries ks = kernel_series(q, 0.8, 1e-14);
    double s = 0.0;
    for (std::size_t k = 0; k < ks.coeffs.size(); ++k) s += ks.coeffs[k] * std::pow(0.8, k);
    EXPECT_NEAR(s, std::pow(0.2, -q), 1e-11 * std::pow(0.2, -q));
    EXPECT_LE(ks.tail_bound, 1e-14);
  }
  EXPECT_THROW(kernel_series(1.0, 0.999999, 1e-14, 100), TruncationError);
}

TEST(NpIntegral, ConstantAtOriginIsBeta) {
  for (double p : {0.0, 0.25, 0.5, 1.0, 1.5}) {
    const double v = np_integral(HoloFunction::constant(1, 1.0), BallPoint::origin(1), p,
                                 QuadSpec::for_dimension(1));
    EXPECT_NEAR(v, oracle::monomial_moment({0}, p), 1e-14);
  }
  EXPECT_NEAR(np_integral(HoloFunction::constant(1, 1.0), BallPoint::origin(1), 1.0,
                          QuadSpec::for_dimension(1)),
              0.5, 1e-15);
}

TEST(NpIntegralOracle, DiscAgainstTanhSinh) {
  oracle::Gen gen(51);
  for (int i = 0; i < 8; ++i) {
    const Polynomial f = gen.polynomial(1, 6);
    const Complex a = gen.ball_point(1, 0.9)[0];
    const double p = std::vector<double>{0.25, 0.5, 1.0, 1.5}[i % 4];
    const double want = oracle::disc_integral([&](Complex z) {
      return std::norm(f.eval(CVector::Constant(1, z))) *
             std::pow(oracle::disc_mobius_factor(a, z), p);
    }, 1024);
    for (Backend b : {Backend::spectral, Backend::quadrature}) {
      const double got = np_integral(HoloFunction::polynomial(f), BallPoint({a}), p,
                                     QuadSpec::for_dimension(1, b));
      EXPECT_NEAR(got, want, 1e-9 * want) << to_string(b) << " p=" << p;
    }
  }
}

TEST(NpIntegralOracle, TwoDimensionalBall) {
  oracle::Gen gen(61);
  const Polynomial f = gen.polynomial(2, 3, 3);
  const CVector a = gen.ball_point(2, 0.6);
  const double p = 1.0;
  const double want = oracle::ball2_integral([&](const CVector& z) {
    const double factor = (1.0 - a.squaredNorm()) * (1.0 - z.squaredNorm()) /
                          std::norm(1.0 - inner(z, a));
    return std::norm(f.eval(z)) * std::pow(factor, p);
  });
  for (Backend b : {Backend::spectral, Backend::quadrature}) {
    const double got = np_integral(HoloFunction::polynomial(f), BallPoint(a), p,
                                   QuadSpec::for_dimension(2, b));
    EXPECT_NEAR(got, want, 1e-7 * want) << to_string(b);
  }
}

TEST(NpIntegralProperty, UnitaryInvariance) {
  oracle::Gen gen(71);
  for (int i = 0; i < 10; ++i) {
    const Polynomial f = gen.polynomial(2, 5);
    const CMatrix u = gen.unitary(2);
    const CVector a = gen.ball_point(2, 0.85);
    const double p = gen.uniform(0.2, 1.8);
    const QuadSpec spec = QuadSpec::for_dimension(2);
    // I_{f o U}(U^* a) = I_f(a)
    const double lhs = np_integral(HoloFunction::polynomial(f.composed_linear(u)),
                                   BallPoint(u.adjoint() * a), p, spec);
    const double rhs = np_integral(HoloFunction::polynomial(f), BallPoint(a), p, spec);
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs);
  }
}

TEST(NpIntegralProperty, ChangeOfVariables) {
  // int |W f|^2 (1-|z|^2)^p dV = I_f(a) when phi = Phi_a.
  oracle::Gen gen(81);
  for (int i = 0; i < 6; ++i) {
    const Polynomial f = gen.polynomial(1, 5);
    const BallPoint a(gen.ball_point(1, 0.7));
    const double p = gen.uniform(0.25, 1.5);
    const QuadSpec quad = QuadSpec::for_dimension(1, Backend::quadrature);
    const HoloFunction wf = weighted_compose(HoloFunction::polynomial(f), Automorphism::involution(a));
    const double lhs = np_integral(wf, BallPoint::origin(1), p, quad);
    const double rhs = np_integral(HoloFunction::polynomial(f), a, p, quad);
    EXPECT_NEAR(lhs, rhs, 1e-6 * rhs);
  }
}

TEST(NpIntegral, BlackBoxNeedsQuadrature) {
  const HoloFunction f = HoloFunction::black_box(1, [](const CVector& z) { return std::exp(z[0]); });
  const CVector a = CVector::Constant(1, 0.3);
  EXPECT_THROW(KernelIntegrator(f, 0.5, 0.5, QuadSpec::for_dimension(1))(a), UsageError);
  const QuadSpec spec = effective_spec(f, QuadSpec::for_dimension(1));
  EXPECT_EQ(spec.backend, Backend::quadrature);
  const KernelIntegrator k(f, 0.5, 0.5, spec);
  const double v = k(a);
  EXPECT_EQ(k.last_backend(), Backend::quadrature);
  // Same value as the Taylor polynomial of exp to degree 40.
  Polynomial taylor(1);
  double c = 1.0;
  for (int d = 0; d <= 40; ++d) {
    taylor = taylor + Polynomial::monomial({d}, c);
    c /= d + 1.0;
  }
  EXPECT_NEAR(v, KernelIntegrator(HoloFunction::polynomial(taylor), 0.5, 0.5, QuadSpec::for_dimension(1))(a),
              1e-10 * v);
}

TEST(SphereKernelIntegral, CircleOracle) {
  for (double p : {0.25, 0.5, 1.0}) {
    for (double r : {0.3, 0.9}) {
      const double a = 0.7;
      double s = 0.0;
      const int m = 20000;
      for (int k = 0; k < m; ++k) {
        s += std::pow(std::norm(1.0 - std::polar(r * a, 2.0 * M_PI * k / m)), -p);
      }
      const double want = std::pow(1.0 - a * a, p) * s / m;
      const double got = sphere_kernel_integral(BallPoint({Complex(0.0, a)}), r, p,
                                                QuadSpec::for_dimension(1));
      EXPECT_NEAR(got, want, 1e-12 * want);
    }
  }
}

}  // namespace
