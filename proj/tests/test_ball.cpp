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

#include "npball/ball.hpp"
#include "npball/errors.hpp"
#include "support/oracles.hpp"

namespace {

using namespace npball;

TEST(BallPoint, RejectsBoundaryAndOutside) {
  EXPECT_THROW(BallPoint({Complex(1.0, 0.0)}), UsageError);
  EXPECT_THROW(BallPoint({Complex(0.6, 0.0), Complex(0.0, 0.8)}), UsageError);
  EXPECT_THROW(BallPoint(CVector(0)), UsageError);
  EXPECT_NO_THROW(BallPoint({Complex(0.6, 0.79)}));
}

TEST(SpherePoint, RequiresUnitNorm) {
  EXPECT_THROW(SpherePoint(CVector::Constant(2, 0.5)), UsageError);
  const SpherePoint s = SpherePoint::normalized(CVector::Constant(2, Complex(1.0, 1.0)));
  EXPECT_NEAR(s.coords().norm(), 1.0, 1e-15);
}

TEST(Mobius, SwapsZeroAndBasePoint) {
  const BallPoint a({Complex(0.3, -0.2), Complex(0.1, 0.5)});
  EXPECT_NEAR((mobius_eval(a, BallPoint::origin(2)).coords() - a.coords()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(mobius_eval(a, a).coords().norm(), 0.0, 1e-15);
}

TEST(Mobius, OriginIsMinusIdentity) {
  const CVector z = CVector::Constant(2, Complex(0.2, 0.1));
  EXPECT_NEAR((mobius_apply(CVector::Zero(2), z) + z).norm(), 0.0, 1e-16);
}

TEST(Mobius, DiscFormulaMatches) {
  // For n = 1, Phi_a(z) = (a - z) / (1 - conj(a) z).
  oracle::Gen gen(7);
  for (int i = 0; i < 100; ++i) {
    const Complex a = gen.ball_point(1, 0.95)[0];
    const Complex z = gen.ball_point(1, 0.99)[0];
    const Complex expected = (a - z) / (1.0 - std::conj(a) * z);
    EXPECT_NEAR(std::abs(mobius_apply(CVector::Constant(1, a), CVector::Constant(1, z))[0] - expected),
                0.0, 1e-13);
  }
}

TEST(MobiusProperty, InvolutionAndFactorIdentity) {
  oracle::Gen gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = gen.integer(1, 4);
    const BallPoint a(gen.ball_point(n, 0.97));
    const BallPoint z(gen.ball_point(n, 0.97));
    const BallPoint w = mobius_eval(a, z);
    EXPECT_LT((mobius_eval(a, w).coords() - z.coords()).norm(), 1e-10);
    const double direct = 1.0 - w.norm_sq();
    const double closed = (1.0 - a.norm_sq()) * (1.0 - z.norm_sq()) /
                          std::norm(1.0 - inner(z.coords(), a.coords()));
    EXPECT_NEAR(direct, closed, 1e-12 * std::max(1.0, closed));
    EXPECT_NEAR(mobius_factor(a, z, 1.5), std::pow(closed, 1.5), 1e-12);
  }
}

TEST(Kernel, ModulusSquaredIsJacobianOnDisc) {
  // |Phi_a'(z)|^2 = |k_a(z)|^2 for n = 1, checked by a central difference.
  oracle::Gen gen(3);
  for (int i = 0; i < 50; ++i) {
    const CVector a = gen.ball_point(1, 0.9), z = gen.ball_point(1, 0.9);
    const double h = 1e-6;
    CVector zp = z, zm = z;
    zp[0] += h;
    zm[0] -= h;
    const Complex deriv = (mobius_apply(a, zp)[0] - mobius_apply(a, zm)[0]) / (2.0 * h);
    EXPECT_NEAR(std::norm(deriv), std::norm(kernel_apply(a, z)), 1e-6 * std::norm(deriv));
  }
}

TEST(Kernel, OriginIsOne) {
  EXPECT_NEAR(std::abs(kernel_apply(CVector::Zero(2), CVector::Constant(2, 0.3)) - 1.0), 0.0, 1e-15);
}

TEST(Automorphism, InverseRoundTrip) {
  oracle::Gen gen(5);
  for (int i = 0; i < 100; ++i) {
    const int n = gen.integer(1, 3);
    const Automorphism phi(BallPoint(gen.ball_point(n, 0.9)), gen.unitary(n));
    const BallPoint z(gen.ball_point(n, 0.95));
    EXPECT_LT((phi.inverse(phi(z)).coords() - z.coords()).norm(), 1e-11);
    EXPECT_LT(phi.apply(phi.base().coords()).norm(), 1e-12);
  }
}

TEST(Automorphism, RejectsNonUnitary) {
  CMatrix m = CMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(Automorphism(BallPoint::origin(2), m), UsageError);
}

TEST(AutomorphismProperty, ComposeMatchesPointwise) {
  oracle::Gen gen(9);
  for (int i = 0; i < 60; ++i) {
    const int n = gen.integer(1, 3);
    const Automorphism outer(BallPoint(gen.ball_point(n, 0.8)), gen.unitary(n));
    const Automorphism inner(BallPoint(gen.ball_point(n, 0.8)), gen.unitary(n));
    const Automorphism both = compose(outer, inner);
    for (int k = 0; k < 5; ++k) {
      const CVector z = gen.ball_point(n, 0.9);
      EXPECT_LT((both.apply(z) - outer.apply(inner.apply(z))).norm(), 1e-10);
    }
  }
}

TEST(UnitaryAligning, MapsFirstAxisOntoDirection) {
  oracle::Gen gen(13);
  for (int i = 0; i < 50; ++i) {
    const int n = gen.integer(1, 4);
    const CVector a = gen.ball_point(n, 0.9);
    const CMatrix v = unitary_aligning(a);
    EXPECT_LT((v.adjoint() * v - CMatrix::Identity(n, n)).norm(), 1e-13);
    EXPECT_LT((v.col(0) - a / a.norm()).norm(), 1e-13);
  }
  EXPECT_EQ((unitary_aligning(CVector::Zero(3)) - CMatrix::Identity(3, 3)).norm(), 0.0);
}

}  // namespace
