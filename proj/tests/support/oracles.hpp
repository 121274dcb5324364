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
// Reference values computed along routes the library does not use: Boost
// tanh-sinh in the radial variable, plain trapezoid sums in the angles, and
// std::beta for closed forms.
#ifndef NPBALL_TESTS_ORACLES_HPP_
#define NPBALL_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "npball/ball.hpp"
#include "npball/holo.hpp"

namespace oracle {

using npball::Complex;
using npball::CVector;

// 1 - |Phi_a(z)|^2 from the textbook identity, for n = 1.
inline double disc_mobius_factor(Complex a, Complex z) {
  return (1.0 - std::norm(a)) * (1.0 - std::norm(z)) / std::norm(1.0 - z * std::conj(a));
}

// int over the unit disc of g, normalized area measure.
inline double disc_integral(const std::function<double(Complex)>& g, int angles = 512) {
  boost::math::quadrature::tanh_sinh<double> radial;
  auto shell = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < angles; ++k) s += g(std::polar(r, 2.0 * M_PI * k / angles));
    return 2.0 * r * s / angles;
  };
  return radial.integrate(shell, 0.0, 1.0);
}

// int over the ball of C^2 of g, normalized volume. z = sqrt(t) zeta with
// zeta = (sqrt(u) e^{i s}, sqrt(1-u) e^{i v}); dV = 2 t dt du ds dv / (2 pi)^2.
inline double ball2_integral(const std::function<double(const CVector&)>& g, int angles = 48) {
  boost::math::quadrature::tanh_sinh<double> radial(6);
  auto shell = [&](double t) {
    auto in_u = [&](double u) {
      double s = 0.0;
      CVector z(2);
      for (int i = 0; i < angles; ++i) {
        for (int k = 0; k < angles; ++k) {
          z[0] = std::polar(std::sqrt(t * u), 2.0 * M_PI * i / angles);
          z[1] = std::polar(std::sqrt(t * (1.0 - u)), 2.0 * M_PI * k / angles);
          s += g(z);
        }
      }
      return s / (angles * angles);
    };
    return 2.0 * t * boost::math::quadrature::gauss<double, 30>::integrate(in_u, 0.0, 1.0);
  };
  return radial.integrate(shell, 0.0, 1.0);
}

// int_B |z^alpha|^2 (1-|z|^2)^w dV as a chain of Beta integrals: the sphere
// part peels off one coordinate at a time (Dirichlet), the radial part is
// n B(n+|alpha|, w+1).
inline double monomial_moment(const npball::MultiIndex& alpha, double w) {
  const int n = static_cast<int>(alpha.size());
  double value = 1.0;
  int tail = 0;
  for (int a : alpha) tail += a;
  const int total = tail;
  for (int i = 0; i + 1 < n; ++i) {
    tail -= alpha[i];
    const int rest = n - 1 - i;
    value *= rest * std::beta(alpha[i] + 1.0, rest + static_cast<double>(tail));
  }
  return value * n * std::beta(n + static_cast<double>(total), w + 1.0);
}

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % (hi - lo + 1)); }
  Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

  CVector ball_point(int n, double max_radius) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian_complex();
    return v * (max_radius * std::pow(uniform(0.0, 1.0), 1.0 / (2 * n)) / v.norm());
  }

  npball::CMatrix unitary(int n) {
    npball::CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = gaussian_complex();
    }
    Eigen::HouseholderQR<npball::CMatrix> qr(m);
    return qr.householderQ() * npball::CMatrix::Identity(n, n);
  }

  npball::Polynomial polynomial(int n, int max_degree, int max_terms = 6) {
    npball::Polynomial p(n);
    const int terms = integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      npball::MultiIndex alpha(n, 0);
      int budget = integer(0, max_degree);
      for (int i = 0; i < n; ++i) {
        const int e = i + 1 == n ? budget : integer(0, budget);
        alpha[i] = e;
        budget -= e;
      }
      p = p + npball::Polynomial::monomial(alpha, complex());
    }
    if (p.is_zero()) p = npball::Polynomial::constant(n, 1.0);
    return p;
  }

 private:
  Complex gaussian_complex() {
    // Box-Muller on our own uniforms keeps the stream library-independent.
    const double u1 = uniform(1e-300, 1.0), u2 = uniform(0.0, 1.0);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return std::polar(r, 2.0 * M_PI * u2);
  }

  std::mt19937_64 rng_;
};

}  // namespace oracle

#endif  // NPBALL_TESTS_ORACLES_HPP_
