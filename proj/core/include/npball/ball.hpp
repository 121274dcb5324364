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

#ifndef NPBALL_BALL_HPP_
#define NPBALL_BALL_HPP_

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace npball {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Points with 1 - |z|^2 below this are treated as boundary points and rejected.
inline constexpr double kBoundaryTolerance = 1e-14;

// Hermitian inner product <z, w> = sum_i z_i conj(w_i).
Complex inner(const CVector& z, const CVector& w);

/// A point of the open unit ball of C^n.
class BallPoint {
 public:
  explicit BallPoint(CVector coords);
  BallPoint(std::initializer_list<Complex> coords);

  static BallPoint origin(int n);

  int dim() const { return static_cast<int>(coords_.size()); }
  const CVector& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_[i]; }
  double norm_sq() const { return norm_sq_; }
  double norm() const;

 private:
  CVector coords_;
  double norm_sq_;
};

/// A point of the unit sphere, |zeta| = 1 to 1e-12.
class SpherePoint {
 public:
  explicit SpherePoint(CVector coords);
  // Scales a nonzero vector onto the sphere.
  static SpherePoint normalized(const CVector& v);

  int dim() const { return static_cast<int>(coords_.size()); }
  const CVector& coords() const { return coords_; }

 private:
  CVector coords_;
};

// Phi_a(z) = (a - P_a z - sqrt(1-|a|^2) Q_a z) / (1 - <z,a>), with P_a the
// orthogonal projection onto span{a} and Q_a = I - P_a. Phi_0 = -I.
// No range checks; both arguments are assumed to be of equal dimension.
CVector mobius_apply(const CVector& a, const CVector& z);

BallPoint mobius_eval(const BallPoint& a, const BallPoint& z);

// (1 - |Phi_a(z)|^2)^p from the closed form
// ((1-|a|^2)(1-|z|^2) / |1 - <z,a>|^2)^p.
double mobius_factor(const BallPoint& a, const BallPoint& z, double p);

// Normalized Bergman kernel k_w(z) = ((1-|w|^2) / (1-<z,w>)^2)^((n+1)/2),
// evaluated as (sqrt(1-|w|^2) / (1-<z,w>))^(n+1), which is the principal
// branch because Re(1-<z,w>) > 0 on the ball.
Complex kernel_apply(const CVector& w, const CVector& z);
Complex kernel_eval(const BallPoint& w, const BallPoint& z);

/// An automorphism U o Phi_a of the ball, stored as the base point
/// a = Phi^{-1}(0) and the unitary U.
class Automorphism {
 public:
  Automorphism(BallPoint base, CMatrix unitary);

  // Phi_a itself (U = I).
  static Automorphism involution(const BallPoint& a);
  // The identity map, written as (-I) o Phi_0.
  static Automorphism identity(int n);
  // z -> U z.
  static Automorphism rotation(const CMatrix& unitary);

  int dim() const { return base_.dim(); }
  const BallPoint& base() const { return base_; }
  const CMatrix& unitary() const { return unitary_; }

  BallPoint operator()(const BallPoint& z) const;
  BallPoint inverse(const BallPoint& w) const;

  // Unchecked vector forms used on hot paths.
  CVector apply(const CVector& z) const;
  CVector apply_inverse(const CVector& w) const;

 private:
  BallPoint base_;
  CMatrix unitary_;
};

// outer o inner, re-expressed as U' o Phi_b with b = inner^{-1}(outer^{-1}(0)).
// Throws NumericError if the recovered U' fails the pointwise residual check.
Automorphism compose(const Automorphism& outer, const Automorphism& inner);

// A unitary V with V e_1 = a / |a| (identity when a = 0).
CMatrix unitary_aligning(const CVector& a);

}  // namespace npball

#endif  // NPBALL_BALL_HPP_
