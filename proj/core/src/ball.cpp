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
#include "npball/ball.hpp"

#include <cmath>
#include <string>

#include "npball/errors.hpp"

namespace npball {
namespace {

constexpr double kUnitaryTolerance = 1e-12;
constexpr double kComposeTolerance = 1e-10;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

Complex inner(const CVector& z, const CVector& w) {
  // Eigen's dot conjugates its first argument.
  return w.dot(z);
}

BallPoint::BallPoint(CVector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw UsageError("BallPoint: dimension must be at least 1");
  norm_sq_ = coords_.squaredNorm();
  if (!std::isfinite(norm_sq_) || 1.0 - norm_sq_ < kBoundaryTolerance) {
    throw UsageError("BallPoint: |z|^2 = " + std::to_string(norm_sq_) +
                     " is not inside the open unit ball");
  }
}

BallPoint::BallPoint(std::initializer_list<Complex> coords)
    : BallPoint([&] {
        CVector v(static_cast<Eigen::Index>(coords.size()));
        Eigen::Index i = 0;
        for (const Complex& c : coords) v[i++] = c;
        return v;
      }()) {}

BallPoint BallPoint::origin(int n) { return BallPoint(CVector::Zero(n)); }

double BallPoint::norm() const { return std::sqrt(norm_sq_); }

SpherePoint::SpherePoint(CVector coords) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw UsageError("SpherePoint: dimension must be at least 1");
  if (std::abs(coords_.squaredNorm() - 1.0) > 1e-12) {
    throw UsageError("SpherePoint: |zeta| must equal 1");
  }
}

SpherePoint SpherePoint::normalized(const CVector& v) {
  const double len = v.norm();
  if (!(len > 0.0)) throw UsageError("SpherePoint: cannot normalize the zero vector");
  return SpherePoint(v / len);
}

CVector mobius_apply(const CVector& a, const CVector& z) {
  const double a_sq = a.squaredNorm();
  if (a_sq == 0.0) return -z;
  const Complex za = inner(z, a);
  const CVector proj = (za / a_sq) * a;
  const double s = std::sqrt(1.0 - a_sq);
  return (a - proj - s * (z - proj)) / (1.0 - za);
}

BallPoint mobius_eval(const BallPoint& a, const BallPoint& z) {
  require_same_dim(a.dim(), z.dim(), "mobius_eval");
  return BallPoint(mobius_apply(a.coords(), z.coords()));
}

double mobius_factor(const BallPoint& a, const BallPoint& z, double p) {
  require_same_dim(a.dim(), z.dim(), "mobius_factor");
  if (!(p > 0.0)) throw UsageError("mobius_factor: p must be positive");
  const double base = (1.0 - a.norm_sq()) * (1.0 - z.norm_sq()) /
                      std::norm(1.0 - inner(z.coords(), a.coords()));
  return std::pow(base, p);
}

Complex kernel_apply(const CVector& w, const CVector& z) {
  const int n = static_cast<int>(w.size());
  const Complex ratio = std::sqrt(1.0 - w.squaredNorm()) / (1.0 - inner(z, w));
  Complex out = 1.0;
  for (int i = 0; i < n + 1; ++i) out *= ratio;
  return out;
}

Complex kernel_eval(const BallPoint& w, const BallPoint& z) {
  require_same_dim(w.dim(), z.dim(), "kernel_eval");
  return kernel_apply(w.coords(), z.coords());
}

Automorphism::Automorphism(BallPoint base, CMatrix unitary)
    : base_(std::move(base)), unitary_(std::move(unitary)) {
  const int n = base_.dim();
  if (unitary_.rows() != n || unitary_.cols() != n) {
    throw UsageError("Automorphism: unitary must be n x n");
  }
  const double defect = (unitary_ * unitary_.adjoint() - CMatrix::Identity(n, n)).norm();
  if (!(defect <= kUnitaryTolerance * n)) {
    throw UsageError("Automorphism: matrix is not unitary (defect " + std::to_string(defect) +
                     ")");
  }
}

Automorphism Automorphism::involution(const BallPoint& a) {
  return Automorphism(a, CMatrix::Identity(a.dim(), a.dim()));
}

Automorphism Automorphism::identity(int n) {
  return Automorphism(BallPoint::origin(n), -CMatrix::Identity(n, n));
}

Automorphism Automorphism::rotation(const CMatrix& unitary) {
  return Automorphism(BallPoint::origin(static_cast<int>(unitary.rows())), -unitary);
}

CVector Automorphism::apply(const CVector& z) const {
  return unitary_ * mobius_apply(base_.coords(), z);
}

CVector Automorphism::apply_inverse(const CVector& w) const {
  return mobius_apply(base_.coords(), unitary_.adjoint() * w);
}

BallPoint Automorphism::operator()(const BallPoint& z) const {
  require_same_dim(dim(), z.dim(), "Automorphism");
  return BallPoint(apply(z.coords()));
}

BallPoint Automorphism::inverse(const BallPoint& w) const {
  require_same_dim(dim(), w.dim(), "Automorphism::inverse");
  return BallPoint(apply_inverse(w.coords()));
}

Automorphism compose(const Automorphism& outer, const Automorphism& inner_map) {
  require_same_dim(outer.dim(), inner_map.dim(), "compose");
  const int n = outer.dim();
  const BallPoint b = inner_map.inverse(outer.base());

  auto composite = [&](const CVector& z) { return outer.apply(inner_map.apply(z)); };

  // Phi_b is an involution, so U' w = composite(Phi_b(w)) is linear in w.
  CMatrix raw(n, n);
  for (int j = 0; j < n; ++j) {
    CVector probe = CVector::Zero(n);
    probe[j] = 0.5;
    raw.col(j) = composite(mobius_apply(b.coords(), probe)) / 0.5;
  }
  Eigen::JacobiSVD<CMatrix> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix unitary = svd.matrixU() * svd.matrixV().adjoint();

  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      CVector probe = CVector::Zero(n);
      probe[j] += Complex(0.3, 0.1);
      probe[k] += Complex(-0.1, 0.25);
      const CVector lhs = unitary * mobius_apply(b.coords(), probe);
      residual = std::max(residual, (lhs - composite(probe)).norm());
    }
  }
  if (!(residual <= kComposeTolerance)) {
    throw NumericError("compose: unitary recovery residual " + std::to_string(residual));
  }
  return Automorphism(b, unitary);
}

CMatrix unitary_aligning(const CVector& a) {
  const int n = static_cast<int>(a.size());
  const double len = a.norm();
  if (len == 0.0) return CMatrix::Identity(n, n);
  CMatrix m(n, n + 1);
  m.col(0) = a / len;
  m.rightCols(n) = CMatrix::Identity(n, n);
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  // q e_1 = c a/|a| with |c| = 1; undo the phase.
  const Complex c = q.col(0).dot(a / len);  // = conj(c)
  q.col(0) *= c;
  return q;
}

}  // namespace npball
