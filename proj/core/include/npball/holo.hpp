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
#ifndef NPBALL_HOLO_HPP_
#define NPBALL_HOLO_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "npball/ball.hpp"

namespace npball {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& alpha);

/// Sparse polynomial in n complex variables, c_alpha z^alpha.
class Polynomial {
 public:
  explicit Polynomial(int n);
  Polynomial(int n, const std::vector<std::pair<MultiIndex, Complex>>& terms);

  static Polynomial constant(int n, Complex c);
  static Polynomial monomial(MultiIndex alpha, Complex c = 1.0);
  // z_i (0-based i).
  static Polynomial variable(int n, int i);

  int dim() const { return n_; }
  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::map<MultiIndex, Complex>& coeffs() const { return coeffs_; }
  Complex coeff(const MultiIndex& alpha) const;

  Complex eval(const CVector& z) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Complex c) const;
  Polynomial pow(int k) const;

  // f(r z): coefficients scale by r^|alpha|.
  Polynomial dilated(double r) const;
  // f(V w) expanded in w.
  Polynomial composed_linear(const CMatrix& v) const;

 private:
  void add_term(const MultiIndex& alpha, Complex c);

  int n_;
  std::map<MultiIndex, Complex> coeffs_;
};

// Produces the homogeneous polynomial P_m of degree m used by gap series.
using HomogeneousGenerator = std::function<Polynomial(int degree)>;

// n = 1: z^m. n = 2: z1^ceil(m/2) z2^floor(m/2) divided by its sup norm on the
// sphere. Other n: z1^m (sup norm 1, not the Ryll-Wojtaszczyk construction).
HomogeneousGenerator standard_generator(int n);

// sup over the unit sphere of |zeta^alpha|.
double monomial_sup_norm(const MultiIndex& alpha);

/// Truncated Hadamard gap series sum_{k<K} b_k P_{m_k}.
class GapSeries {
 public:
  GapSeries(int n, std::vector<Complex> b, std::vector<std::int64_t> m, double gap_ratio, int K,
            HomogeneousGenerator generator);
  GapSeries(int n, std::vector<Complex> b, std::vector<std::int64_t> m, double gap_ratio, int K);

  int dim() const { return n_; }
  int truncation() const { return K_; }
  int available_terms() const { return static_cast<int>(b_.size()); }
  double gap_ratio() const { return gap_ratio_; }
  const std::vector<Complex>& b() const { return b_; }
  const std::vector<std::int64_t>& m() const { return m_; }
  const Polynomial& term(int k) const;  // P_{m_k}, k < K

  // sum_{K <= k < available} |b_k| r^{m_k}
  double tail_bound(double r) const;
  Polynomial materialize() const;
  Complex eval(const CVector& z) const;

  GapSeries with_truncation(int K) const;

 private:
  int n_;
  std::vector<Complex> b_;
  std::vector<std::int64_t> m_;
  double gap_ratio_;
  int K_;
  HomogeneousGenerator generator_;
  std::shared_ptr<const std::vector<Polynomial>> terms_;
};

struct HoloNode;

/// Immutable holomorphic function on the ball: a coefficient-bearing form, an
/// opaque evaluator, or a transform of other functions. Copies share state.
class HoloFunction {
 public:
  using Evaluator = std::function<Complex(const CVector&)>;

  static HoloFunction polynomial(Polynomial p);
  static HoloFunction gap_series(GapSeries g);
  // Holomorphy is the caller's promise.
  static HoloFunction black_box(int n, Evaluator fn, std::string label = "blackbox");
  static HoloFunction constant(int n, Complex c);
  static HoloFunction zero(int n) { return constant(n, 0.0); }

  int dim() const;
  Complex eval(const CVector& z) const;
  Complex operator()(const BallPoint& z) const;

  // Coefficient form when available (polynomials, gap truncations, dilations
  // and products of those).
  std::optional<Polynomial> as_polynomial() const;
  // Exact zero polynomial.
  bool is_zero() const;
  // Tail bound of the underlying gap truncation at radius r (0 otherwise).
  double tail_bound(double r) const;
  std::string describe() const;

  const HoloNode& node() const { return *node_; }

 private:
  explicit HoloFunction(std::shared_ptr<const HoloNode> node) : node_(std::move(node)) {}
  friend HoloFunction make_holo(HoloNode node);

  std::shared_ptr<const HoloNode> node_;
};

struct BlackBoxFn {
  int n;
  HoloFunction::Evaluator fn;
  std::string label;
};
struct DilatedFn {
  HoloFunction inner;
  double r;
};
struct ProductFn {
  HoloFunction u;
  HoloFunction f;
};
// W_Phi f = k_a (f o Phi), a = Phi^{-1}(0).
struct WeightedComposedFn {
  Automorphism phi;
  HoloFunction f;
};
// C_Phi f = f o Phi.
struct ComposedFn {
  Automorphism phi;
  HoloFunction f;
};

struct HoloNode {
  std::variant<Polynomial, GapSeries, BlackBoxFn, DilatedFn, ProductFn, WeightedComposedFn,
               ComposedFn>
      value;
};

HoloFunction dilate(const HoloFunction& f, double r);
HoloFunction multiply(const HoloFunction& u, const HoloFunction& f);
HoloFunction weighted_compose(const HoloFunction& f, const Automorphism& phi);
HoloFunction compose(const HoloFunction& f, const Automorphism& phi);
Polynomial truncate(const GapSeries& g, int K);

}  // namespace npball

#endif  // NPBALL_HOLO_HPP_
