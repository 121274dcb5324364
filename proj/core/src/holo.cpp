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
#include "npball/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "npball/errors.hpp"

namespace npball {

int total_degree(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw UsageError("Polynomial: dimension must be at least 1");
}

Polynomial::Polynomial(int n, const std::vector<std::pair<MultiIndex, Complex>>& terms)
    : Polynomial(n) {
  for (const auto& [alpha, c] : terms) add_term(alpha, c);
}

Polynomial Polynomial::constant(int n, Complex c) {
  Polynomial p(n);
  p.add_term(MultiIndex(n, 0), c);
  return p;
}

Polynomial Polynomial::monomial(MultiIndex alpha, Complex c) {
  Polynomial p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  if (i < 0 || i >= n) throw UsageError("Polynomial::variable: index out of range");
  MultiIndex alpha(n, 0);
  alpha[i] = 1;
  return monomial(alpha);
}

void Polynomial::add_term(const MultiIndex& alpha, Complex c) {
  if (static_cast<int>(alpha.size()) != n_) {
    throw UsageError("Polynomial: multi-index length does not match dimension");
  }
  for (int e : alpha) {
    if (e < 0) throw UsageError("Polynomial: negative exponent");
  }
  if (c == Complex(0.0)) return;
  auto [it, inserted] = coeffs_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) coeffs_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [alpha, c] : coeffs_) d = std::max(d, total_degree(alpha));
  return d;
}

Complex Polynomial::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

Complex Polynomial::eval(const CVector& z) const {
  if (coeffs_.empty()) return 0.0;
  if (n_ == 1) {
    // Dense-ish univariate case: walk exponents upward, reusing powers.
    Complex value = 0.0;
    Complex power = 1.0;
    int at = 0;
    const Complex x = z[0];
    for (const auto& [alpha, c] : coeffs_) {
      while (at < alpha[0]) {
        power *= x;
        ++at;
      }
      value += c * power;
    }
    return value;
  }
  std::vector<int> max_exp(n_, 0);
  for (const auto& [alpha, c] : coeffs_) {
    for (int i = 0; i < n_; ++i) max_exp[i] = std::max(max_exp[i], alpha[i]);
  }
  std::vector<std::vector<Complex>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    powers[i].resize(max_exp[i] + 1);
    powers[i][0] = 1.0;
    for (int e = 1; e <= max_exp[i]; ++e) powers[i][e] = powers[i][e - 1] * z[i];
  }
  Complex value = 0.0;
  for (const auto& [alpha, c] : coeffs_) {
    Complex term = c;
    for (int i = 0; i < n_; ++i) term *= powers[i][alpha[i]];
    value += term;
  }
  return value;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  if (other.n_ != n_) throw UsageError("Polynomial: dimension mismatch");
  Polynomial out = *this;
  for (const auto& [alpha, c] : other.coeffs_) out.add_term(alpha, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return *this + other.scaled(-1.0);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (other.n_ != n_) throw UsageError("Polynomial: dimension mismatch");
  Polynomial out(n_);
  MultiIndex alpha(n_);
  for (const auto& [a1, c1] : coeffs_) {
    for (const auto& [a2, c2] : other.coeffs_) {
      for (int i = 0; i < n_; ++i) alpha[i] = a1[i] + a2[i];
      out.add_term(alpha, c1 * c2);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(Complex c) const {
  Polynomial out(n_);
  for (const auto& [alpha, v] : coeffs_) out.add_term(alpha, v * c);
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw UsageError("Polynomial::pow: negative exponent");
  Polynomial result = constant(n_, 1.0);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::dilated(double r) const {
  Polynomial out(n_);
  for (const auto& [alpha, c] : coeffs_) out.add_term(alpha, c * std::pow(r, total_degree(alpha)));
  return out;
}

Polynomial Polynomial::composed_linear(const CMatrix& v) const {
  if (v.rows() != n_ || v.cols() != n_) throw UsageError("composed_linear: matrix size mismatch");
  // (V w)_i as linear forms in w.
  std::vector<Polynomial> forms;
  forms.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    Polynomial form(n_);
    for (int j = 0; j < n_; ++j) form = form + variable(n_, j).scaled(v(i, j));
    forms.push_back(std::move(form));
  }
  std::vector<std::map<int, Polynomial>> power_cache(n_);
  auto power_of = [&](int i, int e) -> const Polynomial& {
    auto it = power_cache[i].find(e);
    if (it == power_cache[i].end()) it = power_cache[i].emplace(e, forms[i].pow(e)).first;
    return it->second;
  };
  Polynomial out(n_);
  for (const auto& [alpha, c] : coeffs_) {
    Polynomial term = constant(n_, c);
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] > 0) term = term * power_of(i, alpha[i]);
    }
    out = out + term;
  }
  return out;
}

// ---------------------------------------------------------------- generators

double monomial_sup_norm(const MultiIndex& alpha) {
  // max of prod |zeta_i|^{alpha_i} subject to sum |zeta_i|^2 = 1 is attained at
  // |zeta_i|^2 = alpha_i / |alpha|.
  const int d = total_degree(alpha);
  if (d == 0) return 1.0;
  double log_value = 0.0;
  for (int e : alpha) {
    if (e > 0) log_value += 0.5 * e * std::log(static_cast<double>(e) / d);
  }
  return std::exp(log_value);
}

HomogeneousGenerator standard_generator(int n) {
  if (n < 1) throw UsageError("standard_generator: dimension must be at least 1");
  if (n == 2) {
    return [](int degree) {
      MultiIndex alpha{(degree + 1) / 2, degree / 2};
      return Polynomial::monomial(alpha, 1.0 / monomial_sup_norm(alpha));
    };
  }
  return [n](int degree) {
    MultiIndex alpha(n, 0);
    alpha[0] = degree;
    return Polynomial::monomial(alpha);
  };
}

// ---------------------------------------------------------------- GapSeries

GapSeries::GapSeries(int n, std::vector<Complex> b, std::vector<std::int64_t> m, double gap_ratio,
                     int K, HomogeneousGenerator generator)
    : n_(n),
      b_(std::move(b)),
      m_(std::move(m)),
      gap_ratio_(gap_ratio),
      K_(K),
      generator_(std::move(generator)) {
  if (n_ < 1) throw UsageError("GapSeries: dimension must be at least 1");
  if (b_.size() != m_.size()) throw UsageError("GapSeries: b and m lengths differ");
  if (!(gap_ratio_ > 1.0)) throw UsageError("GapSeries: gap ratio c must exceed 1");
  if (K_ < 1) throw UsageError("GapSeries: truncation K must be positive");
  if (K_ > static_cast<int>(b_.size())) {
    throw UsageError("GapSeries: truncation exceeds available coefficients");
  }
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (m_[k] < 1) throw UsageError("GapSeries: degrees m_k must be positive");
    if (k > 0 && static_cast<double>(m_[k]) < gap_ratio_ * static_cast<double>(m_[k - 1]) - 1e-12) {
      throw UsageError("GapSeries: m_{k+1}/m_k falls below the declared gap ratio at k=" +
                       std::to_string(k - 1));
    }
  }
  auto terms = std::make_shared<std::vector<Polynomial>>();
  terms->reserve(K_);
  for (int k = 0; k < K_; ++k) {
    Polynomial p = generator_(static_cast<int>(m_[k]));
    if (p.dim() != n_) throw UsageError("GapSeries: generator produced wrong dimension");
    terms->push_back(std::move(p));
  }
  terms_ = std::move(terms);
}

GapSeries::GapSeries(int n, std::vector<Complex> b, std::vector<std::int64_t> m, double gap_ratio,
                     int K)
    : GapSeries(n, std::move(b), std::move(m), gap_ratio, K, standard_generator(n)) {}

const Polynomial& GapSeries::term(int k) const { return terms_->at(k); }

double GapSeries::tail_bound(double r) const {
  double tail = 0.0;
  for (std::size_t k = K_; k < b_.size(); ++k) {
    tail += std::abs(b_[k]) * std::pow(r, static_cast<double>(m_[k]));
  }
  return tail;
}

Polynomial GapSeries::materialize() const {
  Polynomial out(n_);
  for (int k = 0; k < K_; ++k) out = out + (*terms_)[k].scaled(b_[k]);
  return out;
}

Complex GapSeries::eval(const CVector& z) const {
  Complex value = 0.0;
  for (int k = 0; k < K_; ++k) value += b_[k] * (*terms_)[k].eval(z);
  return value;
}

GapSeries GapSeries::with_truncation(int K) const {
  return GapSeries(n_, b_, m_, gap_ratio_, K, generator_);
}

Polynomial truncate(const GapSeries& g, int K) {
  if (K < 1) throw UsageError("truncate: K must be positive");
  return g.with_truncation(K).materialize();
}

// ---------------------------------------------------------------- HoloFunction

HoloFunction make_holo(HoloNode node) {
  return HoloFunction(std::make_shared<const HoloNode>(std::move(node)));
}

HoloFunction HoloFunction::polynomial(Polynomial p) { return make_holo(HoloNode{std::move(p)}); }

HoloFunction HoloFunction::gap_series(GapSeries g) { return make_holo(HoloNode{std::move(g)}); }

HoloFunction HoloFunction::black_box(int n, Evaluator fn, std::string label) {
  if (n < 1) throw UsageError("black_box: dimension must be at least 1");
  if (!fn) throw UsageError("black_box: empty evaluator");
  return make_holo(HoloNode{BlackBoxFn{n, std::move(fn), std::move(label)}});
}

HoloFunction HoloFunction::constant(int n, Complex c) {
  return polynomial(Polynomial::constant(n, c));
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

int HoloFunction::dim() const {
  return std::visit(Overloaded{
                        [](const Polynomial& p) { return p.dim(); },
                        [](const GapSeries& g) { return g.dim(); },
                        [](const BlackBoxFn& b) { return b.n; },
                        [](const DilatedFn& d) { return d.inner.dim(); },
                        [](const ProductFn& p) { return p.f.dim(); },
                        [](const WeightedComposedFn& w) { return w.f.dim(); },
                        [](const ComposedFn& c) { return c.f.dim(); },
                    },
                    node_->value);
}

Complex HoloFunction::eval(const CVector& z) const {
  return std::visit(
      Overloaded{
          [&](const Polynomial& p) { return p.eval(z); },
          [&](const GapSeries& g) { return g.eval(z); },
          [&](const BlackBoxFn& b) {
            const Complex v = b.fn(z);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
              throw NumericError("black box '" + b.label + "' returned a non-finite value");
            }
            return v;
          },
          [&](const DilatedFn& d) { return d.inner.eval(d.r * z); },
          [&](const ProductFn& p) { return p.u.eval(z) * p.f.eval(z); },
          [&](const WeightedComposedFn& w) {
            return kernel_apply(w.phi.base().coords(), z) * w.f.eval(w.phi.apply(z));
          },
          [&](const ComposedFn& c) { return c.f.eval(c.phi.apply(z)); },
      },
      node_->value);
}

Complex HoloFunction::operator()(const BallPoint& z) const {
  if (z.dim() != dim()) throw UsageError("HoloFunction: dimension mismatch");
  return eval(z.coords());
}

std::optional<Polynomial> HoloFunction::as_polynomial() const {
  return std::visit(
      Overloaded{
          [](const Polynomial& p) -> std::optional<Polynomial> { return p; },
          [](const GapSeries& g) -> std::optional<Polynomial> { return g.materialize(); },
          [](const DilatedFn& d) -> std::optional<Polynomial> {
            auto inner = d.inner.as_polynomial();
            if (!inner) return std::nullopt;
            return inner->dilated(d.r);
          },
          [](const ProductFn& p) -> std::optional<Polynomial> {
            auto u = p.u.as_polynomial();
            auto f = p.f.as_polynomial();
            if (!u || !f) return std::nullopt;
            return *u * *f;
          },
          [](const auto&) -> std::optional<Polynomial> { return std::nullopt; },
      },
      node_->value);
}

bool HoloFunction::is_zero() const {
  if (const auto* p = std::get_if<Polynomial>(&node_->value)) return p->is_zero();
  return false;
}

double HoloFunction::tail_bound(double r) const {
  return std::visit(Overloaded{
                        [&](const GapSeries& g) { return g.tail_bound(r); },
                        [&](const DilatedFn& d) { return d.inner.tail_bound(r * d.r); },
                        [](const auto&) { return 0.0; },
                    },
                    node_->value);
}

std::string HoloFunction::describe() const {
  return std::visit(
      Overloaded{
          [](const Polynomial& p) {
            std::ostringstream os;
            os << "polynomial(n=" << p.dim() << ", terms=" << p.size() << ", degree=" << p.degree()
               << ")";
            return os.str();
          },
          [](const GapSeries& g) {
            std::ostringstream os;
            os << "gap_series(n=" << g.dim() << ", K=" << g.truncation() << ")";
            return os.str();
          },
          [](const BlackBoxFn& b) { return "blackbox(" + b.label + ")"; },
          [](const DilatedFn& d) {
            std::ostringstream os;
            os << "dilate(" << d.inner.describe() << ", r=" << d.r << ")";
            return os.str();
          },
          [](const ProductFn& p) { return "product(" + p.u.describe() + ", " + p.f.describe() + ")"; },
          [](const WeightedComposedFn& w) { return "weighted_compose(" + w.f.describe() + ")"; },
          [](const ComposedFn& c) { return "compose(" + c.f.describe() + ")"; },
      },
      node_->value);
}

// ---------------------------------------------------------------- transforms

HoloFunction dilate(const HoloFunction& f, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw UsageError("dilate: r must lie in (0, 1]");
  if (r == 1.0) return f;
  if (auto p = f.as_polynomial()) return HoloFunction::polynomial(p->dilated(r));
  return make_holo(HoloNode{DilatedFn{f, r}});
}

HoloFunction multiply(const HoloFunction& u, const HoloFunction& f) {
  if (u.dim() != f.dim()) throw UsageError("multiply: dimension mismatch");
  return make_holo(HoloNode{ProductFn{u, f}});
}

HoloFunction weighted_compose(const HoloFunction& f, const Automorphism& phi) {
  if (phi.dim() != f.dim()) throw UsageError("weighted_compose: dimension mismatch");
  return make_holo(HoloNode{WeightedComposedFn{phi, f}});
}

HoloFunction compose(const HoloFunction& f, const Automorphism& phi) {
  if (phi.dim() != f.dim()) throw UsageError("compose: dimension mismatch");
  return make_holo(HoloNode{ComposedFn{phi, f}});
}

}  // namespace npball
