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
#include "npball/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"

namespace npball {
namespace {

constexpr int kMaxRadialNodes = 4096;
constexpr int kMaxAngularNodes = 1 << 18;

// Gauss nodes needed on [0,1] for an integrand analytic up to a pole at
// t = 1/x^2, at ~1e-14 relative accuracy.
int radial_needed(double x) {
  if (x < 1e-3) return 0;
  const double x0 = 2.0 / (x * x) - 1.0;
  const double rho = x0 + std::sqrt(x0 * x0 - 1.0);
  return static_cast<int>(std::ceil(std::log(1e14) / (2.0 * std::log(rho)))) + 4;
}

// Trapezoid nodes on the circle so that aliasing of a band-limited part of
// width band plus a kernel with Fourier decay x^k stays below 1e-14.
int angular_needed(double x, int band) {
  if (x < 1e-12) return band + 1;
  return band + static_cast<int>(std::ceil(std::log(1e-14) / std::log(x))) + 1;
}

int grow_pow2(int base, int needed, int cap) {
  int m = base;
  while (m < needed && m < cap) m *= 2;
  return std::min(m, cap);
}

int round_up(int value, int step) { return ((value + step - 1) / step) * step; }

double pow_neg(double base, double q) {
  // base^{-q} with the common exponents spelled out.
  if (q == 0.0) return 1.0;
  if (q == 1.0) return 1.0 / base;
  if (q == 0.5) return 1.0 / std::sqrt(base);
  return std::pow(base, -q);
}

void check_finite(double v, const CVector& z, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << what << ": non-finite integrand value at z = (";
    for (Eigen::Index i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z[i];
    os << ")";
    throw NumericError(os.str());
  }
}

SphereRule sphere_rule_for(int n, const QuadSpec& spec) {
  switch (spec.sphere_rule) {
    case SphereRuleKind::circle_trapezoid:
      return circle_rule(spec.angular_nodes);
    case SphereRuleKind::hopf_product:
      return hopf_rule(spec.polar_nodes, spec.angular_nodes, spec.fiber_nodes);
    case SphereRuleKind::monte_carlo:
      return mc_sphere_rule(n, spec.mc_samples, *spec.seed);
  }
  throw UsageError("unknown sphere rule");
}

QuadSpec halved(const QuadSpec& spec) {
  QuadSpec h = spec;
  h.radial_nodes = std::max(1, spec.radial_nodes / 2);
  h.angular_nodes = std::max(1, spec.angular_nodes / 2);
  h.polar_nodes = std::max(1, spec.polar_nodes / 2);
  h.fiber_nodes = std::max(1, spec.fiber_nodes / 2);
  h.mc_samples = std::max(1, spec.mc_samples / 2);
  return h;
}

double ball_integral_once(const std::function<double(const CVector&)>& g, int n,
                          const QuadSpec& spec, double w) {
  const auto radial = gauss_jacobi_unit(spec.radial_nodes, w, n - 1.0);
  const SphereRule sphere = sphere_rule_for(n, spec);
  std::vector<double> shell(radial->size());
  std::vector<double> terms(sphere.size());
  for (std::size_t i = 0; i < radial->size(); ++i) {
    const double r = std::sqrt(radial->nodes[i]);
    for (std::size_t s = 0; s < sphere.size(); ++s) {
      const CVector z = r * sphere.points[s];
      const double v = g(z);
      check_finite(v, z, "ball_integral");
      terms[s] = sphere.weights[s] * v;
    }
    shell[i] = radial->weights[i] * pairwise_sum(terms);
  }
  return n * pairwise_sum(shell);
}

// Log of int_B |z^alpha|^2 (1-|z|^2)^w dV = n! alpha! Gamma(w+1) / Gamma(n+|alpha|+w+1).
double log_monomial_moment(int n, int first, const MultiIndex& rest, int rest_degree, double w) {
  double v = std::lgamma(n + 1.0) + std::lgamma(first + 1.0) + std::lgamma(w + 1.0) -
             std::lgamma(n + first + rest_degree + w + 1.0);
  for (int e : rest) v += std::lgamma(e + 1.0);
  return v;
}

// Spectral route: rotate a onto |a| e_1, multiply f by the truncated series of
// (1 - |a| w_1)^{-q}, and integrate |g|^2 exactly by monomial orthogonality.
double spectral_integral(const Polynomial& f, const CVector& a, double q, double w,
                         const QuadSpec& spec) {
  if (f.is_zero()) return 0.0;
  const int n = f.dim();
  const double radius = a.norm();
  const Polynomial g = radius > 0.0 ? f.composed_linear(unitary_aligning(a)) : f;
  const KernelSeries series = kernel_series(q, radius, spec.series_tol, spec.max_series_terms);
  const std::size_t K = series.coeffs.size();
  std::vector<double> scaled(K);
  double power = 1.0;
  for (std::size_t k = 0; k < K; ++k) {
    scaled[k] = series.coeffs[k] * power;
    power *= radius;
  }

  std::map<MultiIndex, std::vector<std::pair<int, Complex>>> groups;
  for (const auto& [alpha, c] : g.coeffs()) {
    MultiIndex rest(alpha.begin() + 1, alpha.end());
    groups[rest].emplace_back(alpha[0], c);
  }

  std::vector<double> contributions;
  std::vector<Complex> h;
  for (const auto& [rest, terms] : groups) {
    const int rest_degree = total_degree(rest);
    int max_first = 0;
    for (const auto& [e, c] : terms) max_first = std::max(max_first, e);
    h.assign(max_first + K, Complex(0.0));
    for (const auto& [e, c] : terms) {
      for (std::size_t k = 0; k < K; ++k) h[e + k] += c * scaled[k];
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double mag = std::norm(h[j]);
      if (mag == 0.0) continue;
      contributions.push_back(
          mag * std::exp(log_monomial_moment(n, static_cast<int>(j), rest, rest_degree, w)));
    }
  }
  return pairwise_sum(contributions);
}

// Fast evaluation of a two-variable polynomial on Hopf fibres: groups by the
// exponent of the second variable.
struct FiberPolynomial {
  // For each second-variable exponent: (first-variable exponent, coefficient).
  std::vector<std::pair<int, std::vector<std::pair<int, Complex>>>> groups;
  int max_first = 0;
  int max_second = 0;

  explicit FiberPolynomial(const Polynomial& p) {
    std::map<int, std::vector<std::pair<int, Complex>>> by_second;
    for (const auto& [alpha, c] : p.coeffs()) {
      by_second[alpha[1]].emplace_back(alpha[0], c);
      max_first = std::max(max_first, alpha[0]);
      max_second = std::max(max_second, alpha[1]);
    }
    for (auto& [e, terms] : by_second) groups.emplace_back(e, std::move(terms));
  }
};

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::spectral: return "spectral";
    case Backend::quadrature: return "quadrature";
    case Backend::montecarlo: return "montecarlo";
  }
  return "unknown";
}

std::string to_string(SphereRuleKind k) {
  switch (k) {
    case SphereRuleKind::circle_trapezoid: return "circle_trapezoid";
    case SphereRuleKind::hopf_product: return "hopf_product";
    case SphereRuleKind::monte_carlo: return "mc";
  }
  return "unknown";
}

Backend backend_from_string(const std::string& s) {
  if (s == "spectral") return Backend::spectral;
  if (s == "quadrature") return Backend::quadrature;
  if (s == "montecarlo") return Backend::montecarlo;
  throw UsageError("unknown backend '" + s + "'");
}

SphereRuleKind sphere_rule_from_string(const std::string& s) {
  if (s == "circle_trapezoid") return SphereRuleKind::circle_trapezoid;
  if (s == "hopf_product") return SphereRuleKind::hopf_product;
  if (s == "mc") return SphereRuleKind::monte_carlo;
  throw UsageError("unknown sphere rule '" + s + "'");
}

QuadSpec QuadSpec::for_dimension(int n, Backend backend) {
  QuadSpec spec;
  spec.backend = backend;
  if (n == 1) {
    spec.sphere_rule = SphereRuleKind::circle_trapezoid;
  } else if (n == 2) {
    spec.sphere_rule = SphereRuleKind::hopf_product;
    spec.radial_nodes = 32;
    spec.angular_nodes = 64;
  } else {
    spec.sphere_rule = SphereRuleKind::monte_carlo;
    if (backend == Backend::spectral) spec.backend = Backend::montecarlo;
  }
  return spec;
}

void QuadSpec::validate(int n) const {
  if (n < 1) throw UsageError("QuadSpec: dimension must be at least 1");
  if (radial_nodes < 1 || angular_nodes < 1 || polar_nodes < 1 || fiber_nodes < 1 ||
      mc_samples < 1 || tube_nodes < 2) {
    throw UsageError("QuadSpec: node counts must be positive");
  }
  if (!(series_tol > 0.0) || max_series_terms < 1) {
    throw UsageError("QuadSpec: series_tol and max_series_terms must be positive");
  }
  if (backend == Backend::spectral && n > 2) {
    throw UsageError("QuadSpec: the spectral backend supports n <= 2 only");
  }
  if (sphere_rule == SphereRuleKind::circle_trapezoid && n != 1) {
    throw UsageError("QuadSpec: circle_trapezoid is the n = 1 sphere rule");
  }
  if (sphere_rule == SphereRuleKind::hopf_product && n != 2) {
    throw UsageError("QuadSpec: hopf_product is the n = 2 sphere rule");
  }
  const bool needs_seed =
      backend == Backend::montecarlo || sphere_rule == SphereRuleKind::monte_carlo;
  if (needs_seed && !seed) throw UsageError("QuadSpec: Monte Carlo integration needs an explicit seed");
}

QuadSpec QuadSpec::refined(int factor) const {
  if (factor < 1) throw UsageError("QuadSpec::refined: factor must be positive");
  QuadSpec r = *this;
  r.radial_nodes *= factor;
  r.angular_nodes *= factor;
  r.polar_nodes *= factor;
  r.fiber_nodes *= factor;
  r.mc_samples *= factor;
  r.tube_nodes *= factor;
  return r;
}

void to_json(nlohmann::json& j, const QuadSpec& spec) {
  j = nlohmann::json{
      {"backend", to_string(spec.backend)},
      {"radial_nodes", spec.radial_nodes},
      {"sphere_rule", to_string(spec.sphere_rule)},
      {"angular_nodes", spec.angular_nodes},
      {"polar_nodes", spec.polar_nodes},
      {"fiber_nodes", spec.fiber_nodes},
      {"mc_samples", spec.mc_samples},
      {"seed", spec.seed ? nlohmann::json(*spec.seed) : nlohmann::json(nullptr)},
      {"series_tol", spec.series_tol},
      {"max_series_terms", spec.max_series_terms},
      {"tube_nodes", spec.tube_nodes},
  };
}

void from_json(const nlohmann::json& j, QuadSpec& spec) {
  QuadSpec out;
  if (j.contains("backend")) out.backend = backend_from_string(j.at("backend").get<std::string>());
  if (j.contains("sphere_rule")) {
    out.sphere_rule = sphere_rule_from_string(j.at("sphere_rule").get<std::string>());
  }
  auto read_int = [&](const char* key, int& field) {
    if (j.contains(key)) field = j.at(key).get<int>();
  };
  read_int("radial_nodes", out.radial_nodes);
  read_int("angular_nodes", out.angular_nodes);
  read_int("polar_nodes", out.polar_nodes);
  read_int("fiber_nodes", out.fiber_nodes);
  read_int("mc_samples", out.mc_samples);
  read_int("max_series_terms", out.max_series_terms);
  read_int("tube_nodes", out.tube_nodes);
  if (j.contains("series_tol")) out.series_tol = j.at("series_tol").get<double>();
  if (j.contains("seed") && !j.at("seed").is_null()) out.seed = j.at("seed").get<std::uint64_t>();
  spec = out;
}

IntegralEstimate ball_integral(const std::function<double(const CVector&)>& g, int n,
                               const QuadSpec& spec, double weight_exponent) {
  QuadSpec checked = spec;
  if (checked.backend == Backend::spectral) checked.backend = Backend::quadrature;
  checked.validate(n);
  if (!(weight_exponent >= 0.0)) throw UsageError("ball_integral: weight exponent must be >= 0");
  IntegralEstimate est;
  est.backend = spec.sphere_rule == SphereRuleKind::monte_carlo ? Backend::montecarlo
                                                                 : Backend::quadrature;
  est.value = ball_integral_once(g, n, spec, weight_exponent);
  est.error = std::abs(est.value - ball_integral_once(g, n, halved(spec), weight_exponent));
  return est;
}

double sphere_integral(const std::function<double(const CVector&)>& g, int n,
                       const QuadSpec& spec) {
  spec.validate(n);
  const SphereRule rule = sphere_rule_for(n, spec);
  std::vector<double> terms(rule.size());
  for (std::size_t s = 0; s < rule.size(); ++s) {
    const double v = g(rule.points[s]);
    check_finite(v, rule.points[s], "sphere_integral");
    terms[s] = rule.weights[s] * v;
  }
  return pairwise_sum(terms);
}

double sphere_weight(const MultiIndex& alpha) {
  const int n = static_cast<int>(alpha.size());
  double v = std::lgamma(static_cast<double>(n)) -
             std::lgamma(static_cast<double>(n + total_degree(alpha)));
  for (int e : alpha) v += std::lgamma(e + 1.0);
  return std::exp(v);
}

double RadialProfile::operator()(double r) const {
  const double r2 = r * r;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r2 + *it;
  return acc;
}

RadialProfile radial_profile(const Polynomial& f) {
  RadialProfile profile;
  profile.coeffs.assign(f.degree() + 1, 0.0);
  std::vector<std::vector<double>> by_degree(profile.coeffs.size());
  for (const auto& [alpha, c] : f.coeffs()) {
    by_degree[total_degree(alpha)].push_back(std::norm(c) * sphere_weight(alpha));
  }
  for (std::size_t d = 0; d < by_degree.size(); ++d) profile.coeffs[d] = pairwise_sum(by_degree[d]);
  return profile;
}

KernelSeries kernel_series(double q, double radius, double tol, int max_terms) {
  if (!(q >= 0.0)) throw UsageError("kernel_series: exponent must be >= 0");
  if (!(radius >= 0.0 && radius < 1.0)) throw UsageError("kernel_series: need 0 <= |a| < 1");
  if (!(tol > 0.0)) throw UsageError("kernel_series: tolerance must be positive");
  KernelSeries out;
  out.coeffs.push_back(1.0);
  double c = 1.0;             // c_k
  double term = 1.0;          // c_k radius^k
  for (int k = 0;; ++k) {
    const double ratio = (q + k) / (k + 1.0);
    const double next_term = term * ratio * radius;
    // Terms j > k have ratios bounded by max(ratio_{k+1}, radius) < 1.
    const double rho = std::max((q + k + 1.0) / (k + 2.0) * radius, radius);
    const double tail = rho < 1.0 ? next_term / (1.0 - rho) : INFINITY;
    if (tail < tol) {
      out.tail_bound = tail;
      return out;
    }
    if (k + 1 >= max_terms) {
      throw TruncationError("kernel_series: more than " + std::to_string(max_terms) +
                                " terms needed for |a| = " + std::to_string(radius),
                            k + 1);
    }
    c *= ratio;
    term = next_term;
    out.coeffs.push_back(c);
  }
}

KernelSeries kernel_series(double q, const BallPoint& a, double tol, int max_terms) {
  return kernel_series(q, a.norm(), tol, max_terms);
}

// ---------------------------------------------------------------- KernelIntegrator

KernelIntegrator::KernelIntegrator(HoloFunction f, double q, double w, QuadSpec spec)
    : f_(std::move(f)), q_(q), w_(w), spec_(std::move(spec)), last_backend_(spec_.backend) {
  spec_.validate(f_.dim());
  if (!(q_ >= 0.0) || !(w_ >= 0.0)) throw UsageError("KernelIntegrator: exponents must be >= 0");
  poly_ = f_.as_polynomial();
  if (spec_.backend == Backend::spectral && !poly_) {
    throw UsageError("spectral backend needs a coefficient-bearing function, got " + f_.describe());
  }
  degree_hint_ = poly_ ? poly_->degree() : 0;
}

Backend KernelIntegrator::last_backend() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return last_backend_;
}

double KernelIntegrator::operator()(const CVector& a) const {
  if (a.size() != f_.dim()) throw UsageError("KernelIntegrator: dimension mismatch");
  if (!(1.0 - a.squaredNorm() >= kBoundaryTolerance)) {
    throw UsageError("KernelIntegrator: base point outside the ball");
  }
  if (poly_ && poly_->is_zero()) return 0.0;
  if (spec_.backend == Backend::spectral) {
    try {
      const double v = spectral(a);
      std::lock_guard<std::mutex> lock(mutex_);
      last_backend_ = Backend::spectral;
      return v;
    } catch (const TruncationError&) {
      // fall through to quadrature
    }
  }
  const double v = quadrature(a);
  std::lock_guard<std::mutex> lock(mutex_);
  last_backend_ = spec_.backend == Backend::montecarlo ? Backend::montecarlo : Backend::quadrature;
  return v;
}

double KernelIntegrator::spectral(const CVector& a) const {
  return spectral_integral(*poly_, a, q_, w_, spec_);
}

double KernelIntegrator::quadrature(const CVector& a) const {
  const int n = f_.dim();
  const double radius = a.norm();
  const bool mc = spec_.backend == Backend::montecarlo ||
                  spec_.sphere_rule == SphereRuleKind::monte_carlo || n > 2;
  if (mc) {
    if (!spec_.seed) throw UsageError("Monte Carlo sphere rule needs a seed");
    return fixed_grid(a, radius);
  }
  if (n == 1) return fixed_grid(a, radius);
  return rotated_hopf(a, radius);
}

const KernelIntegrator::Grid& KernelIntegrator::grid(int radial_nodes, int sphere_nodes) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto key = std::make_pair(radial_nodes, sphere_nodes);
  auto it = grids_.find(key);
  if (it != grids_.end()) return *it->second;

  const int n = f_.dim();
  auto g = std::make_unique<Grid>();
  g->radial = gauss_jacobi_unit(radial_nodes, w_, n - 1.0);
  g->sphere = n == 1 && spec_.backend != Backend::montecarlo &&
                      spec_.sphere_rule != SphereRuleKind::monte_carlo
                  ? circle_rule(sphere_nodes)
                  : mc_sphere_rule(n, sphere_nodes, *spec_.seed);
  const std::size_t total = g->radial->size() * g->sphere.size();
  g->coords.reserve(total * n);
  g->abs_f_sq.reserve(total);
  for (std::size_t i = 0; i < g->radial->size(); ++i) {
    const double r = std::sqrt(g->radial->nodes[i]);
    for (std::size_t s = 0; s < g->sphere.size(); ++s) {
      const CVector z = r * g->sphere.points[s];
      const double v = std::norm(f_.eval(z));
      check_finite(v, z, "KernelIntegrator");
      g->abs_f_sq.push_back(v);
      for (int d = 0; d < n; ++d) g->coords.push_back(z[d]);
    }
  }
  return *grids_.emplace(key, std::move(g)).first->second;
}

double KernelIntegrator::fixed_grid(const CVector& a, double radius) const {
  const int n = f_.dim();
  int radial_nodes = spec_.radial_nodes * (radius > 0.95 ? 2 : 1);
  radial_nodes = grow_pow2(radial_nodes, radial_needed(radius), kMaxRadialNodes);
  int sphere_nodes = spec_.mc_samples;
  const bool circle = n == 1 && spec_.backend != Backend::montecarlo &&
                      spec_.sphere_rule != SphereRuleKind::monte_carlo;
  if (circle) {
    sphere_nodes =
        grow_pow2(spec_.angular_nodes, angular_needed(radius, 2 * degree_hint_), kMaxAngularNodes);
  }
  const Grid& g = grid(radial_nodes, sphere_nodes);
  const std::size_t per_shell = g.sphere.size();
  std::vector<Complex> a_conj(n);
  for (int d = 0; d < n; ++d) a_conj[d] = std::conj(a[d]);
  std::vector<double> shell(g.radial->size());
  std::vector<double> terms(per_shell);
  for (std::size_t i = 0; i < g.radial->size(); ++i) {
    for (std::size_t s = 0; s < per_shell; ++s) {
      const std::size_t idx = i * per_shell + s;
      const Complex* z = &g.coords[idx * n];
      Complex za = 0.0;
      for (int d = 0; d < n; ++d) za += z[d] * a_conj[d];
      const double kernel = pow_neg(std::norm(1.0 - za), q_);
      terms[s] = g.sphere.weights[s] * g.abs_f_sq[idx] * kernel;
    }
    shell[i] = g.radial->weights[i] * pairwise_sum(terms);
  }
  return n * pairwise_sum(shell);
}

double KernelIntegrator::rotated_hopf(const CVector& a, double radius) const {
  // In the frame z = V w with V e_1 = a/|a|, the kernel depends on w_1 only.
  const CMatrix v = unitary_aligning(a);
  std::optional<FiberPolynomial> fiber;
  if (poly_) fiber.emplace(poly_->composed_linear(v));

  int radial_nodes = spec_.radial_nodes * (radius > 0.95 ? 2 : 1);
  radial_nodes = std::min(std::max(radial_nodes, radial_needed(radius)), kMaxRadialNodes);
  const int u_nodes = std::min(std::max(spec_.polar_nodes, radial_needed(radius)), kMaxRadialNodes);
  const int theta1 = round_up(
      std::max(spec_.angular_nodes, angular_needed(radius, 2 * degree_hint_)), 16);
  const int theta2 = fiber ? std::max(2 * fiber->max_second + 1, 4) : spec_.fiber_nodes;

  const auto radial = gauss_jacobi_unit(radial_nodes, w_, 1.0);
  const auto ugl = gauss_legendre_unit(u_nodes);

  std::vector<Complex> e1(theta1), e2(theta2);
  for (int k = 0; k < theta1; ++k) e1[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / theta1);
  for (int k = 0; k < theta2; ++k) e2[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / theta2);

  std::vector<double> shell(radial->size());
  std::vector<double> u_terms(u_nodes);
  std::vector<double> t1_terms(theta1);
  std::vector<double> t2_terms(theta2);
  std::vector<Complex> group_values;
  std::vector<Complex> pow1, pow2;

  for (std::size_t i = 0; i < radial->size(); ++i) {
    const double rt = std::sqrt(radial->nodes[i]);
    for (int iu = 0; iu < u_nodes; ++iu) {
      const double u = ugl->nodes[iu];
      const double m1 = rt * std::sqrt(u);
      const double m2 = rt * std::sqrt(1.0 - u);
      for (int k1 = 0; k1 < theta1; ++k1) {
        const Complex w1 = m1 * e1[k1];
        const double kernel = pow_neg(std::norm(1.0 - radius * w1), q_);
        double fiber_avg;
        if (fiber) {
          pow1.assign(fiber->max_first + 1, 1.0);
          for (int e = 1; e <= fiber->max_first; ++e) pow1[e] = pow1[e - 1] * w1;
          group_values.clear();
          for (const auto& [e2exp, terms] : fiber->groups) {
            Complex gsum = 0.0;
            for (const auto& [e1exp, c] : terms) gsum += c * pow1[e1exp];
            group_values.push_back(gsum);
          }
          for (int k2 = 0; k2 < theta2; ++k2) {
            const Complex w2 = m2 * e2[k2];
            pow2.assign(fiber->max_second + 1, 1.0);
            for (int e = 1; e <= fiber->max_second; ++e) pow2[e] = pow2[e - 1] * w2;
            Complex value = 0.0;
            for (std::size_t gidx = 0; gidx < fiber->groups.size(); ++gidx) {
              value += group_values[gidx] * pow2[fiber->groups[gidx].first];
            }
            t2_terms[k2] = std::norm(value);
          }
        } else {
          for (int k2 = 0; k2 < theta2; ++k2) {
            CVector w(2);
            w[0] = w1;
            w[1] = m2 * e2[k2];
            const CVector z = v * w;
            const double val = std::norm(f_.eval(z));
            check_finite(val, z, "KernelIntegrator");
            t2_terms[k2] = val;
          }
        }
        fiber_avg = pairwise_sum(t2_terms) / theta2;
        t1_terms[k1] = kernel * fiber_avg;
      }
      u_terms[iu] = ugl->weights[iu] * pairwise_sum(t1_terms) / theta1;
    }
    shell[i] = radial->weights[i] * pairwise_sum(u_terms);
  }
  return 2.0 * pairwise_sum(shell);
}

NpIntegrand::NpIntegrand(HoloFunction f, double p, QuadSpec spec)
    : p_(p), integrator_(std::move(f), p, p, std::move(spec)) {
  if (!(p_ >= 0.0)) throw UsageError("np_integral: p must be >= 0");
}

double NpIntegrand::operator()(const CVector& a) const {
  const double prefactor = p_ == 0.0 ? 1.0 : std::pow(1.0 - a.squaredNorm(), p_);
  return prefactor * integrator_(a);
}

double kernel_weighted_integral(const HoloFunction& f, const CVector& a, double q, double w,
                                const QuadSpec& spec) {
  return KernelIntegrator(f, q, w, spec)(a);
}

double np_integral(const HoloFunction& f, const BallPoint& a, double p, const QuadSpec& spec) {
  if (a.dim() != f.dim()) throw UsageError("np_integral: dimension mismatch");
  return NpIntegrand(f, p, spec)(a);
}

double sphere_kernel_integral(const BallPoint& a, double r, double p, const QuadSpec& spec) {
  if (!(r > 0.0 && r < 1.0)) throw UsageError("sphere_kernel_integral: r must lie in (0, 1)");
  if (!(p > 0.0)) throw UsageError("sphere_kernel_integral: p must be positive");
  const int n = a.dim();
  const double x = r * a.norm();
  const double prefactor = std::pow(1.0 - a.norm_sq(), p);
  const int m = round_up(std::max(spec.angular_nodes, angular_needed(x, 0)), 16);
  std::vector<Complex> e(m);
  for (int k = 0; k < m; ++k) e[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
  std::vector<double> terms(m);
  auto circle_avg = [&](double rho) {
    for (int k = 0; k < m; ++k) terms[k] = pow_neg(std::norm(1.0 - rho * e[k]), p);
    return pairwise_sum(terms) / m;
  };
  if (n == 1) return prefactor * circle_avg(x);
  // |zeta_1|^2 has density (n-1)(1-u)^{n-2} under sigma.
  const int u_nodes = std::max(spec.polar_nodes, radial_needed(x));
  const auto rule = gauss_jacobi_unit(u_nodes, n - 2.0, 0.0);
  std::vector<double> u_terms(rule->size());
  for (std::size_t i = 0; i < rule->size(); ++i) {
    u_terms[i] = rule->weights[i] * circle_avg(x * std::sqrt(rule->nodes[i]));
  }
  return prefactor * (n - 1) * pairwise_sum(u_terms);
}

}  // namespace npball
