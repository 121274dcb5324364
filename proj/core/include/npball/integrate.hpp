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
#ifndef NPBALL_INTEGRATE_HPP_
#define NPBALL_INTEGRATE_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npball/ball.hpp"
#include "npball/holo.hpp"
#include "npball/quadrature.hpp"

namespace npball {

enum class Backend { spectral, quadrature, montecarlo };
enum class SphereRuleKind { circle_trapezoid, hopf_product, monte_carlo };

std::string to_string(Backend b);
std::string to_string(SphereRuleKind k);
Backend backend_from_string(const std::string& s);
SphereRuleKind sphere_rule_from_string(const std::string& s);

/// Integration configuration shared by every integral over the ball.
struct QuadSpec {
  Backend backend = Backend::spectral;
  int radial_nodes = 64;   // Gauss-Jacobi nodes in t = |z|^2
  SphereRuleKind sphere_rule = SphereRuleKind::circle_trapezoid;
  int angular_nodes = 256;  // circle nodes (n=1) or first Hopf angle (n=2)
  int polar_nodes = 32;     // Hopf u = |zeta_1|^2 nodes
  int fiber_nodes = 32;     // second Hopf angle
  int mc_samples = 4096;
  std::optional<std::uint64_t> seed;
  double series_tol = 1e-14;
  int max_series_terms = 200000;
  int tube_nodes = 24;  // per axis in Carleson tube integrals

  // Defaults for dimension n: circle rule for n=1, Hopf for n=2, Monte Carlo
  // sphere rule above that (which needs a seed).
  static QuadSpec for_dimension(int n, Backend backend = Backend::spectral);
  // Throws UsageError when the spec cannot be used in dimension n.
  void validate(int n) const;
  // Every node count multiplied by factor (the calibration pilot uses 4).
  QuadSpec refined(int factor) const;

  bool operator==(const QuadSpec&) const = default;
};

void to_json(nlohmann::json& j, const QuadSpec& spec);
void from_json(const nlohmann::json& j, QuadSpec& spec);

struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;  // |difference| against the half-resolution rule
  Backend backend = Backend::quadrature;
};

// int_B g (1-|z|^2)^weight_exponent dV, normalized so V(B) = 1, by polar
// coordinates: n int_0^1 t^{n-1} (1-t)^w int_S g(sqrt(t) zeta) dsigma dt.
IntegralEstimate ball_integral(const std::function<double(const CVector&)>& g, int n,
                               const QuadSpec& spec, double weight_exponent = 0.0);

// int_S g dsigma with the rule selected by spec.
double sphere_integral(const std::function<double(const CVector&)>& g, int n, const QuadSpec& spec);

// Sphere second moment (n-1)! alpha! / (n-1+|alpha|)! of zeta^alpha.
double sphere_weight(const MultiIndex& alpha);

/// M_f(r) = int_S |f(r zeta)|^2 dsigma = sum_d s_d r^{2d}.
struct RadialProfile {
  std::vector<double> coeffs;  // s_d, d = 0..degree
  double operator()(double r) const;
};

RadialProfile radial_profile(const Polynomial& f);

/// Taylor coefficients of (1-x)^{-q}, c_k = Gamma(q+k) / (Gamma(q) k!), kept
/// until sum_{k>K} c_k radius^k < tol.
struct KernelSeries {
  std::vector<double> coeffs;
  double tail_bound = 0.0;
};

KernelSeries kernel_series(double q, double radius, double tol, int max_terms = 200000);
KernelSeries kernel_series(double q, const BallPoint& a, double tol, int max_terms = 200000);

// int_B |f|^2 |1-<z,a>|^{-2q} (1-|z|^2)^w dV for q >= 0, w >= 0.
double kernel_weighted_integral(const HoloFunction& f, const CVector& a, double q, double w,
                                const QuadSpec& spec);

// I_f(a) = int_B |f(z)|^2 (1-|Phi_a(z)|^2)^p dV for p >= 0 (p = 0 gives the
// unweighted Bergman integral).
double np_integral(const HoloFunction& f, const BallPoint& a, double p, const QuadSpec& spec);

// (1-|a|^2)^p int_S |1 - <zeta, r a>|^{-2p} dsigma.
double sphere_kernel_integral(const BallPoint& a, double r, double p, const QuadSpec& spec);

/// Repeated evaluation of a -> int |f|^2 |1-<z,a>|^{-2q} (1-|z|^2)^w dV for
/// one f. Keeps the coefficient form and the |f|^2 node tables between calls.
/// Thread-safe.
class KernelIntegrator {
 public:
  KernelIntegrator(HoloFunction f, double q, double w, QuadSpec spec);

  double operator()(const CVector& a) const;
  Backend last_backend() const;

  const HoloFunction& function() const { return f_; }
  const QuadSpec& spec() const { return spec_; }

 private:
  struct Grid {
    std::shared_ptr<const GaussRule> radial;
    SphereRule sphere;
    std::vector<Complex> coords;     // radial-major, stride n
    std::vector<double> abs_f_sq;    // |f|^2 at points
  };

  double spectral(const CVector& a) const;
  double quadrature(const CVector& a) const;
  double fixed_grid(const CVector& a, double radius) const;
  double rotated_hopf(const CVector& a, double radius) const;
  const Grid& grid(int radial_nodes, int sphere_nodes) const;

  HoloFunction f_;
  std::optional<Polynomial> poly_;
  double q_;
  double w_;
  QuadSpec spec_;
  int degree_hint_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Grid>> grids_;
  mutable Backend last_backend_;
};

/// I_f(a) for one f and exponent p, reusing a KernelIntegrator.
class NpIntegrand {
 public:
  NpIntegrand(HoloFunction f, double p, QuadSpec spec);
  double operator()(const CVector& a) const;
  double operator()(const BallPoint& a) const { return (*this)(a.coords()); }
  double p() const { return p_; }
  const KernelIntegrator& integrator() const { return integrator_; }

 private:
  double p_;
  KernelIntegrator integrator_;
};

}  // namespace npball

#endif  // NPBALL_INTEGRATE_HPP_
