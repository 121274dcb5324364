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
#include "npball/norms.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/report.hpp"

namespace npball {
namespace {

NormEstimate zero_estimate(int n, const QuadSpec& spec) {
  NormEstimate est;
  est.argmax = CVector::Zero(n);
  est.quad = spec;
  return est;
}

// Overflowing integrands surface here rather than as null in a report.
NormEstimate finite(NormEstimate est, const char* what) {
  if (!std::isfinite(est.value)) throw NumericError(std::string(what) + ": non-finite norm");
  return est;
}

// Compass search on the unit sphere for max |f|.
std::pair<CVector, double> refine_on_sphere(const HoloFunction& f, CVector start, double value) {
  const Eigen::Index n = start.size();
  double step = 0.02;
  while (step > 1e-10) {
    CVector best;
    double best_value = value;
    for (Eigen::Index d = 0; d < n; ++d) {
      for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        CVector trial = start;
        trial[d] += step * dir;
        trial /= trial.norm();
        const double v = std::abs(f.eval(trial));
        if (v > best_value) {
          best_value = v;
          best = std::move(trial);
        }
      }
    }
    if (best.size() > 0) {
      start = std::move(best);
      value = best_value;
    } else {
      step *= 0.5;
    }
  }
  return {start, value};
}

int dense_direction_count(int n) { return n == 1 ? 1024 : 2048; }

}  // namespace

void to_json(nlohmann::json& j, const NormEstimate& est) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& s : est.trace) {
    trace.push_back({{"a", point_json(s.point)},
                     {"value", std::isfinite(s.value) ? nlohmann::json(s.value) : nlohmann::json()}});
  }
  j = nlohmann::json{
      {"value", est.value},
      {"argmax", est.argmax ? point_json(*est.argmax) : nlohmann::json()},
      {"lower_bound", est.lower_bound},
      {"evaluations", est.evaluations},
      {"tail_bound", est.tail_bound},
      {"quad", est.quad},
      {"trace", trace},
  };
}

QuadSpec effective_spec(const HoloFunction& f, const QuadSpec& spec) {
  QuadSpec out = spec;
  if (out.backend == Backend::spectral && (f.dim() > 2 || !f.as_polynomial())) {
    out.backend = Backend::quadrature;
  }
  return out;
}

NormEstimate norm_a2p(const HoloFunction& f, double p, const QuadSpec& spec) {
  if (!(p >= 0.0)) throw UsageError("norm_a2p: p must be >= 0");
  if (f.is_zero()) return zero_estimate(f.dim(), spec);
  const int n = f.dim();
  NormEstimate est;
  est.quad = spec;
  const CVector origin = CVector::Zero(n);
  const double integral = KernelIntegrator(f, 0.0, p, spec)(origin);
  est.value = std::sqrt(std::max(integral, 0.0));
  est.argmax = origin;
  est.trace.push_back({origin, integral});
  est.tail_bound = f.tail_bound(1.0 - 1e-3);
  est.evaluations = 1;
  return finite(std::move(est), "norm_a2p");
}

NormEstimate norm_np(const HoloFunction& f, double p, const SearchSpec& search,
                     const QuadSpec& spec) {
  if (!(p > 0.0)) throw UsageError("norm_np: p must be positive");
  if (f.is_zero()) return zero_estimate(f.dim(), spec);
  const NpIntegrand integrand(f, p, spec);
  const SearchResult found =
      maximize_over_ball([&](const CVector& a) { return integrand(a); }, f.dim(), search);
  NormEstimate est;
  est.value = std::sqrt(std::max(found.value, 0.0));
  est.argmax = found.argmax;
  est.trace = found.trace;
  est.quad = spec;
  est.tail_bound = f.tail_bound(search.max_radius);
  est.lower_bound = true;
  est.evaluations = found.evaluations;
  return finite(std::move(est), "norm_np");
}

SearchSpec bergman_type_search(int n) {
  SearchSpec s;
  s.levels.clear();
  for (int j = 1; j <= 24; ++j) s.levels.push_back(1.0 - std::pow(2.0, -0.5 * j));
  s.directions = n == 1 ? 16 : 32;
  s.max_radius = 1.0 - 1e-6;
  s.tolerance = 1e-7;
  s.initial_step = 0.02;
  return s;
}

NormEstimate norm_bergman_type(const HoloFunction& f, double q) {
  return norm_bergman_type(f, q, bergman_type_search(f.dim()));
}

NormEstimate norm_bergman_type(const HoloFunction& f, double q, const SearchSpec& search) {
  if (!(q > 0.0)) throw UsageError("norm_bergman_type: q must be positive");
  if (f.is_zero()) return zero_estimate(f.dim(), QuadSpec{});
  const auto objective = [&](const CVector& z) {
    return std::abs(f.eval(z)) * std::pow(1.0 - z.squaredNorm(), q);
  };
  const SearchResult found = maximize_over_ball(objective, f.dim(), search);
  NormEstimate est;
  est.value = found.value;
  est.argmax = found.argmax;
  est.trace = found.trace;
  est.lower_bound = true;
  est.evaluations = found.evaluations;
  est.tail_bound = f.tail_bound(search.max_radius);
  return finite(std::move(est), "norm_bergman_type");
}

NormEstimate norm_sup(const HoloFunction& f) {
  const int n = f.dim();
  if (f.is_zero()) return zero_estimate(n, QuadSpec{});
  const auto dirs = sphere_directions(n, n == 1 ? 256 : 512);
  NormEstimate est;
  est.lower_bound = true;
  est.value = -1.0;
  auto consider = [&](const CVector& z) {
    const double v = std::abs(f.eval(z));
    ++est.evaluations;
    if (v > est.value) {
      est.value = v;
      est.argmax = z;
    }
  };
  for (double shell : {0.9, 0.99, 0.999}) {
    for (const auto& d : dirs) consider(shell * d);
  }
  if (f.as_polynomial()) {
    // Maximum modulus: the sup over the closed ball is attained on the sphere.
    CVector best_dir;
    double best = -1.0;
    for (const auto& d : sphere_directions(n, dense_direction_count(n))) {
      const double v = std::abs(f.eval(d));
      ++est.evaluations;
      if (v > best) {
        best = v;
        best_dir = d;
      }
    }
    for (const auto& d : dirs) {
      const double v = std::abs(f.eval(d));
      if (v > best) {
        best = v;
        best_dir = d;
      }
    }
    auto [point, value] = refine_on_sphere(f, best_dir, best);
    if (value > est.value) {
      est.value = value;
      est.argmax = point;
    }
  }
  est.trace.push_back({*est.argmax, est.value});
  return finite(std::move(est), "norm_sup");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non-member";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const Np0Report& r) {
  j = nlohmann::json{
      {"norm_sq", r.norm_sq},
      {"radii", r.radii},
      {"decay_trace", r.decay_trace},
      {"decays", r.decays},
      {"dilation_r", r.dilation_r},
      {"dilation_trace", r.dilation_trace},
      {"dilation_vanishes", r.dilation_vanishes},
      {"verdict", to_string(r.verdict)},
  };
}

Np0Report np0_test(const HoloFunction& f, double p, const SearchSpec& search, const QuadSpec& spec,
                   const Np0Thresholds& thresholds) {
  const int n = f.dim();
  Np0Report report;
  for (int j = 1; j <= 10; ++j) report.radii.push_back(1.0 - std::ldexp(1.0, -j));
  report.dilation_r = {0.9, 0.99, 0.999};
  if (f.is_zero()) {
    report.decay_trace.assign(report.radii.size(), 0.0);
    report.dilation_trace.assign(report.dilation_r.size(), 0.0);
    report.decays = report.dilation_vanishes = true;
    report.verdict = Verdict::member;
    return report;
  }

  const double norm = norm_np(f, p, search, spec).value;
  report.norm_sq = norm * norm;

  const NpIntegrand integrand(f, p, spec);
  const auto dirs = sphere_directions(n, search.directions_for(n));
  report.decay_trace.resize(report.radii.size());
  parallel_for(report.radii.size(), [&](std::size_t j) {
    double best = 0.0;
    for (const auto& d : dirs) best = std::max(best, integrand(report.radii[j] * d));
    report.decay_trace[j] = best;
  });
  bool decreasing = true;
  for (std::size_t j = thresholds.decreasing_from; j < report.decay_trace.size(); ++j) {
    // index j holds radius 1 - 2^{-(j+1)}
    if (report.decay_trace[j] > report.decay_trace[j - 1] * (1.0 + 1e-12)) decreasing = false;
  }
  report.decays =
      decreasing && report.decay_trace.back() < thresholds.decay_eps * report.norm_sq;

  const auto poly = f.as_polynomial();
  for (double r : report.dilation_r) {
    HoloFunction diff = poly ? HoloFunction::polynomial(poly->dilated(r) - *poly)
                             : HoloFunction::black_box(
                                   n,
                                   [f, r](const CVector& z) {
                                     return f.eval(r * z) - f.eval(z);
                                   },
                                   "dilation difference");
    report.dilation_trace.push_back(norm_np(diff, p, search, effective_spec(diff, spec)).value);
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < report.dilation_trace.size(); ++i) {
    if (report.dilation_trace[i] > report.dilation_trace[i - 1] * (1.0 + 1e-12)) shrinking = false;
  }
  report.dilation_vanishes = shrinking && report.dilation_trace[1] < thresholds.dilation_eps * norm;

  if (report.decays && report.dilation_vanishes) {
    report.verdict = Verdict::member;
  } else if (!report.decays && !report.dilation_vanishes) {
    report.verdict = Verdict::non_member;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

double isometry_residual(const HoloFunction& f, const Automorphism& phi, double p,
                         const QuadSpec& spec, const SearchSpec& search) {
  if (phi.dim() != f.dim()) throw UsageError("isometry_residual: dimension mismatch");
  const double base = norm_np(f, p, search, effective_spec(f, spec)).value;
  if (!(base > 0.0)) throw UsageError("isometry_residual: ||f||_p = 0");
  const HoloFunction wf = weighted_compose(f, phi);
  const double image = norm_np(wf, p, search, effective_spec(wf, spec)).value;
  return std::abs(image - base) / base;
}

MultiplierReport multiplier_check(const HoloFunction& u, const HoloFunction& f, double p,
                                  const SearchSpec& search, const QuadSpec& spec,
                                  double rel_slack) {
  MultiplierReport r;
  r.u_sup = norm_sup(u).value;
  r.f_norm = norm_np(f, p, search, effective_spec(f, spec)).value;
  const HoloFunction uf = multiply(u, f);
  r.uf_norm = norm_np(uf, p, search, effective_spec(uf, spec)).value;
  const double scale = r.u_sup * r.f_norm;
  r.ratio = scale > 0.0 ? r.uf_norm / scale : 0.0;
  r.holds = r.uf_norm <= scale * (1.0 + rel_slack);
  return r;
}

CompositionReport composition_bound_check(const Automorphism& phi, const HoloFunction& f, double p,
                                          const SearchSpec& search, const QuadSpec& spec,
                                          double rel_slack) {
  if (phi.dim() != f.dim()) throw UsageError("composition_bound_check: dimension mismatch");
  CompositionReport r;
  const double a = phi.base().norm();
  r.bound = std::pow((1.0 + a) / (1.0 - a), 0.5 * (f.dim() + 1));
  r.f_norm = norm_np(f, p, search, effective_spec(f, spec)).value;
  const HoloFunction composed = compose(f, phi);
  r.composed_norm = norm_np(composed, p, search, effective_spec(composed, spec)).value;
  r.ratio = r.f_norm > 0.0 ? r.composed_norm / r.f_norm : 0.0;
  r.holds = r.composed_norm <= r.bound * r.f_norm * (1.0 + rel_slack);
  return r;
}

double sphere_kernel_constant(int n, double p, const QuadSpec& spec) {
  static const double kLevels[] = {0.0, 0.3, 0.6, 0.8, 0.9, 0.95, 0.99, 0.999};
  static const double kRadii[] = {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 0.999};
  double best = 0.0;
  for (double level : kLevels) {
    CVector a = CVector::Zero(n);
    a[0] = level;
    const BallPoint point(a);
    for (double r : kRadii) best = std::max(best, sphere_kernel_integral(point, r, p, spec));
  }
  return best;
}

double shell_max_integral(const HoloFunction& f, double p, const QuadSpec& spec) {
  if (!(p >= 0.0)) throw UsageError("shell_max_integral: p must be >= 0");
  const int n = f.dim();
  const auto rule = gauss_jacobi_unit(spec.radial_nodes, p, n - 1.0);
  const auto dirs = sphere_directions(n, dense_direction_count(n));
  std::vector<double> terms(rule->size());
  parallel_for(rule->size(), [&](std::size_t i) {
    const double r = std::sqrt(rule->nodes[i]);
    double best = 0.0;
    for (const auto& d : dirs) best = std::max(best, std::norm(f.eval(r * d)));
    terms[i] = rule->weights[i] * best;
  });
  return n * pairwise_sum(terms);
}

ShellBoundReport shell_bound_check(const HoloFunction& f, double p, double constant,
                                   const SearchSpec& search, const QuadSpec& spec) {
  ShellBoundReport r;
  const double norm = norm_np(f, p, search, effective_spec(f, spec)).value;
  r.lhs = norm * norm;
  r.rhs = constant * shell_max_integral(f, p, spec);
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

}  // namespace npball
