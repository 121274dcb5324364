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
#include "npball/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "npball/carleson.hpp"
#include "npball/corpus.hpp"
#include "npball/gap.hpp"
#include "npball/report.hpp"

namespace npball {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

// Uniform in [0,1) from 53 random bits; independent of the standard
// library's distribution implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex unit_complex(std::mt19937_64& rng) {
  const double re = 2.0 * unit(rng) - 1.0;
  return Complex(re, 2.0 * unit(rng) - 1.0);
}

Polynomial random_polynomial(std::mt19937_64& rng, int n, int max_degree) {
  std::vector<std::pair<MultiIndex, Complex>> terms;
  if (n == 1) {
    const int degree = 1 + static_cast<int>(rng() % max_degree);
    for (int d = 0; d <= degree; ++d) terms.push_back({{d}, unit_complex(rng)});
    terms.push_back({{degree}, 0.5});  // keep the top coefficient away from zero
  } else {
    const int count = 3 + static_cast<int>(rng() % 4);
    for (int t = 0; t < count; ++t) {
      MultiIndex alpha(n, 0);
      int budget = static_cast<int>(rng() % (max_degree + 1));
      for (int i = 0; i < n && budget > 0; ++i) {
        const int e = i + 1 == n ? budget : static_cast<int>(rng() % (budget + 1));
        alpha[i] = e;
        budget -= e;
      }
      terms.push_back({alpha, unit_complex(rng)});
    }
  }
  return Polynomial(n, terms);
}

CVector random_point(std::mt19937_64& rng, int n, double max_radius) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = unit_complex(rng);
  const double r = max_radius * std::pow(unit(rng), 1.0 / (2 * n));
  return v * (r / v.norm());
}

struct Context {
  const Calibration& cal;
  const VerifyOptions& options;
  Clock::time_point start;
  std::optional<Calibration> recomputed;
  std::optional<EquivalenceReport> gap_report;

  const Calibration& reproduce() {
    if (!recomputed) recomputed = compute_calibration(cal.seed());
    return *recomputed;
  }

  const EquivalenceReport& gap() {
    if (!gap_report) {
      gap_report = equivalence_report(GapSpec{}, 0.5, 0.5, {6, 8, 10, 12}, SearchSpec{},
                                      QuadSpec::for_dimension(1));
    }
    return *gap_report;
  }
};

struct Check {
  CheckInfo info;
  std::function<void(Context&, CheckOutcome&)> run;
};

// 1
void check_isometry(Context& ctx, CheckOutcome& out) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(ctx.options.seed);
  const QuadSpec quad = QuadSpec::for_dimension(1, Backend::quadrature);
  const SearchSpec search;
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "case,p,a_re,a_im,phase,residual\n";
  for (int i = 0; i < 20; ++i) {
    const Polynomial f = random_polynomial(rng, 1, 6);
    const CVector a = random_point(rng, 1, 0.8);
    CMatrix u(1, 1);
    u(0, 0) = std::polar(1.0, 2.0 * M_PI * unit(rng));
    const Automorphism phi(BallPoint(a), u);
    for (double p : {0.5, 1.0}) {
      const double r = isometry_residual(HoloFunction::polynomial(f), phi, p, quad, search);
      worst = std::max(worst, r);
      rows.push_back({{"case", i}, {"p", p}, {"a", point_json(a)}, {"residual", r}});
      csv << i << ',' << p << ',' << a[0].real() << ',' << a[0].imag() << ','
          << std::arg(u(0, 0)) << ',' << r << '\n';
    }
  }
  const double elapsed = seconds_since(t0);
  out.passed = worst <= 2e-2 && elapsed <= 60.0;
  out.message = "max residual " + fmt(worst, 3) + " over 40 cases (limit 2e-2), " +
                fmt(elapsed, 3) + " s (limit 60 s)";
  out.details = {{"max_residual", worst}, {"cases", rows}};
  out.tables.push_back({"isometry.csv", csv.str()});
}

// 2
void check_backend_agreement(Context& ctx, CheckOutcome& out) {
  std::mt19937_64 rng(ctx.options.seed + 2);
  double worst = 0.0;
  int count = 0;
  nlohmann::json worst_case;
  for (int n : {1, 2}) {
    const int functions = n == 1 ? 6 : 4;
    const int points = n == 1 ? 5 : 4;
    for (int i = 0; i < functions; ++i) {
      const HoloFunction f = HoloFunction::polynomial(random_polynomial(rng, n, 8));
      std::vector<CVector> as;
      for (int k = 0; k + 1 < points; ++k) as.push_back(random_point(rng, n, 0.9));
      CVector edge = random_point(rng, n, 0.9);
      as.push_back(edge * (0.9 / edge.norm()));
      for (const auto& a : as) {
        for (double p : {0.25, 0.5, 1.0, 1.5}) {
          const QuadSpec spectral = QuadSpec::for_dimension(n, Backend::spectral);
          const QuadSpec quad = QuadSpec::for_dimension(n, Backend::quadrature);
          const double x = np_integral(f, BallPoint(a), p, spectral);
          const double y = np_integral(f, BallPoint(a), p, quad);
          const double rel = std::abs(x - y) / std::max(std::abs(x), 1e-300);
          ++count;
          if (rel >= worst) {
            worst = rel;
            worst_case = {{"n", n}, {"p", p}, {"a", point_json(a)}, {"spectral", x},
                          {"quadrature", y}};
          }
        }
      }
    }
  }
  out.passed = worst <= 1e-6;
  out.message = "max relative difference " + fmt(worst, 3) + " over " + std::to_string(count) +
                " integrals (limit 1e-6)";
  out.details = {{"max_relative_difference", worst}, {"count", count}, {"worst", worst_case}};
}

// 3
void check_embedding(Context&, CheckOutcome& out) {
  const std::vector<double> ps = {1.5, 1.0, 0.5, 0.25};
  const QuadSpec quad = QuadSpec::for_dimension(1);
  bool ok = true;
  double worst_chain = -INFINITY, worst_a2p = -INFINITY;
  nlohmann::json rows = nlohmann::json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "function,p,np_norm,a2p_norm\n";
  for (const auto& entry : function_corpus()) {
    const HoloFunction f = corpus_function(entry);
    SearchSpec search;
    std::map<double, double> norms;
    // Largest p first; every later search also starts from earlier maximizers.
    for (double p : ps) {
      const NormEstimate est = norm_np(f, p, search, quad);
      norms[p] = est.value;
      if (est.argmax && est.argmax->norm() > 0.0) search.seeds.push_back(*est.argmax);
      const double a2p = norm_a2p(f, p, quad).value;
      worst_a2p = std::max(worst_a2p, a2p - est.value);
      if (est.value < a2p - 1e-9) ok = false;
      csv << entry.name << ',' << p << ',' << est.value << ',' << a2p << '\n';
    }
    for (double p1 : ps) {
      for (double p2 : ps) {
        if (p2 <= p1) continue;
        const double excess = norms[p2] / norms[p1] - 1.0;
        worst_chain = std::max(worst_chain, excess);
        if (norms[p2] > norms[p1] * (1.0 + 1e-9)) ok = false;
      }
    }
    rows.push_back({{"function", entry.name}, {"norms", {{"0.25", norms[0.25]}, {"0.5", norms[0.5]},
                                                          {"1", norms[1.0]}, {"1.5", norms[1.5]}}}});
  }
  out.passed = ok;
  out.message = "largest ||f||_p2/||f||_p1 - 1 = " + fmt(worst_chain, 3) +
                " (limit 1e-9); largest A2p excess " + fmt(worst_a2p, 3) + " (limit 1e-9)";
  out.details = {{"max_chain_excess", worst_chain}, {"max_a2p_excess", worst_a2p}, {"rows", rows}};
  out.tables.push_back({"embedding.csv", csv.str()});
}

// 4
void check_multiplier(Context&, CheckOutcome& out) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  bool ok = true;
  double worst_ratio = 0.0, worst_const = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  const auto& pairs = multiplier_corpus();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const HoloFunction u = parse_function(pairs[i].first, 1).f;
    const HoloFunction f = parse_function(pairs[i].second, 1).f;
    const bool constant_u = u.as_polynomial() && u.as_polynomial()->degree() == 0;
    for (double p : {0.5, 1.0}) {
      const MultiplierReport r = multiplier_check(u, f, p, search, quad, 1e-6);
      ok = ok && r.holds;
      worst_ratio = std::max(worst_ratio, r.ratio);
      double const_err = 0.0;
      if (constant_u) {
        const double expected = r.u_sup * r.f_norm;
        const_err = std::abs(r.uf_norm - expected) / expected;
        worst_const = std::max(worst_const, const_err);
        if (const_err > 1e-10) ok = false;
      }
      rows.push_back({{"u", pairs[i].first}, {"f", pairs[i].second}, {"p", p},
                      {"u_sup", r.u_sup}, {"f_norm", r.f_norm}, {"uf_norm", r.uf_norm},
                      {"ratio", r.ratio}, {"constant_u_error", const_err}});
    }
  }
  out.passed = ok;
  out.message = "max ||uf||_p/(||u||_inf ||f||_p) = " + fmt(worst_ratio, 8) +
                " (limit 1+1e-6); constant-u relative error " + fmt(worst_const, 3) +
                " (limit 1e-10)";
  out.details = {{"max_ratio", worst_ratio}, {"max_constant_error", worst_const}, {"rows", rows}};
}

// 5
void check_composition(Context&, CheckOutcome& out) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  bool ok = true;
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& entry : function_corpus()) {
    if (entry.gap) continue;
    const HoloFunction f = corpus_function(entry);
    for (double a : {0.3, 0.5, 0.7}) {
      const Automorphism phi = Automorphism::involution(BallPoint({Complex(a, 0.0)}));
      const CompositionReport r = composition_bound_check(phi, f, 1.0, search, quad, 1e-4);
      ok = ok && r.holds;
      worst = std::max(worst, r.ratio / r.bound);
      rows.push_back({{"function", entry.name}, {"a", a}, {"bound", r.bound}, {"ratio", r.ratio}});
    }
  }
  out.passed = ok;
  out.message = "max attained ratio / bound = " + fmt(worst, 4) + " (limit 1+1e-4)";
  out.details = {{"max_ratio_over_bound", worst}, {"rows", rows}};
}

// 6
void check_gap_np(Context& ctx, CheckOutcome& out) {
  const EquivalenceReport& rep = ctx.gap();
  GapSpec spec;
  const double s12 = gap_np_rhs(spec, 1.0, 12).value;
  const double err = std::abs(s12 - 4.0 / 3.0);
  out.passed = rep.np_spread <= 4.0 && err <= 1e-6;
  out.message = "ratio spread " + fmt(rep.np_spread, 5) + " over K=6..12 (limit 4); p=1 sum at K=12 " +
                fmt(s12, 10) + ", |S-4/3| = " + fmt(err, 3) + " (limit 1e-6)";
  nlohmann::json rj = rep;
  out.details = {{"report", rj}, {"p1_sum_K12", s12}};
  out.tables.push_back({"gap_equivalence.csv", to_csv(rep)});
}

// 7
void check_gap_aq(Context& ctx, CheckOutcome& out) {
  const EquivalenceReport& rep = ctx.gap();  // q = 0.5
  GapSpec spec;
  std::vector<double> ratios_q1;
  for (int K : {6, 8, 10, 12}) {
    const HoloFunction f = HoloFunction::polynomial(truncate(gap_series(spec, K), K));
    ratios_q1.push_back(norm_bergman_type(f, 1.0).value / gap_aq_rhs(spec, 1.0, K).value);
  }
  const double spread_q1 = *std::max_element(ratios_q1.begin(), ratios_q1.end()) /
                           *std::min_element(ratios_q1.begin(), ratios_q1.end());
  out.passed = rep.aq_spread <= 4.0 && spread_q1 <= 4.0;
  out.message = "ratio spread q=0.5: " + fmt(rep.aq_spread, 5) + ", q=1: " + fmt(spread_q1, 5) +
                " (limit 4)";
  out.details = {{"spread_q0.5", rep.aq_spread}, {"spread_q1", spread_q1},
                 {"ratios_q1", ratios_q1}};
}

// 8
void check_separation(Context&, CheckOutcome& out) {
  const auto [f1, f2] = separation_witnesses(1, 0.5, 1.0);
  const double limit = 1.0 / (1.0 - std::sqrt(0.5));
  const double s12 = gap_np_rhs(f2, 1.0, 12).value;
  const double err = std::abs(s12 - limit);
  const bool f2_sum = err <= 1e-6;

  const SeriesSum at_p1 = gap_np_rhs(f2, 0.5, 12);
  bool f2_diverges = at_p1.divergent;
  for (std::size_t k = 0; k < at_p1.partial_sums.size(); ++k) {
    if (std::abs(at_p1.partial_sums[k] - (k + 1.0)) > 1e-9 * (k + 1.0)) f2_diverges = false;
  }

  bool f1_aq = true;
  for (int K = 1; K <= 12; ++K) {
    const MaxTerm m = gap_aq_rhs(f1, 1.0, K);
    if (std::abs(m.value - 1.0) > 1e-12 || m.unbounded) f1_aq = false;
  }

  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  auto norm_sq = [&](int K) {
    const double v = norm_np(HoloFunction::polynomial(truncate(gap_series(f1, K), K)), 1.0, search,
                             quad)
                         .value;
    return v * v;
  };
  const double n4 = norm_sq(4), n12 = norm_sq(12);
  const bool f1_grows = n12 >= 2.0 * n4;

  // Smallest K whose geometric tail limit * 2^{-K/2} is within 1e-6.
  const int k_needed = static_cast<int>(std::ceil(2.0 * std::log2(limit / 1e-6)));
  out.passed = f2_sum && f2_diverges && f1_aq && f1_grows;
  std::ostringstream msg;
  msg << "f2 sum at p2, K=12: " << fmt(s12, 8) << " vs " << fmt(limit, 8) << " (|diff| "
      << fmt(err, 3) << ", limit 1e-6" << (f2_sum ? "" : "; the tail needs K >= " +
                                                             std::to_string(k_needed))
      << "); f2 at p1 sums to K with divergence flag: " << (f2_diverges ? "yes" : "no")
      << "; f1 max term = 1 for K=1..12: " << (f1_aq ? "yes" : "no")
      << "; ||f1_K||^2 at K=12 / K=4 = " << fmt(n12 / n4, 4) << " (need >= 2)";
  out.message = msg.str();
  out.details = {{"f2_sum_K12", s12},          {"f2_limit", limit},
                 {"f2_sum_error", err},        {"f2_K_needed", k_needed},
                 {"f2_p1_partial_sums", at_p1.partial_sums},
                 {"f2_p1_divergent", at_p1.divergent},
                 {"f1_aq_is_one", f1_aq},      {"f1_norm_sq_K4", n4},
                 {"f1_norm_sq_K12", n12}};
}

// 9
void check_carleson(Context& ctx, CheckOutcome& out) {
  const double p = ctx.cal.carleson_p();
  const double c_star = ctx.cal.carleson_c_star();
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  bool inside = true;
  double lo = INFINITY, hi = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& entry : function_corpus()) {
    const HoloFunction f = corpus_function(entry);
    const double norm = norm_np(f, p, search, quad).value;
    const CarlesonReport rep = carleson_constant(f, p, TubeGrid{}, quad);
    const double ratio = rep.sup_quotient / (norm * norm);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    if (!(ratio >= 1.0 / c_star && ratio <= c_star)) inside = false;
    rows.push_back({{"function", entry.name}, {"sup_quotient", rep.sup_quotient},
                    {"norm_sq", norm * norm}, {"ratio", ratio}});
    out.tables.push_back({"carleson_" + entry.name + ".csv", to_csv(rep)});
  }
  bool reproduced = true;
  std::string repro = "not rechecked";
  if (ctx.options.reproduce_calibration) {
    const Calibration& again = ctx.reproduce();
    reproduced = again.carleson_c_star() == c_star && again.text() == ctx.cal.text();
    repro = reproduced ? "C* reproduced exactly" : "C* NOT reproduced (" +
                                                       fmt(again.carleson_c_star(), 8) + ")";
  }
  out.passed = inside && reproduced;
  out.message = "sup quotient / ||f||^2 in [" + fmt(lo, 5) + ", " + fmt(hi, 5) + "], bracket [" +
                fmt(1.0 / c_star, 5) + ", " + fmt(c_star, 5) + "]; " + repro;
  out.details = {{"c_star", c_star}, {"range", {lo, hi}}, {"rows", rows}};
}

// 10
void check_np0(Context& ctx, CheckOutcome& out) {
  const Np0Thresholds th = ctx.cal.np0_thresholds();
  const double p = ctx.cal.np0_p();
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  bool ok = true;
  double worst_decay = 0.0, worst_dilation = 0.0;
  std::vector<std::string> failures;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& entry : function_corpus()) {
    if (entry.gap) continue;
    const Np0Report r = np0_test(corpus_function(entry), p, search, quad, th);
    const double norm = std::sqrt(r.norm_sq);
    const double decay = r.norm_sq > 0 ? r.decay_trace.back() / r.norm_sq : 0.0;
    const double dilation = norm > 0 ? r.dilation_trace[1] / norm : 0.0;
    worst_decay = std::max(worst_decay, decay);
    worst_dilation = std::max(worst_dilation, dilation);
    bool decreasing = true;
    for (std::size_t j = th.decreasing_from; j < r.decay_trace.size(); ++j) {
      if (r.decay_trace[j] > r.decay_trace[j - 1]) decreasing = false;
    }
    const bool pass = decay < th.decay_eps && dilation < th.dilation_eps && decreasing;
    if (!pass) failures.push_back(entry.name);
    ok = ok && pass;
    nlohmann::json rj = r;
    rows.push_back({{"function", entry.name}, {"report", rj}});
  }
  bool reproduced = true;
  std::string repro = "calibration not rechecked";
  if (ctx.options.reproduce_calibration) {
    reproduced = ctx.reproduce().text() == ctx.cal.text();
    repro = reproduced ? "calibration reproduced byte-identically"
                       : "calibration NOT reproduced (id " + ctx.reproduce().id() + ")";
  }
  out.passed = ok && reproduced;
  std::string msg = "max I_f(a_10)/||f||^2 = " + fmt(worst_decay, 3) + " (limit " +
                    fmt(th.decay_eps) + "), max ||f_0.99 - f||/||f|| = " +
                    fmt(worst_dilation, 3) + " (limit " + fmt(th.dilation_eps) + "); " + repro;
  for (const auto& name : failures) msg += "; failed: " + name;
  out.message = msg;
  out.details = {{"max_decay_ratio", worst_decay}, {"max_dilation_ratio", worst_dilation},
                 {"rows", rows}};
}

// 11
void check_transform(Context& ctx, CheckOutcome& out) {
  const HoloFunction one = HoloFunction::constant(1, 1.0);
  const QuadSpec quad = QuadSpec::for_dimension(1);
  std::vector<double> values;
  for (int j = 1; j <= 10; ++j) {
    CVector z(1);
    z[0] = 1.0 - std::ldexp(1.0, -j);
    values.push_back(carleson_transform(one, 1.0, 1.0, BallPoint(z), quad));
  }
  bool decreasing = true;
  for (int j = 4; j < 10; ++j) {
    // values[j] is at 1 - 2^{-(j+1)}
    if (!(values[j] < values[j - 1])) decreasing = false;
  }
  const double eps = ctx.cal.transform_eps();
  out.passed = decreasing && values.back() < eps;
  out.message = std::string("decreasing for j >= 4: ") + (decreasing ? "yes" : "no") +
                "; value at j=10 " + fmt(values.back(), 5) + " (limit " + fmt(eps, 6) + ")";
  out.details = {{"values", values}, {"eps", eps}};
}

// 12
void check_shell_bound(Context& ctx, CheckOutcome& out) {
  const QuadSpec quad = QuadSpec::for_dimension(1);
  const SearchSpec search;
  bool ok = true;
  double worst = 0.0;
  nlohmann::json rows = nlohmann::json::array();
  for (double p : {0.25, 0.5, 1.0}) {
    const double c = ctx.cal.shell_constant(p);
    for (const auto& entry : function_corpus()) {
      const ShellBoundReport r = shell_bound_check(corpus_function(entry), p, c, search, quad);
      ok = ok && r.holds;
      worst = std::max(worst, r.lhs / r.rhs);
      rows.push_back({{"function", entry.name}, {"p", p}, {"C", c}, {"lhs", r.lhs}, {"rhs", r.rhs}});
    }
  }
  const double total = seconds_since(ctx.start);
  out.passed = ok && total <= 600.0;
  out.message = "max lhs/rhs = " + fmt(worst, 12) + " (limit 1); run time so far " +
                fmt(total, 3) + " s (limit 600 s)";
  out.details = {{"max_lhs_over_rhs", worst}, {"rows", rows}};
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {{1, "isometry", "weighted composition is an isometry"}, check_isometry},
      {{2, "backend_agreement", "spectral and quadrature integrals agree"},
       check_backend_agreement},
      {{3, "embedding", "norms decrease in p and dominate the weighted Bergman norm"},
       check_embedding},
      {{4, "multiplier", "multiplication operator bounded by the sup norm"}, check_multiplier},
      {{5, "composition", "composition operator bound"}, check_composition},
      {{6, "gap_np", "gap-series norm equivalence"}, check_gap_np},
      {{7, "gap_aq", "gap-series growth-norm equivalence"}, check_gap_aq},
      {{8, "separation", "separation witnesses"}, check_separation},
      {{9, "carleson", "Carleson quotient equivalence"}, check_carleson},
      {{10, "np0", "little-space membership of polynomials"}, check_np0},
      {{11, "transform", "kernel transform decays toward the boundary"}, check_transform},
      {{12, "shell_bound", "sphere-kernel shell bound"}, check_shell_bound},
  };
  return checks;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = [] {
    std::vector<CheckInfo> out;
    for (const auto& c : registry()) out.push_back(c.info);
    return out;
  }();
  return catalog;
}

std::vector<CheckOutcome> run_checks(const Calibration& cal, const VerifyOptions& options) {
  for (const auto& name : options.only) {
    const bool known = std::any_of(registry().begin(), registry().end(),
                                   [&](const Check& c) { return c.info.name == name; });
    if (!known) throw UsageError("unknown check '" + name + "'");
  }
  Context ctx{cal, options, Clock::now(), std::nullopt, std::nullopt};
  std::vector<CheckOutcome> outcomes;
  for (const auto& check : registry()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), check.info.name) ==
            options.only.end()) {
      continue;
    }
    CheckOutcome out;
    out.number = check.info.number;
    out.name = check.info.name;
    out.property = check.info.property;
    const auto t0 = Clock::now();
    try {
      check.run(ctx, out);
    } catch (const std::exception& e) {
      out.passed = false;
      out.message = std::string("error: ") + e.what();
    }
    out.seconds = seconds_since(t0);
    if (options.on_result) options.on_result(out);
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

nlohmann::json verify_summary(const std::vector<CheckOutcome>& outcomes, const Calibration& cal) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& o : outcomes) {
    all = all && o.passed;
    checks.push_back({{"number", o.number},
                      {"name", o.name},
                      {"property", o.property},
                      {"passed", o.passed},
                      {"message", o.message},
                      {"details", o.details}});
  }
  return {{"schema", kReportSchema},
          {"command", "verify"},
          {"calibration_id", cal.id()},
          {"quad", QuadSpec::for_dimension(1)},
          {"search", SearchSpec{}},
          {"tube_grid", TubeGrid{}},
          {"all_passed", all},
          {"checks", checks}};
}

nlohmann::json verify_timing(const std::vector<CheckOutcome>& outcomes) {
  nlohmann::json t = nlohmann::json::object();
  for (const auto& o : outcomes) t[o.name] = o.seconds;
  return t;
}

}  // namespace npball
