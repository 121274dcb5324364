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
#include "npball/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "npball/carleson.hpp"
#include "npball/corpus.hpp"
#include "npball/gap.hpp"

namespace npball {
namespace {

constexpr int kPilotFactor = 4;

void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw NumericError("calibration pilot diverged: " + what);
}

nlohmann::json range_json(double lo, double hi) { return nlohmann::json::array({lo, hi}); }

double get_number(const nlohmann::json& j, const char* section, const char* key) {
  try {
    return j.at(section).at(key).get<double>();
  } catch (const nlohmann::json::exception&) {
    throw CalibrationError(std::string("calibration: missing ") + section + "." + key);
  }
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double round_sig(double x, bool up) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  const double mag = std::floor(std::log10(std::abs(x)));
  const double scale = std::pow(10.0, 5.0 - mag);
  const double scaled = x * scale;
  const double r = up ? std::ceil(scaled - 1e-9 * std::abs(scaled))
                      : std::floor(scaled + 1e-9 * std::abs(scaled));
  // Print and reparse so the stored double is the shortest decimal.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", r / scale);
  return std::strtod(buf, nullptr);
}

Calibration::Calibration(nlohmann::json payload) : payload_(std::move(payload)) {
  payload_.erase("id");
  id_ = fnv1a_hex(payload_.dump());
}

std::string Calibration::text() const {
  nlohmann::json out = payload_;
  out["id"] = id_;
  return out.dump(2) + "\n";
}

std::uint64_t Calibration::seed() const { return payload_.at("seed").get<std::uint64_t>(); }

Np0Thresholds Calibration::np0_thresholds() const {
  Np0Thresholds t;
  t.decay_eps = get_number(payload_, "np0", "decay_eps");
  t.dilation_eps = get_number(payload_, "np0", "dilation_eps");
  t.decreasing_from = static_cast<int>(get_number(payload_, "np0", "decreasing_from"));
  return t;
}

double Calibration::np0_p() const { return get_number(payload_, "np0", "p"); }
double Calibration::carleson_p() const { return get_number(payload_, "carleson", "p"); }
double Calibration::carleson_c_star() const { return get_number(payload_, "carleson", "c_star"); }
double Calibration::carleson_vanishing_eps() const {
  return get_number(payload_, "carleson", "vanishing_eps");
}
double Calibration::transform_eps() const { return get_number(payload_, "transform", "eps"); }

double Calibration::shell_constant(double p) const {
  try {
    for (const auto& entry : payload_.at("shell_bound").at("constants")) {
      if (entry.at("p").get<double>() == p) return entry.at("C").get<double>();
    }
  } catch (const nlohmann::json::exception&) {
  }
  throw CalibrationError("calibration: no shell-bound constant for p = " + std::to_string(p));
}

std::pair<double, double> Calibration::collapse_bracket() const {
  try {
    const auto& b = payload_.at("collapse").at("bracket");
    return {b.at(0).get<double>(), b.at(1).get<double>()};
  } catch (const nlohmann::json::exception&) {
    throw CalibrationError("calibration: missing collapse.bracket");
  }
}

QuadSpec pilot_quad_spec(int n) { return QuadSpec::for_dimension(n).refined(kPilotFactor); }

SearchSpec pilot_search_spec() {
  SearchSpec s;
  s.directions = 16;
  s.tolerance = 1e-5;
  return s;
}

Calibration compute_calibration(std::uint64_t seed, const ProgressFn& progress) {
  auto note = [&](const std::string& msg) {
    if (progress) progress(msg);
  };
  const QuadSpec quad = pilot_quad_spec(1);
  const SearchSpec search = pilot_search_spec();
  const auto& corpus = function_corpus();
  nlohmann::json payload;
  payload["schema"] = kCalibrationSchema;
  payload["seed"] = seed;
  payload["pilot"] = {{"resolution_factor", kPilotFactor}, {"quad", quad}, {"search", search}};

  // Little-space thresholds: fixed values, with the pilot maxima as evidence.
  note("np0 pilot");
  const double np0_p = 1.0;
  double max_decay = 0.0, max_dilation = 0.0;
  for (const auto& entry : corpus) {
    if (entry.gap) continue;
    const Np0Report r = np0_test(corpus_function(entry), np0_p, search, quad);
    if (r.norm_sq <= 0.0) continue;
    const double decay = r.decay_trace.back() / r.norm_sq;
    const double dilation = r.dilation_trace[1] / std::sqrt(r.norm_sq);
    require_finite(decay, "np0 decay for " + entry.name);
    require_finite(dilation, "np0 dilation for " + entry.name);
    max_decay = std::max(max_decay, decay);
    max_dilation = std::max(max_dilation, dilation);
  }
  payload["np0"] = {{"p", np0_p},
                    {"decay_eps", 0.05},
                    {"dilation_eps", 0.1},
                    {"decreasing_from", 3},
                    {"pilot_max_decay_ratio", round_sig(max_decay, true)},
                    {"pilot_max_dilation_ratio", round_sig(max_dilation, true)}};

  // Carleson quotients relative to the squared norm.
  note("carleson pilot");
  const double carleson_p = 1.0;
  const TubeGrid grid;
  double lo = INFINITY, hi = 0.0, small = 0.0;
  for (const auto& entry : corpus) {
    const HoloFunction f = corpus_function(entry);
    const double norm = norm_np(f, carleson_p, search, quad).value;
    const CarlesonReport rep = carleson_constant(f, carleson_p, grid, quad);
    const double ratio = rep.sup_quotient / (norm * norm);
    require_finite(ratio, "carleson ratio for " + entry.name);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    for (const auto& cell : rep.table) {
      if (cell.j >= grid.j_max - 1) small = std::max(small, cell.quotient / (norm * norm));
    }
  }
  const double c_star = round_sig(1.1 * std::max(hi, 1.0 / lo), true);
  payload["carleson"] = {{"p", carleson_p},
                         {"c_star", c_star},
                         {"pilot_bracket", range_json(round_sig(lo, false), round_sig(hi, true))},
                         {"vanishing_eps", round_sig(10.0 * small, true)},
                         {"pilot_max_small_quotient", round_sig(small, true)},
                         {"grid", grid}};

  // Kernel transform of the constant function at |z| = 1 - 2^{-10}.
  note("transform pilot");
  {
    const HoloFunction one = HoloFunction::constant(1, 1.0);
    CVector z(1);
    z[0] = 1.0 - std::ldexp(1.0, -10);
    const double last = carleson_transform(one, 1.0, 1.0, BallPoint(z), quad);
    require_finite(last, "transform");
    payload["transform"] = {{"p", 1.0},
                            {"s", 1.0},
                            {"eps", round_sig(2.0 * last, true)},
                            {"pilot_final", round_sig(last, true)}};
  }

  // Sphere-kernel constants C(1, p).
  note("sphere-kernel pilot");
  nlohmann::json constants = nlohmann::json::array();
  for (double p : {0.25, 0.5, 1.0}) {
    const double c = sphere_kernel_constant(1, p, quad);
    require_finite(c, "sphere kernel constant");
    constants.push_back({{"p", p}, {"C", round_sig(c, true)}});
  }
  payload["shell_bound"] = {{"constants", constants}};

  // p > n collapse: ||f||_p / |f|_{(n+1)/2} over the corpus, n = 1.
  note("collapse pilot");
  {
    double clo = INFINITY, chi = 0.0;
    for (const auto& entry : corpus) {
      const HoloFunction f = corpus_function(entry);
      const double ratio = norm_np(f, 1.5, search, quad).value / norm_bergman_type(f, 1.0).value;
      require_finite(ratio, "collapse ratio for " + entry.name);
      clo = std::min(clo, ratio);
      chi = std::max(chi, ratio);
    }
    payload["collapse"] = {{"p", 1.5},
                           {"bracket", range_json(round_sig(clo / 1.1, false),
                                                  round_sig(1.1 * chi, true))}};
  }

  // Gap-series ratio ranges, b_k = 1, m_k = 2^k.
  note("gap pilot");
  {
    GapSpec spec;
    const std::vector<int> ks = {6, 8, 10, 12};
    nlohmann::json gap = nlohmann::json::object();
    for (double q : {0.5, 1.0}) {
      const EquivalenceReport r = equivalence_report(spec, 0.5, q, ks, search, quad);
      double nlo = INFINITY, nhi = 0.0, alo = INFINITY, ahi = 0.0;
      for (const auto& row : r.rows) {
        nlo = std::min(nlo, row.np_ratio);
        nhi = std::max(nhi, row.np_ratio);
        alo = std::min(alo, row.aq_ratio);
        ahi = std::max(ahi, row.aq_ratio);
      }
      require_finite(nhi + ahi, "gap ratios");
      gap["np_ratio_range"] = range_json(round_sig(nlo, false), round_sig(nhi, true));
      gap[q == 0.5 ? "aq_ratio_range_q0.5" : "aq_ratio_range_q1"] =
          range_json(round_sig(alo, false), round_sig(ahi, true));
    }
    gap["p"] = 0.5;
    payload["gap"] = gap;
  }

  // Seed-dependent item: Monte Carlo estimate of int_B |z_1|^2 dV for n = 3
  // (exact value 1/4).
  note("monte carlo pilot");
  {
    QuadSpec mc = QuadSpec::for_dimension(3, Backend::montecarlo);
    mc.seed = seed;
    mc.radial_nodes = 16;
    const IntegralEstimate est =
        ball_integral([](const CVector& z) { return std::norm(z[0]); }, 3, mc);
    require_finite(est.value, "monte carlo moment");
    payload["monte_carlo"] = {{"n", 3},
                              {"samples", mc.mc_samples},
                              {"ball_moment_z1", round_sig(est.value, true)}};
  }
  return Calibration(std::move(payload));
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CalibrationError("calibration file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception&) {
    throw CalibrationError("calibration file is not valid JSON: " + path);
  }
  if (!j.is_object() || j.value("schema", "") != kCalibrationSchema) {
    throw CalibrationError("calibration file has an unknown schema: " + path);
  }
  if (!j.contains("id") || !j.at("id").is_string()) {
    throw CalibrationError("calibration file has no id: " + path);
  }
  const std::string stored = j.at("id").get<std::string>();
  Calibration cal(j);
  if (cal.id() != stored) {
    throw CalibrationError("calibration file is corrupt (id mismatch): " + path);
  }
  // Touch every accessor so missing fields fail here rather than mid-run.
  try {
    cal.seed();
    cal.np0_thresholds();
    cal.carleson_c_star();
    cal.carleson_vanishing_eps();
    cal.transform_eps();
    for (double p : {0.25, 0.5, 1.0}) cal.shell_constant(p);
    cal.collapse_bracket();
  } catch (const nlohmann::json::exception& e) {
    throw CalibrationError(std::string("calibration file is incomplete: ") + e.what());
  }
  return cal;
}

void save_calibration(const Calibration& cal, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write calibration file: " + path);
  out << cal.text();
  if (!out) throw UsageError("failed writing calibration file: " + path);
}

}  // namespace npball
