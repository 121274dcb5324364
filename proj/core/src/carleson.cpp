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
#include "npball/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/search.hpp"

namespace npball {
namespace {

// Local coordinates around the boundary point e_1: z_1 = 1 - rho e^{i psi},
// 0 < rho < r, |psi| < psi_max(rho) = arccos(rho/2), with
// 1 - |z_1|^2 = rho (2 cos psi - rho). The integrand
//   rho (1-|z_1|^2)^e h(z_1)
// vanishes like (1-x^2)^e in x = psi/psi_max, so x gets a Gauss-Jacobi rule
// with that weight and rho one with weight rho^{1+e}.
template <typename H>
double tube_disk_integral(double r, double e, int nodes, const H& h) {
  const auto rho_rule = gauss_jacobi_unit(nodes, 0.0, 1.0 + e);
  const auto x_rule = gauss_jacobi_unit(nodes, e, e);  // on [0,1], x = 2t - 1
  const double x_scale = 2.0 * std::pow(4.0, e);
  std::vector<double> outer(rho_rule->size());
  std::vector<double> inner(x_rule->size());
  for (std::size_t i = 0; i < rho_rule->size(); ++i) {
    const double rho = r * rho_rule->nodes[i];
    const double psi_max = std::acos(0.5 * rho);
    for (std::size_t k = 0; k < x_rule->size(); ++k) {
      const double x = 2.0 * x_rule->nodes[k] - 1.0;
      const double psi = psi_max * x;
      const double gap = 2.0 * std::cos(psi) - rho;  // (1 - |z_1|^2) / rho
      const double smooth = std::pow(std::max(gap, 0.0) / (1.0 - x * x), e);
      const Complex z1 = 1.0 - std::polar(rho, psi);
      inner[k] = x_rule->weights[k] * smooth * h(z1, rho * gap);
    }
    outer[i] = rho_rule->weights[i] * psi_max * x_scale * pairwise_sum(inner);
  }
  // rho = r t: d rho rho^{1+e} = r^{2+e} t^{1+e} dt
  return std::pow(r, 2.0 + e) * pairwise_sum(outer);
}

}  // namespace

std::vector<double> TubeGrid::radii() const {
  std::vector<double> out;
  for (int j = j_min; j <= j_max; ++j) out.push_back(std::ldexp(1.0, -j));
  return out;
}

int TubeGrid::directions_for(int n) const {
  if (directions > 0) return directions;
  return n == 1 ? 16 : 32;
}

void TubeGrid::validate() const {
  if (j_min < 1 || j_max < j_min) throw UsageError("TubeGrid: need 1 <= j_min <= j_max");
  if (j_max > 50) throw UsageError("TubeGrid: j_max too large");
  if (directions < 0) throw UsageError("TubeGrid: directions must be nonnegative");
}

void to_json(nlohmann::json& j, const TubeGrid& grid) {
  j = nlohmann::json{{"j_min", grid.j_min}, {"j_max", grid.j_max}, {"directions", grid.directions}};
}

void from_json(const nlohmann::json& j, TubeGrid& grid) {
  TubeGrid out;
  if (j.contains("j_min")) out.j_min = j.at("j_min").get<int>();
  if (j.contains("j_max")) out.j_max = j.at("j_max").get<int>();
  if (j.contains("directions")) out.directions = j.at("directions").get<int>();
  grid = out;
}

std::string to_string(Vanishing v) {
  switch (v) {
    case Vanishing::vanishing: return "vanishing";
    case Vanishing::non_vanishing: return "non-vanishing";
    case Vanishing::inconclusive: return "inconclusive";
  }
  return "unknown";
}

void to_json(nlohmann::json& j, const CarlesonReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : report.table) {
    rows.push_back({{"j", c.j}, {"r", c.r}, {"direction", c.direction},
                    {"measure", c.measure}, {"quotient", c.quotient}});
  }
  j = nlohmann::json{
      {"p", report.p},
      {"sup_quotient", report.sup_quotient},
      {"verdict", to_string(report.verdict)},
      {"grid", report.grid},
      {"quad", report.spec},
      {"table", rows},
  };
}

std::string to_csv(const CarlesonReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "j,r,direction,xi,measure,quotient\n";
  for (const auto& c : report.table) {
    os << c.j << ',' << c.r << ',' << c.direction << ",\"";
    for (Eigen::Index i = 0; i < c.xi.size(); ++i) {
      os << (i ? " " : "") << c.xi[i].real() << (c.xi[i].imag() < 0 ? "" : "+") << c.xi[i].imag()
         << 'i';
    }
    os << "\"," << c.measure << ',' << c.quotient << '\n';
  }
  return os.str();
}

double tube_measure(const HoloFunction& f, double p, double r, const SpherePoint& xi,
                    const QuadSpec& spec) {
  const int n = f.dim();
  if (xi.dim() != n) throw UsageError("tube_measure: dimension mismatch");
  if (n > 2) throw UsageError("tube_measure: supported for n <= 2");
  if (!(p > 0.0)) throw UsageError("tube_measure: p must be positive");
  if (!(r > 0.0 && r <= 2.0)) throw UsageError("tube_measure: r must lie in (0, 2]");
  if (f.is_zero()) return 0.0;

  // Rotate so that xi = e_1; then <z, xi> = w_1.
  const CMatrix v = unitary_aligning(xi.coords());
  const auto poly = f.as_polynomial();
  const std::optional<Polynomial> rotated =
      poly ? std::optional<Polynomial>(poly->composed_linear(v)) : std::nullopt;
  auto g = [&](const CVector& w) {
    return rotated ? rotated->eval(w) : f.eval(v * w);
  };
  const double rr = std::min(r, 2.0 - 1e-12);

  if (n == 1) {
    const double value = tube_disk_integral(rr, p, spec.tube_nodes, [&](Complex z1, double) {
      CVector w(1);
      w[0] = z1;
      return std::norm(g(w));
    });
    return value / std::numbers::pi;
  }

  // n = 2: w = (z_1, R sqrt(s) e^{i theta}), R^2 = 1 - |z_1|^2.
  const int s_nodes = std::max(8, spec.tube_nodes / 2);
  const auto s_rule = gauss_jacobi_unit(s_nodes, p, 0.0);
  const int theta_nodes = rotated ? 2 * rotated->degree() + 1 : spec.fiber_nodes;
  std::vector<Complex> phases(theta_nodes);
  for (int k = 0; k < theta_nodes; ++k) {
    phases[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / theta_nodes);
  }
  std::vector<double> s_terms(s_rule->size());
  std::vector<double> t_terms(theta_nodes);
  const double value =
      tube_disk_integral(rr, p + 1.0, spec.tube_nodes, [&](Complex z1, double one_minus) {
        const double radius = std::sqrt(std::max(one_minus, 0.0));
        CVector w(2);
        w[0] = z1;
        for (std::size_t i = 0; i < s_rule->size(); ++i) {
          const double m = radius * std::sqrt(s_rule->nodes[i]);
          for (int k = 0; k < theta_nodes; ++k) {
            w[1] = m * phases[k];
            t_terms[k] = std::norm(g(w));
          }
          s_terms[i] = s_rule->weights[i] * pairwise_sum(t_terms) / theta_nodes;
        }
        return pairwise_sum(s_terms);
      });
  return 2.0 * value / std::numbers::pi;
}

CarlesonReport carleson_constant(const HoloFunction& f, double p, const TubeGrid& grid,
                                 const QuadSpec& spec) {
  grid.validate();
  const int n = f.dim();
  CarlesonReport report;
  report.p = p;
  report.spec = spec;
  report.grid = grid;
  const auto radii = grid.radii();
  const auto dirs = sphere_directions(n, grid.directions_for(n));
  for (std::size_t j = 0; j < radii.size(); ++j) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      CarlesonCell cell;
      cell.j = grid.j_min + static_cast<int>(j);
      cell.r = radii[j];
      cell.direction = static_cast<int>(i);
      cell.xi = dirs[i];
      report.table.push_back(cell);
    }
  }
  // Tube refinement for the smallest radii: more nodes once r < 2^{-5}.
  parallel_for(report.table.size(), [&](std::size_t idx) {
    auto& cell = report.table[idx];
    QuadSpec local = spec;
    if (cell.j > 5) local.tube_nodes *= 2;
    cell.measure = tube_measure(f, p, cell.r, SpherePoint(cell.xi), local);
    cell.quotient = cell.measure / std::pow(cell.r, p);
  });
  for (const auto& c : report.table) report.sup_quotient = std::max(report.sup_quotient, c.quotient);
  report.verdict = vanishing_test(report, INFINITY);
  return report;
}

Vanishing vanishing_test(const CarlesonReport& report, double eps, double scale) {
  if (report.table.empty()) return Vanishing::vanishing;
  const int j_max = report.grid.j_max;
  const int dirs = static_cast<int>(report.table.size()) / (j_max - report.grid.j_min + 1);
  double small = 0.0;
  bool decreasing = true;
  for (int i = 0; i < dirs; ++i) {
    std::vector<double> seq;
    for (const auto& c : report.table) {
      if (c.direction == i) seq.push_back(c.quotient);
    }
    const std::size_t from = seq.size() > 4 ? seq.size() - 4 : 0;
    for (std::size_t k = from + 1; k < seq.size(); ++k) {
      if (seq[k] > seq[k - 1] * (1.0 + 1e-9)) decreasing = false;
    }
    for (std::size_t k = seq.size() >= 2 ? seq.size() - 2 : 0; k < seq.size(); ++k) {
      small = std::max(small, seq[k]);
    }
  }
  const bool below = small < eps * scale;
  if (below && decreasing) return Vanishing::vanishing;
  if (!below && !decreasing) return Vanishing::non_vanishing;
  return Vanishing::inconclusive;
}

Vanishing vanishing_test(const HoloFunction& f, double p, const TubeGrid& grid, const QuadSpec& spec,
                         double eps, double scale) {
  return vanishing_test(carleson_constant(f, p, grid, spec), eps, scale);
}

double carleson_transform(const HoloFunction& f, double p, double s, const BallPoint& z,
                          const QuadSpec& spec, double measure_exponent) {
  if (!(s > 0.0)) throw UsageError("carleson_transform: s must be positive");
  if (!(p > 0.0)) throw UsageError("carleson_transform: p must be positive");
  if (z.dim() != f.dim()) throw UsageError("carleson_transform: dimension mismatch");
  if (f.is_zero()) return 0.0;
  const KernelIntegrator integrator(f, 0.5 * (p + s), measure_exponent, spec);
  return std::pow(1.0 - z.norm_sq(), s) * integrator(z.coords());
}

}  // namespace npball
