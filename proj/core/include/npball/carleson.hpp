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
#ifndef NPBALL_CARLESON_HPP_
#define NPBALL_CARLESON_HPP_

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npball/holo.hpp"
#include "npball/integrate.hpp"

namespace npball {

/// Radii r_j = 2^{-j}, j = j_min..j_max, and boundary directions xi_i.
struct TubeGrid {
  int j_min = 1;
  int j_max = 10;
  int directions = 0;  // 0: 16 for n=1, 32 for n=2

  std::vector<double> radii() const;
  int directions_for(int n) const;
  void validate() const;
  bool operator==(const TubeGrid&) const = default;
};

void to_json(nlohmann::json& j, const TubeGrid& grid);
void from_json(const nlohmann::json& j, TubeGrid& grid);

enum class Vanishing { vanishing, non_vanishing, inconclusive };
std::string to_string(Vanishing v);

struct CarlesonCell {
  int j = 0;
  double r = 0.0;
  int direction = 0;
  CVector xi;
  double measure = 0.0;
  double quotient = 0.0;  // measure / r^p
};

struct CarlesonReport {
  double p = 0.0;
  double sup_quotient = 0.0;
  std::vector<CarlesonCell> table;  // j-major, then direction
  Vanishing verdict = Vanishing::inconclusive;
  QuadSpec spec;
  TubeGrid grid;
};

void to_json(nlohmann::json& j, const CarlesonReport& report);
// One row per (j, direction) cell.
std::string to_csv(const CarlesonReport& report);

// mu_{f,p}(Q_r(xi)) with d mu = |f|^2 (1-|z|^2)^p dV and
// Q_r(xi) = {z : |1 - <z,xi>| < r}. Supported for n <= 2 and 0 < r <= 2
// (r = 2 covers the ball).
double tube_measure(const HoloFunction& f, double p, double r, const SpherePoint& xi,
                    const QuadSpec& spec);

// Quotients mu(Q_r(xi)) / r^p over the grid. The verdict is computed with
// eps = +inf unless the caller passes a calibrated one to vanishing_test.
CarlesonReport carleson_constant(const HoloFunction& f, double p, const TubeGrid& grid,
                                 const QuadSpec& spec);

// vanishing iff the largest quotient at the two smallest radii is below
// eps * scale and every per-direction sequence decreases over its last four
// radii; non_vanishing iff both fail; inconclusive otherwise.
Vanishing vanishing_test(const CarlesonReport& report, double eps, double scale = 1.0);
Vanishing vanishing_test(const HoloFunction& f, double p, const TubeGrid& grid, const QuadSpec& spec,
                         double eps, double scale = 1.0);

// (1-|z|^2)^s int |1 - <z,w>|^{-(p+s)} d mu(w) for mu = mu_{f,measure_exponent}.
double carleson_transform(const HoloFunction& f, double p, double s, const BallPoint& z,
                          const QuadSpec& spec, double measure_exponent);
inline double carleson_transform(const HoloFunction& f, double p, double s, const BallPoint& z,
                                 const QuadSpec& spec) {
  return carleson_transform(f, p, s, z, spec, p);
}

}  // namespace npball

#endif  // NPBALL_CARLESON_HPP_
