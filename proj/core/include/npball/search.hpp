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
#ifndef NPBALL_SEARCH_HPP_
#define NPBALL_SEARCH_HPP_

#include <functional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npball/ball.hpp"

namespace npball {

/// Grid + multistart pattern search used for every sup over the ball.
struct SearchSpec {
  bool include_center = true;
  std::vector<double> levels = {0.3, 0.6, 0.8, 0.9, 0.95, 0.98};
  int directions = 0;  // 0: 8 phases for n=1, 16 points for n>=2
  int starts = 3;      // best grid candidates refined locally
  double initial_step = 0.05;
  double tolerance = 1e-4;
  double max_radius = 0.999;
  int max_evaluations = 2000;  // per start
  std::vector<CVector> seeds;  // extra start points, always refined

  int directions_for(int n) const;
  // Throws UsageError unless levels are strictly increasing in (0,1) etc.
  void validate(int n) const;
  bool operator==(const SearchSpec& other) const;
};

void to_json(nlohmann::json& j, const SearchSpec& spec);
void from_json(const nlohmann::json& j, SearchSpec& spec);

struct SearchSample {
  CVector point;
  double value;
};

struct SearchResult {
  double value = 0.0;
  CVector argmax;
  int evaluations = 0;
  bool touched_limit = false;  // a refined optimum sits on |a| = max_radius
  std::vector<SearchSample> trace;  // grid candidates, then refined optima
};

// Deterministic directions on the unit sphere of C^n: equally spaced phases
// for n=1, an additive-recurrence Hopf lattice for n=2, seeded Gaussian
// samples above that.
std::vector<CVector> sphere_directions(int n, int count);

// Maximizes objective over |a| <= max_radius. The value is attained at argmax,
// so it is a lower bound for the true supremum. Non-finite values are skipped;
// NumericError when no candidate is finite.
SearchResult maximize_over_ball(const std::function<double(const CVector&)>& objective, int n,
                                const SearchSpec& spec);

}  // namespace npball

#endif  // NPBALL_SEARCH_HPP_
