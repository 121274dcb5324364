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
#include "npball/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/quadrature.hpp"

namespace npball {
namespace {

CVector project(CVector a, double max_radius) {
  const double r = a.norm();
  if (r > max_radius) a *= max_radius / r;
  return a;
}

double safe_eval(const std::function<double(const CVector&)>& objective, const CVector& a) {
  const double v = objective(a);
  return std::isfinite(v) ? v : -INFINITY;
}

struct LocalResult {
  CVector point;
  double value;
  int evaluations;
};

// Compass search on the 2n real coordinates; best-of-poll moves, step halved
// after an unsuccessful poll.
LocalResult refine(const std::function<double(const CVector&)>& objective, CVector start,
                   double start_value, const SearchSpec& spec) {
  const Eigen::Index n = start.size();
  LocalResult best{std::move(start), start_value, 0};
  double step = spec.initial_step;
  while (step >= spec.tolerance && best.evaluations < spec.max_evaluations) {
    CVector best_trial;
    double best_trial_value = best.value;
    for (Eigen::Index d = 0; d < n; ++d) {
      for (const Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        CVector trial = best.point;
        trial[d] += step * dir;
        trial = project(std::move(trial), spec.max_radius);
        const double v = safe_eval(objective, trial);
        ++best.evaluations;
        if (v > best_trial_value) {
          best_trial_value = v;
          best_trial = std::move(trial);
        }
      }
    }
    if (best_trial.size() > 0) {
      best.point = std::move(best_trial);
      best.value = best_trial_value;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace

int SearchSpec::directions_for(int n) const {
  if (directions > 0) return directions;
  return n == 1 ? 8 : 16;
}

void SearchSpec::validate(int n) const {
  double prev = 0.0;
  for (double l : levels) {
    if (!(l > prev && l < 1.0)) {
      throw UsageError("SearchSpec: levels must be strictly increasing in (0,1)");
    }
    prev = l;
  }
  if (!include_center && levels.empty() && seeds.empty()) {
    throw UsageError("SearchSpec: no candidates");
  }
  if (directions < 0 || starts < 0 || max_evaluations < 0) {
    throw UsageError("SearchSpec: counts must be nonnegative");
  }
  if (!(initial_step > 0.0) || !(tolerance > 0.0)) {
    throw UsageError("SearchSpec: step and tolerance must be positive");
  }
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw UsageError("SearchSpec: max_radius must lie in (0,1)");
  }
  if (!levels.empty() && levels.back() > max_radius) {
    throw UsageError("SearchSpec: levels exceed max_radius");
  }
  for (const auto& s : seeds) {
    if (s.size() != n) throw UsageError("SearchSpec: seed dimension mismatch");
    if (!(s.norm() <= max_radius)) throw UsageError("SearchSpec: seed outside max_radius");
  }
}

bool SearchSpec::operator==(const SearchSpec& o) const {
  if (seeds.size() != o.seeds.size()) return false;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].size() != o.seeds[i].size() || seeds[i] != o.seeds[i]) return false;
  }
  return include_center == o.include_center && levels == o.levels &&
         directions == o.directions && starts == o.starts && initial_step == o.initial_step &&
         tolerance == o.tolerance && max_radius == o.max_radius &&
         max_evaluations == o.max_evaluations;
}

void to_json(nlohmann::json& j, const SearchSpec& spec) {
  nlohmann::json seeds = nlohmann::json::array();
  for (const auto& s : spec.seeds) {
    nlohmann::json point = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.size(); ++i) point.push_back({s[i].real(), s[i].imag()});
    seeds.push_back(point);
  }
  j = nlohmann::json{
      {"include_center", spec.include_center},
      {"levels", spec.levels},
      {"directions", spec.directions},
      {"starts", spec.starts},
      {"initial_step", spec.initial_step},
      {"tolerance", spec.tolerance},
      {"max_radius", spec.max_radius},
      {"max_evaluations", spec.max_evaluations},
      {"seeds", seeds},
  };
}

void from_json(const nlohmann::json& j, SearchSpec& spec) {
  SearchSpec out;
  if (j.contains("include_center")) out.include_center = j.at("include_center").get<bool>();
  if (j.contains("levels")) out.levels = j.at("levels").get<std::vector<double>>();
  if (j.contains("directions")) out.directions = j.at("directions").get<int>();
  if (j.contains("starts")) out.starts = j.at("starts").get<int>();
  if (j.contains("initial_step")) out.initial_step = j.at("initial_step").get<double>();
  if (j.contains("tolerance")) out.tolerance = j.at("tolerance").get<double>();
  if (j.contains("max_radius")) out.max_radius = j.at("max_radius").get<double>();
  if (j.contains("max_evaluations")) out.max_evaluations = j.at("max_evaluations").get<int>();
  if (j.contains("seeds")) {
    for (const auto& point : j.at("seeds")) {
      CVector s(static_cast<Eigen::Index>(point.size()));
      for (std::size_t i = 0; i < point.size(); ++i) {
        s[static_cast<Eigen::Index>(i)] =
            Complex(point[i].at(0).get<double>(), point[i].at(1).get<double>());
      }
      out.seeds.push_back(s);
    }
  }
  spec = out;
}

std::vector<CVector> sphere_directions(int n, int count) {
  if (n < 1 || count < 1) throw UsageError("sphere_directions: need n >= 1 and count >= 1");
  std::vector<CVector> out;
  out.reserve(count);
  if (n == 1) {
    for (int k = 0; k < count; ++k) {
      CVector v(1);
      v[0] = std::polar(1.0, 2.0 * std::numbers::pi * k / count);
      out.push_back(v);
    }
    return out;
  }
  if (n == 2) {
    // R2 additive recurrence for the two Hopf angles, midpoint rule in u.
    const double g1 = 0.7548776662466927;
    const double g2 = 0.5698402909980532;
    for (int k = 0; k < count; ++k) {
      const double u = (k + 0.5) / count;
      const double t1 = 2.0 * std::numbers::pi * std::fmod(k * g1, 1.0);
      const double t2 = 2.0 * std::numbers::pi * std::fmod(k * g2, 1.0);
      CVector v(2);
      v[0] = std::polar(std::sqrt(u), t1);
      v[1] = std::polar(std::sqrt(1.0 - u), t2);
      out.push_back(v);
    }
    return out;
  }
  std::mt19937_64 rng(0x6e7062616c6cULL + static_cast<unsigned>(n));
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    CVector v(n);
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      v[i] = Complex(re, normal(rng));
    }
    out.push_back(v / v.norm());
  }
  return out;
}

SearchResult maximize_over_ball(const std::function<double(const CVector&)>& objective, int n,
                                const SearchSpec& spec) {
  spec.validate(n);
  std::vector<CVector> candidates;
  if (spec.include_center) candidates.push_back(CVector::Zero(n));
  const auto dirs = sphere_directions(n, spec.directions_for(n));
  for (double level : spec.levels) {
    for (const auto& d : dirs) candidates.push_back(level * d);
  }
  const std::size_t grid_size = candidates.size();
  for (const auto& s : spec.seeds) candidates.push_back(s);

  std::vector<double> values(candidates.size());
  parallel_for(candidates.size(),
               [&](std::size_t i) { values[i] = safe_eval(objective, candidates[i]); });

  SearchResult result;
  result.evaluations = static_cast<int>(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    result.trace.push_back({candidates[i], values[i]});
  }

  std::vector<std::size_t> order(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < order.size() && starts.size() < static_cast<std::size_t>(spec.starts);
       ++i) {
    if (std::isfinite(values[order[i]])) starts.push_back(order[i]);
  }
  for (std::size_t i = grid_size; i < candidates.size(); ++i) {
    if (std::isfinite(values[i])) starts.push_back(i);
  }

  std::vector<LocalResult> local(starts.size());
  parallel_for(starts.size(), [&](std::size_t s) {
    local[s] = refine(objective, candidates[starts[s]], values[starts[s]], spec);
  });

  int best = -1;
  double best_value = -INFINITY;
  CVector best_point;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (values[i] > best_value) {
      best_value = values[i];
      best_point = candidates[i];
      best = 0;
    }
  }
  for (const auto& l : local) {
    result.evaluations += l.evaluations;
    result.trace.push_back({l.point, l.value});
    if (l.value > best_value) {
      best_value = l.value;
      best_point = l.point;
    }
    if (l.point.norm() >= spec.max_radius * (1.0 - 1e-12)) result.touched_limit = true;
  }
  if (best < 0 && !std::isfinite(best_value)) {
    throw NumericError("maximize_over_ball: no candidate produced a finite value");
  }
  result.value = best_value;
  result.argmax = best_point;
  return result;
}

}  // namespace npball
