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
#ifndef NPBALL_NORMS_HPP_
#define NPBALL_NORMS_HPP_

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npball/holo.hpp"
#include "npball/integrate.hpp"
#include "npball/search.hpp"

namespace npball {

struct NormEstimate {
  double value = 0.0;
  std::optional<CVector> argmax;
  std::vector<SearchSample> trace;
  QuadSpec quad;
  double tail_bound = 0.0;   // gap-series truncation bound, 0 otherwise
  bool lower_bound = false;  // value comes from a finite search
  int evaluations = 0;
};

void to_json(nlohmann::json& j, const NormEstimate& est);

// The spectral backend needs coefficients; anything else is integrated by
// quadrature with the same node counts.
QuadSpec effective_spec(const HoloFunction& f, const QuadSpec& spec);

// sqrt(int |f|^2 (1-|z|^2)^p dV), p >= 0.
NormEstimate norm_a2p(const HoloFunction& f, double p, const QuadSpec& spec);

// sqrt(sup_a I_f(a)) over the search grid plus local refinement, p > 0.
NormEstimate norm_np(const HoloFunction& f, double p, const SearchSpec& search,
                     const QuadSpec& spec);

// sup_z |f(z)| (1-|z|^2)^q, q > 0. The default search uses shells
// 1 - 2^{-j/2}, j = 1..24.
SearchSpec bergman_type_search(int n);
NormEstimate norm_bergman_type(const HoloFunction& f, double q);
NormEstimate norm_bergman_type(const HoloFunction& f, double q, const SearchSpec& search);

// max |f| over the shells 0.9, 0.99, 0.999; polynomials are also maximized on
// the sphere itself.
NormEstimate norm_sup(const HoloFunction& f);

struct Np0Thresholds {
  double decay_eps = 0.05;     // I_f(a_10) < decay_eps * ||f||_p^2
  double dilation_eps = 0.1;   // ||f_0.99 - f||_p < dilation_eps * ||f||_p
  int decreasing_from = 3;     // j-trace decreasing for j >= decreasing_from
};

enum class Verdict { member, non_member, inconclusive };
std::string to_string(Verdict v);

struct Np0Report {
  double norm_sq = 0.0;
  std::vector<double> radii;        // 1 - 2^{-j}, j = 1..10
  std::vector<double> decay_trace;  // max over directions of I_f(a_j)
  bool decays = false;
  std::vector<double> dilation_r;   // 0.9, 0.99, 0.999
  std::vector<double> dilation_trace;
  bool dilation_vanishes = false;
  Verdict verdict = Verdict::inconclusive;
};

void to_json(nlohmann::json& j, const Np0Report& r);

Np0Report np0_test(const HoloFunction& f, double p, const SearchSpec& search, const QuadSpec& spec,
                   const Np0Thresholds& thresholds = {});

// | ||W_phi f||_p - ||f||_p | / ||f||_p.
double isometry_residual(const HoloFunction& f, const Automorphism& phi, double p,
                         const QuadSpec& spec, const SearchSpec& search);

struct MultiplierReport {
  double u_sup = 0.0;
  double f_norm = 0.0;
  double uf_norm = 0.0;
  double ratio = 0.0;  // ||uf||_p / (||u||_inf ||f||_p)
  bool holds = false;
};

MultiplierReport multiplier_check(const HoloFunction& u, const HoloFunction& f, double p,
                                  const SearchSpec& search, const QuadSpec& spec,
                                  double rel_slack = 1e-6);

struct CompositionReport {
  double bound = 0.0;  // ((1+|a|)/(1-|a|))^{(n+1)/2}
  double f_norm = 0.0;
  double composed_norm = 0.0;
  double ratio = 0.0;  // composed_norm / f_norm
  bool holds = false;
};

CompositionReport composition_bound_check(const Automorphism& phi, const HoloFunction& f, double p,
                                          const SearchSpec& search, const QuadSpec& spec,
                                          double rel_slack = 1e-4);

// sup over sampled (|a|, r) of sphere_kernel_integral.
double sphere_kernel_constant(int n, double p, const QuadSpec& spec);

// int (max_{|w|=|z|} |f(w)|^2) (1-|z|^2)^p dV with the shell maximum taken
// over a dense direction set.
double shell_max_integral(const HoloFunction& f, double p, const QuadSpec& spec);

struct ShellBoundReport {
  double lhs = 0.0;  // ||f||_p^2
  double rhs = 0.0;  // C * shell_max_integral
  bool holds = false;
};

ShellBoundReport shell_bound_check(const HoloFunction& f, double p, double constant,
                                   const SearchSpec& search, const QuadSpec& spec);

}  // namespace npball

#endif  // NPBALL_NORMS_HPP_
