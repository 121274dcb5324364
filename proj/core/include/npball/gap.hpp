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
#ifndef NPBALL_GAP_HPP_
#define NPBALL_GAP_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "npball/holo.hpp"
#include "npball/integrate.hpp"
#include "npball/search.hpp"

namespace npball {

// b_k = scale * 2^{k beta}, or an explicit list.
struct BRule {
  enum class Kind { power, list };
  Kind kind = Kind::power;
  double beta = 0.0;
  double scale = 1.0;
  std::vector<Complex> values;

  bool operator==(const BRule&) const = default;
};

// m_k = start * base^k, or an explicit list.
struct MRule {
  enum class Kind { geometric, list };
  Kind kind = Kind::geometric;
  std::int64_t start = 1;
  std::int64_t base = 2;
  std::vector<std::int64_t> values;

  bool operator==(const MRule&) const = default;
};

struct GapSpec {
  int n = 1;
  BRule b;
  MRule m;
  double c = 2.0;  // declared gap ratio
  std::vector<int> truncations = {4, 6, 8, 10, 12};

  Complex b_at(int k) const;
  std::int64_t m_at(int k) const;
  // Largest usable K: list length for list rules, 40 otherwise.
  int max_terms() const;
  // Throws UsageError when m_{k+1}/m_k < c for some k < max K.
  void validate() const;
  bool operator==(const GapSpec&) const = default;
};

void to_json(nlohmann::json& j, const GapSpec& spec);
void from_json(const nlohmann::json& j, GapSpec& spec);

// Truncation sum_{k<K} b_k P_{m_k}, keeping up to 8 further terms for the tail
// bound.
GapSeries gap_series(const GapSpec& spec, int K);
HoloFunction gap_function(const GapSpec& spec, int K);

struct SeriesSum {
  double value = 0.0;      // last finite partial sum
  bool divergent = false;
  bool overflow = false;
  std::vector<double> partial_sums;
};

// sum_{k<K} |b_k|^2 / m_k^{p+1}; divergent when S_K > factor * S_{floor(K/2)}
// or a term overflows.
SeriesSum gap_np_rhs(const GapSpec& spec, double p, int K, double divergence_factor = 1.5);

struct MaxTerm {
  double value = 0.0;
  int argmax = 0;
  bool unbounded = false;  // maximum at the last index and still increasing
};

// max_{k<K} |b_k| / m_k^q.
MaxTerm gap_aq_rhs(const GapSpec& spec, double q, int K);

// sum_j 2^{-j(p+1)} (sum_{2^j <= m_k < 2^{j+1}, k<K} |b_k|)^2.
double gap_dyadic_blocks(const GapSpec& spec, double p, int K);

// Largest number of indices k < K in one dyadic block, and the bound
// 1 + log_c 2 it must respect.
int max_block_cardinality(const GapSpec& spec, int K);
double block_cardinality_bound(double c);

// Blocks / terms lies in [1, 2^{p+1} (1 + log_c 2)].
double dyadic_bracket(double c, double p);

// Gamma(n+m) Gamma(p+1) / Gamma(n+m+p+1) divided by m^{-(p+1)}, via log-Gamma.
double beta_moment_ratio(int n, double m, double p);

// Witnesses for 0 < p1 < p2 <= n: f1 with b_k = 2^{k(n+1)/2}, f2 with
// b_k = 2^{k(1+p1)/2}, both with m_k = 2^k and c = 2.
std::pair<GapSpec, GapSpec> separation_witnesses(int n, double p1, double p2);

struct EquivalenceRow {
  int K = 0;
  double norm_sq = 0.0;   // ||truncate(f,K)||_p^2
  double np_rhs = 0.0;
  double np_ratio = 0.0;
  double aq_norm = 0.0;   // |truncate(f,K)|_q
  double aq_rhs = 0.0;
  double aq_ratio = 0.0;
};

struct EquivalenceReport {
  double p = 0.0;
  double q = 0.0;
  std::vector<EquivalenceRow> rows;
  double np_spread = 1.0;  // max/min ratio
  double aq_spread = 1.0;
};

void to_json(nlohmann::json& j, const EquivalenceReport& r);
std::string to_csv(const EquivalenceReport& r);

EquivalenceReport equivalence_report(const GapSpec& spec, double p, double q,
                                     const std::vector<int>& truncations, const SearchSpec& search,
                                     const QuadSpec& quad);

// Sphere L^2 norm of the normalized generator polynomial of each degree (the
// sup norm is 1 by construction).
std::vector<double> generator_l2_constants(int n, const std::vector<int>& degrees);

}  // namespace npball

#endif  // NPBALL_GAP_HPP_
