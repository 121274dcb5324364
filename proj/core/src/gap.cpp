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
#include "npball/gap.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "npball/errors.hpp"
#include "npball/norms.hpp"

namespace npball {
namespace {

constexpr int kRuleTerms = 40;
constexpr int kTailTerms = 8;

double log_abs_b(const GapSpec& spec, int k) {
  if (spec.b.kind == BRule::Kind::power) {
    return std::log(std::abs(spec.b.scale)) + k * spec.b.beta * std::log(2.0);
  }
  return std::log(std::abs(spec.b.values.at(k)));
}

void check_K(const GapSpec& spec, int K) {
  if (K < 0 || K > spec.max_terms()) throw UsageError("gap: truncation K out of range");
}

}  // namespace

Complex GapSpec::b_at(int k) const {
  if (b.kind == BRule::Kind::list) return b.values.at(k);
  return b.scale * std::exp2(k * b.beta);
}

std::int64_t GapSpec::m_at(int k) const {
  if (m.kind == MRule::Kind::list) return m.values.at(k);
  std::int64_t v = m.start;
  for (int i = 0; i < k; ++i) v *= m.base;
  return v;
}

int GapSpec::max_terms() const {
  int limit = kRuleTerms;
  if (b.kind == BRule::Kind::list) limit = std::min<int>(limit, b.values.size());
  if (m.kind == MRule::Kind::list) limit = std::min<int>(limit, m.values.size());
  if (m.kind == MRule::Kind::geometric && m.base > 1) {
    // keep m below 2^62
    const int bits = static_cast<int>(std::floor(62.0 / std::log2(static_cast<double>(m.base))));
    limit = std::min(limit, bits);
  }
  return limit;
}

void GapSpec::validate() const {
  if (n < 1) throw UsageError("GapSpec: dimension must be at least 1");
  if (!(c > 1.0)) throw UsageError("GapSpec: gap ratio c must exceed 1");
  if (m.kind == MRule::Kind::geometric && (m.start < 1 || m.base < 2)) {
    throw UsageError("GapSpec: geometric m rule needs start >= 1 and base >= 2");
  }
  if (b.kind == BRule::Kind::list && m.kind == MRule::Kind::list &&
      b.values.size() != m.values.size()) {
    throw UsageError("GapSpec: b and m lists differ in length");
  }
  for (int K : truncations) {
    if (K < 1) throw UsageError("GapSpec: truncations must be positive");
  }
  const int terms = max_terms();
  for (int k = 0; k < terms; ++k) {
    if (m_at(k) < 1) throw UsageError("GapSpec: m_k must be positive");
    if (k > 0 && static_cast<double>(m_at(k)) < c * static_cast<double>(m_at(k - 1)) - 1e-12) {
      throw UsageError("GapSpec: m_{k+1}/m_k < c at k=" + std::to_string(k - 1));
    }
  }
}

void to_json(nlohmann::json& j, const GapSpec& spec) {
  nlohmann::json b;
  if (spec.b.kind == BRule::Kind::power) {
    b = {{"kind", "power"}, {"beta", spec.b.beta}, {"scale", spec.b.scale}};
  } else {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : spec.b.values) values.push_back({v.real(), v.imag()});
    b = {{"kind", "list"}, {"values", values}};
  }
  nlohmann::json m;
  if (spec.m.kind == MRule::Kind::geometric) {
    m = {{"kind", "geometric"}, {"start", spec.m.start}, {"base", spec.m.base}};
  } else {
    m = {{"kind", "list"}, {"values", spec.m.values}};
  }
  j = nlohmann::json{
      {"n", spec.n}, {"b_rule", b}, {"m_rule", m}, {"c", spec.c}, {"truncations", spec.truncations}};
}

void from_json(const nlohmann::json& j, GapSpec& spec) {
  GapSpec out;
  if (j.contains("n")) out.n = j.at("n").get<int>();
  if (j.contains("b_rule")) {
    const auto& b = j.at("b_rule");
    const std::string kind = b.at("kind").get<std::string>();
    if (kind == "power") {
      out.b.kind = BRule::Kind::power;
      out.b.beta = b.value("beta", 0.0);
      out.b.scale = b.value("scale", 1.0);
    } else if (kind == "list") {
      out.b.kind = BRule::Kind::list;
      for (const auto& v : b.at("values")) {
        out.b.values.emplace_back(v.is_array() ? Complex(v.at(0).get<double>(), v.at(1).get<double>())
                                               : Complex(v.get<double>(), 0.0));
      }
    } else {
      throw UsageError("GapSpec: unknown b_rule kind '" + kind + "'");
    }
  }
  if (j.contains("m_rule")) {
    const auto& m = j.at("m_rule");
    const std::string kind = m.at("kind").get<std::string>();
    if (kind == "geometric") {
      out.m.kind = MRule::Kind::geometric;
      out.m.start = m.value("start", std::int64_t{1});
      out.m.base = m.value("base", std::int64_t{2});
    } else if (kind == "list") {
      out.m.kind = MRule::Kind::list;
      out.m.values = m.at("values").get<std::vector<std::int64_t>>();
    } else {
      throw UsageError("GapSpec: unknown m_rule kind '" + kind + "'");
    }
  }
  if (j.contains("c")) out.c = j.at("c").get<double>();
  if (j.contains("truncations")) out.truncations = j.at("truncations").get<std::vector<int>>();
  out.validate();
  spec = out;
}

GapSeries gap_series(const GapSpec& spec, int K) {
  spec.validate();
  if (K < 1 || K > spec.max_terms()) throw UsageError("gap_series: K out of range");
  const int available = std::min(spec.max_terms(), K + kTailTerms);
  std::vector<Complex> b;
  std::vector<std::int64_t> m;
  for (int k = 0; k < available; ++k) {
    b.push_back(spec.b_at(k));
    m.push_back(spec.m_at(k));
  }
  return GapSeries(spec.n, std::move(b), std::move(m), spec.c, K);
}

HoloFunction gap_function(const GapSpec& spec, int K) {
  return HoloFunction::gap_series(gap_series(spec, K));
}

SeriesSum gap_np_rhs(const GapSpec& spec, double p, int K, double divergence_factor) {
  check_K(spec, K);
  SeriesSum out;
  double sum = 0.0;
  for (int k = 0; k < K; ++k) {
    const double log_term =
        2.0 * log_abs_b(spec, k) - (p + 1.0) * std::log(static_cast<double>(spec.m_at(k)));
    const double term = std::exp(log_term);
    if (!std::isfinite(term) || !std::isfinite(sum + term)) {
      out.overflow = true;
      out.divergent = true;
      break;
    }
    sum += term;
    out.partial_sums.push_back(sum);
  }
  out.value = sum;
  const std::size_t count = out.partial_sums.size();
  if (!out.divergent && count >= 2) {
    const double half = out.partial_sums[count / 2 - 1];
    if (sum > divergence_factor * half) out.divergent = true;
  }
  return out;
}

MaxTerm gap_aq_rhs(const GapSpec& spec, double q, int K) {
  if (!(q > 0.0)) throw UsageError("gap_aq_rhs: q must be positive");
  check_K(spec, K);
  MaxTerm out;
  std::vector<double> terms;
  for (int k = 0; k < K; ++k) {
    terms.push_back(
        std::exp(log_abs_b(spec, k) - q * std::log(static_cast<double>(spec.m_at(k)))));
    if (terms.back() > out.value) {
      out.value = terms.back();
      out.argmax = k;
    }
  }
  out.unbounded =
      K >= 2 && out.argmax == K - 1 && terms[K - 1] > terms[K - 2] * (1.0 + 1e-12);
  return out;
}

double gap_dyadic_blocks(const GapSpec& spec, double p, int K) {
  check_K(spec, K);
  std::map<int, double> blocks;
  for (int k = 0; k < K; ++k) {
    const int j = static_cast<int>(std::floor(std::log2(static_cast<double>(spec.m_at(k)))));
    blocks[j] += std::abs(spec.b_at(k));
  }
  std::vector<double> terms;
  for (const auto& [j, mass] : blocks) terms.push_back(std::exp2(-j * (p + 1.0)) * mass * mass);
  return pairwise_sum(terms);
}

int max_block_cardinality(const GapSpec& spec, int K) {
  check_K(spec, K);
  std::map<int, int> counts;
  int best = 0;
  for (int k = 0; k < K; ++k) {
    const int j = static_cast<int>(std::floor(std::log2(static_cast<double>(spec.m_at(k)))));
    best = std::max(best, ++counts[j]);
  }
  return best;
}

double block_cardinality_bound(double c) { return 1.0 + std::log(2.0) / std::log(c); }

double dyadic_bracket(double c, double p) {
  return std::exp2(p + 1.0) * block_cardinality_bound(c);
}

double beta_moment_ratio(int n, double m, double p) {
  const double log_beta =
      std::lgamma(n + m) + std::lgamma(p + 1.0) - std::lgamma(n + m + p + 1.0);
  return std::exp(log_beta + (p + 1.0) * std::log(m));
}

std::pair<GapSpec, GapSpec> separation_witnesses(int n, double p1, double p2) {
  if (n < 1) throw UsageError("separation_witnesses: n must be at least 1");
  if (!(p1 > 0.0 && p1 < p2 && p2 <= n)) {
    throw UsageError("separation_witnesses: need 0 < p1 < p2 <= n");
  }
  GapSpec f1;
  f1.n = n;
  f1.b.beta = 0.5 * (n + 1);
  GapSpec f2 = f1;
  f2.b.beta = 0.5 * (1.0 + p1);
  return {f1, f2};
}

void to_json(nlohmann::json& j, const EquivalenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"K", row.K}, {"norm_sq", row.norm_sq}, {"np_rhs", row.np_rhs},
                    {"np_ratio", row.np_ratio}, {"aq_norm", row.aq_norm}, {"aq_rhs", row.aq_rhs},
                    {"aq_ratio", row.aq_ratio}});
  }
  j = nlohmann::json{{"p", r.p}, {"q", r.q}, {"np_spread", r.np_spread},
                     {"aq_spread", r.aq_spread}, {"rows", rows}};
}

std::string to_csv(const EquivalenceReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "K,norm_sq,np_rhs,np_ratio,aq_norm,aq_rhs,aq_ratio\n";
  for (const auto& row : r.rows) {
    os << row.K << ',' << row.norm_sq << ',' << row.np_rhs << ',' << row.np_ratio << ','
       << row.aq_norm << ',' << row.aq_rhs << ',' << row.aq_ratio << '\n';
  }
  return os.str();
}

EquivalenceReport equivalence_report(const GapSpec& spec, double p, double q,
                                     const std::vector<int>& truncations, const SearchSpec& search,
                                     const QuadSpec& quad) {
  for (std::size_t i = 1; i < truncations.size(); ++i) {
    if (truncations[i] <= truncations[i - 1]) {
      throw UsageError("equivalence_report: truncations must increase");
    }
  }
  EquivalenceReport report;
  report.p = p;
  report.q = q;
  report.rows.resize(truncations.size());
  for (std::size_t i = 0; i < truncations.size(); ++i) {
    const int K = truncations[i];
    EquivalenceRow& row = report.rows[i];
    row.K = K;
    const HoloFunction f = HoloFunction::polynomial(truncate(gap_series(spec, K), K));
    const double norm = norm_np(f, p, search, quad).value;
    row.norm_sq = norm * norm;
    row.np_rhs = gap_np_rhs(spec, p, K).value;
    row.np_ratio = row.norm_sq / row.np_rhs;
    row.aq_norm = norm_bergman_type(f, q).value;
    row.aq_rhs = gap_aq_rhs(spec, q, K).value;
    row.aq_ratio = row.aq_norm / row.aq_rhs;
  }
  if (!report.rows.empty()) {
    auto spread = [&](auto field) {
      double lo = INFINITY, hi = 0.0;
      for (const auto& row : report.rows) {
        lo = std::min(lo, row.*field);
        hi = std::max(hi, row.*field);
      }
      return hi / lo;
    };
    report.np_spread = spread(&EquivalenceRow::np_ratio);
    report.aq_spread = spread(&EquivalenceRow::aq_ratio);
  }
  return report;
}

std::vector<double> generator_l2_constants(int n, const std::vector<int>& degrees) {
  const HomogeneousGenerator gen = standard_generator(n);
  std::vector<double> out;
  for (int d : degrees) {
    const Polynomial p = gen(d);
    std::vector<double> terms;
    for (const auto& [alpha, c] : p.coeffs()) terms.push_back(std::norm(c) * sphere_weight(alpha));
    out.push_back(std::sqrt(pairwise_sum(terms)));
  }
  return out;
}

}  // namespace npball
