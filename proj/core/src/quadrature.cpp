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
#include "npball/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>
#include <tuple>

#include "npball/errors.hpp"

namespace npball {
namespace {

// Monic Jacobi recurrence on [-1, 1]: p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
void jacobi_recurrence(int size, double alpha, double beta, std::vector<double>& a,
                       std::vector<double>& b) {
  a.assign(size, 0.0);
  b.assign(size, 0.0);
  const double ab = alpha + beta;
  for (int k = 0; k < size; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      a[k] = (beta - alpha) / (ab + 2.0);
    } else {
      a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
    if (k == 1) {
      b[k] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else if (k > 1) {
      b[k] = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
  }
}

GaussRule build_gauss_jacobi(int size, double alpha, double beta) {
  std::vector<double> a, b;
  jacobi_recurrence(size, alpha, beta, a, b);
  Eigen::VectorXd diag(size);
  Eigen::VectorXd sub(std::max(size - 1, 1));
  for (int k = 0; k < size; ++k) diag[k] = a[k];
  for (int k = 1; k < size; ++k) sub[k - 1] = std::sqrt(b[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(size - 1), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("gauss_jacobi: eigen solver failed");
  const Eigen::VectorXd x = solver.eigenvalues();

  // Total mass of (1-x)^alpha (1+x)^beta on [-1,1].
  const double log_mu0 = (alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                         std::lgamma(beta + 1.0) - std::lgamma(alpha + beta + 2.0);
  const double mu0 = std::exp(log_mu0);

  GaussRule rule;
  rule.nodes.resize(size);
  rule.weights.resize(size);
  // Map to [0,1]: t = (1+x)/2 and (1-t)^alpha t^beta dt = 2^{-(alpha+beta+1)} (...) dx.
  const double scale = std::exp(-(alpha + beta + 1.0) * std::log(2.0));
  for (int i = 0; i < size; ++i) {
    // Christoffel: w_i = mu0 / sum_k q_k(x_i)^2 for the orthonormal q_k.
    double q_prev = 0.0;
    double q = 1.0;
    double sum = 1.0;
    for (int k = 0; k + 1 < size; ++k) {
      const double next = ((x[i] - a[k]) * q - (k > 0 ? std::sqrt(b[k]) * q_prev : 0.0)) /
                          std::sqrt(b[k + 1]);
      q_prev = q;
      q = next;
      sum += q * q;
    }
    rule.nodes[i] = 0.5 * (1.0 + x[i]);
    rule.weights[i] = scale * mu0 / sum;
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussRule> gauss_jacobi_unit(int size, double alpha, double beta) {
  if (size < 1) throw UsageError("gauss_jacobi_unit: size must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0)) throw UsageError("gauss_jacobi_unit: exponents must exceed -1");
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const GaussRule>> cache;
  const auto key = std::make_tuple(size, alpha, beta);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const GaussRule>(build_gauss_jacobi(size, alpha, beta));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SphereRule circle_rule(int m) {
  if (m < 1) throw UsageError("circle_rule: need at least one node");
  SphereRule rule;
  rule.points.reserve(m);
  rule.weights.assign(m, 1.0 / m);
  for (int k = 0; k < m; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / m;
    CVector p(1);
    p[0] = std::polar(1.0, theta);
    rule.points.push_back(std::move(p));
  }
  return rule;
}

SphereRule hopf_rule(int u_nodes, int theta1_nodes, int theta2_nodes) {
  if (u_nodes < 1 || theta1_nodes < 1 || theta2_nodes < 1) {
    throw UsageError("hopf_rule: node counts must be positive");
  }
  const auto gl = gauss_legendre_unit(u_nodes);
  SphereRule rule;
  const std::size_t total = static_cast<std::size_t>(u_nodes) * theta1_nodes * theta2_nodes;
  rule.points.reserve(total);
  rule.weights.reserve(total);
  const double angle_weight = 1.0 / (static_cast<double>(theta1_nodes) * theta2_nodes);
  for (int iu = 0; iu < u_nodes; ++iu) {
    const double u = gl->nodes[iu];
    const double c1 = std::sqrt(u);
    const double c2 = std::sqrt(1.0 - u);
    for (int i1 = 0; i1 < theta1_nodes; ++i1) {
      const Complex e1 = std::polar(c1, 2.0 * std::numbers::pi * i1 / theta1_nodes);
      for (int i2 = 0; i2 < theta2_nodes; ++i2) {
        CVector p(2);
        p[0] = e1;
        p[1] = std::polar(c2, 2.0 * std::numbers::pi * i2 / theta2_nodes);
        rule.points.push_back(std::move(p));
        rule.weights.push_back(gl->weights[iu] * angle_weight);
      }
    }
  }
  return rule;
}

SphereRule mc_sphere_rule(int n, int samples, std::uint64_t seed) {
  if (n < 1 || samples < 1) throw UsageError("mc_sphere_rule: bad dimension or sample count");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SphereRule rule;
  rule.points.reserve(samples);
  rule.weights.assign(samples, 1.0 / samples);
  while (static_cast<int>(rule.points.size()) < samples) {
    CVector v(n);
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      v[i] = Complex(re, im);
    }
    const double len = v.norm();
    if (len > 1e-300) rule.points.push_back(v / len);
  }
  return rule;
}

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("NPBALL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min(cap, hw);
  }
  return hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int threads = std::min<std::size_t>(thread_budget(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace npball
