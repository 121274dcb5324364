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
#ifndef NPBALL_QUADRATURE_HPP_
#define NPBALL_QUADRATURE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "npball/ball.hpp"

namespace npball {

// Gauss rule on [0, 1] for the weight (1-t)^alpha t^beta; the weights
// integrate that weight exactly against polynomials of degree < 2 * size.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Cached, thread-safe. Nodes by Golub-Welsch, weights by the Christoffel sum.
std::shared_ptr<const GaussRule> gauss_jacobi_unit(int size, double alpha, double beta);
inline std::shared_ptr<const GaussRule> gauss_legendre_unit(int size) {
  return gauss_jacobi_unit(size, 0.0, 0.0);
}

// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

// Quadrature rule for the normalized surface measure on the unit sphere.
struct SphereRule {
  std::vector<CVector> points;
  std::vector<double> weights;  // sum to 1
  std::size_t size() const { return points.size(); }
};

// n = 1: m equispaced points on the circle (exact for trigonometric degree < m).
SphereRule circle_rule(int m);
// n = 2: zeta = (sqrt(u) e^{i t1}, sqrt(1-u) e^{i t2}); u is uniform on [0,1]
// under sigma. Gauss-Legendre in u, trapezoid in both angles.
SphereRule hopf_rule(int u_nodes, int theta1_nodes, int theta2_nodes);
// Normalized Gaussian vectors with equal weights.
SphereRule mc_sphere_rule(int n, int samples, std::uint64_t seed);

// Threads available to npball (NPBALL_THREADS, else hardware concurrency).
int thread_budget();
// Runs body(i) for i in [0, count). Results must be written by index so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace npball

#endif  // NPBALL_QUADRATURE_HPP_
