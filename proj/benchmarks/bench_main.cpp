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
#include <benchmark/benchmark.h>

#include "npball/carleson.hpp"
#include "npball/gap.hpp"
#include "npball/integrate.hpp"
#include "npball/literal.hpp"
#include "npball/norms.hpp"

namespace {

using namespace npball;

HoloFunction poly(const char* text, int n) { return HoloFunction::polynomial(parse_polynomial(text, n)); }

BallPoint point(int n, double r) {
  CVector a = CVector::Zero(n);
  a[0] = Complex(r * 0.6, r * 0.8);
  return BallPoint(a);
}

void BM_NpIntegral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Backend backend = state.range(1) ? Backend::quadrature : Backend::spectral;
  const HoloFunction f = poly(n == 1 ? "1 + 2z - z^3 + 0.5z^6" : "1 + z1 z2 - z2^4 + 0.5z1^3", n);
  const QuadSpec spec = QuadSpec::for_dimension(n, backend);
  const BallPoint a = point(n, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(np_integral(f, a, 1.0, spec));
  state.SetLabel(to_string(backend));
}
BENCHMARK(BM_NpIntegral)->Args({1, 0})->Args({1, 1})->Args({2, 0})->Args({2, 1})
    ->Unit(benchmark::kMicrosecond);

void BM_NormNp(benchmark::State& state) {
  const HoloFunction f = poly("1 + 2z - z^3 + 0.5z^6", 1);
  const QuadSpec spec = QuadSpec::for_dimension(1);
  for (auto _ : state) benchmark::DoNotOptimize(norm_np(f, 0.5, SearchSpec{}, spec).value);
}
BENCHMARK(BM_NormNp)->Unit(benchmark::kMillisecond);

void BM_TubeMeasure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HoloFunction f = poly(n == 1 ? "1 + z^4" : "1 + z1^2 z2", n);
  CVector e = CVector::Zero(n);
  e[0] = 1.0;
  const SpherePoint xi(e);
  const QuadSpec spec = QuadSpec::for_dimension(n);
  for (auto _ : state) benchmark::DoNotOptimize(tube_measure(f, 1.0, 0.1, xi, spec));
}
BENCHMARK(BM_TubeMeasure)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_GapNorm(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  const HoloFunction f = HoloFunction::polynomial(truncate(gap_series(GapSpec{}, K), K));
  const QuadSpec spec = QuadSpec::for_dimension(1);
  for (auto _ : state) benchmark::DoNotOptimize(norm_np(f, 0.5, SearchSpec{}, spec).value);
}
BENCHMARK(BM_GapNorm)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
