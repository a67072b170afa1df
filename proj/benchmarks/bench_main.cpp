// Copyright 2026 The fgrowth Authors
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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fgrowth/decomposition.hpp"
#include "fgrowth/forrelation.hpp"
#include "fgrowth/fourier.hpp"

namespace fgrowth {
namespace {

void BM_WalshHadamard(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<double> data(std::size_t{1} << state.range(0));
  for (auto& v : data) v = static_cast<double>(rng() % 1000) / 1000.0;
  for (auto _ : state) {
    walsh_hadamard(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_WalshHadamard)->DenseRange(10, 20, 5);

void BM_AcceptanceDirect(benchmark::State& state) {
  const auto model = static_cast<Model>(state.range(0));
  const IndexSpace space(3, 1, model == Model::DQCK ? 1 : 0);
  const AlgorithmSpec spec = random_spec(model, space, 3, 5);
  const SignVector x(space.N(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(acceptance_direct(spec, x));
}
BENCHMARK(BM_AcceptanceDirect)->Arg(0)->Arg(1)->Arg(2);

void BM_RestrictedSpectrum(benchmark::State& state) {
  const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(3, 0, 1), 2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(restricted_spectrum(spec, Restriction::all_free(8)).coeffs.data());
  }
}
BENCHMARK(BM_RestrictedSpectrum);

void BM_DecomposeImproved(benchmark::State& state) {
  const auto spec = random_decomposition_spec(4, 2, 4, 4, 1, 1, 11);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_improved(spec).product.data());
}
BENCHMARK(BM_DecomposeImproved)->Unit(benchmark::kMillisecond);

void BM_VerifyDecomposition(benchmark::State& state) {
  const auto spec = random_decomposition_spec(4, 2, 3, 4, 0, 1, 12);
  for (auto _ : state) benchmark::DoNotOptimize(verify(spec).max_deviation);
}
BENCHMARK(BM_VerifyDecomposition)->Unit(benchmark::kMillisecond);

void BM_Forr(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto inst = random_instance(4, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(forr(inst));
}
BENCHMARK(BM_Forr)->Arg(6)->Arg(12);

}  // namespace
}  // namespace fgrowth

BENCHMARK_MAIN();
