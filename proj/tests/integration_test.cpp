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

// End-to-end flows across modules: serialized specs through spectra,
// reductions through Fourier levels, and decision trees through ceilings.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fgrowth/decomposition.hpp"
#include "fgrowth/forrelation.hpp"
#include "fgrowth/fourier.hpp"
#include "fgrowth/limits.hpp"

namespace fgrowth {
namespace {

TEST(Integration, SerializedSpecKeepsItsSpectrum) {
  const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(2, 0, 1), 2, 17);
  const AlgorithmSpec back = spec_from_json(spec_to_json(spec));
  const auto a = restricted_spectrum(spec, Restriction::all_free(4));
  const auto b = restricted_spectrum(back, Restriction::all_free(4));
  for (std::uint64_t s = 0; s < 16; ++s) EXPECT_NEAR(a[s], b[s], 1e-12);
}

TEST(Integration, ReductionScalesEveryHigherCoefficient) {
  const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(1, 0, 2), 2, 3);
  const AlgorithmSpec reduced = reduce_clean_qubits(spec, 1);
  EXPECT_EQ(reduced.space.k(), 1);
  const auto before = restricted_spectrum(spec, Restriction::all_free(2));
  const auto after = restricted_spectrum(reduced, Restriction::all_free(2));
  EXPECT_NEAR(after[0] - 0.5, (before[0] - 0.5) / 4.0, 1e-9);
  for (std::uint64_t s = 1; s < 4; ++s) EXPECT_NEAR(after[s], before[s] / 4.0, 1e-9);
}

TEST(Integration, ThreeSpectrumPipelinesAgree) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(1, 0, 1), 2, rng());
    const Restriction rho = Restriction::random(2, 0.3, rng);
    const auto wht = restricted_spectrum(spec, rho);
    const auto direct = direct_spectrum(spec, rho);
    const auto decomposed = spectrum_via_decomposition(spec, rho);
    for (std::uint64_t s = 0; s < wht.coeffs.size(); ++s) {
      EXPECT_NEAR(direct[s], wht[s], 1e-8);
      EXPECT_NEAR(decomposed[s], wht[s], 1e-8);
    }
  }
}

TEST(Integration, HybridStaysUnderCeiling) {
  const IndexSpace space(2, 0, 1);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const HybridSpec hybrid = random_hybrid(space, 1, 1, seed);
    const auto sp = spectrum(
        [&](std::span<const std::int8_t> x) { return acceptance_hybrid(hybrid, x); }, 4);
    for (int level = 2; level <= 3; ++level) {
      EXPECT_TRUE(within_bound(growth(sp, level), hybrid_ceiling(1, level, 4, 1)));
    }
  }
}

TEST(Integration, TightnessCircuitSurvivesSerialization) {
  const auto circuit = tightness_circuit(1, 2);
  const AlgorithmSpec back = spec_from_json(spec_to_json(circuit.spec));
  ASSERT_TRUE(back.restriction.has_value());
  EXPECT_EQ(back.restriction->str(), circuit.restriction.str());
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<SignVector> x(2, SignVector(2));
    for (auto& b : x) {
      for (auto& v : b) v = (rng() & 1) ? -1 : 1;
    }
    EXPECT_NEAR(acceptance_direct(back, circuit.embed(x)), trace_expression(x, 1), 1e-9);
  }
}

}  // namespace
}  // namespace fgrowth
