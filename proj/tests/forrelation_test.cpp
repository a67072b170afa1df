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

#include <bit>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fgrowth/errors.hpp"
#include "fgrowth/forrelation.hpp"

namespace fgrowth {
namespace {

std::vector<SignVector> random_blocks(int count, int n, std::mt19937_64& rng) {
  std::vector<SignVector> out(count, SignVector(std::size_t{1} << n));
  for (auto& b : out) {
    for (auto& v : b) v = (rng() & 1) ? -1 : 1;
  }
  return out;
}

TEST(Forr, Examples) {
  EXPECT_NEAR(forr({1, 1, {SignVector(2, 1)}}), 1.0, 1e-15);
  EXPECT_NEAR(forr({2, 2, {SignVector(4, 1), SignVector(4, 1)}}), 0.5, 1e-15);
  EXPECT_NEAR(forr_matrix_product({2, 2, {SignVector(4, 1), SignVector(4, 1)}}), 0.5, 1e-15);
}

TEST(Forr, PipelinesAgreeAndStayBounded) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(1 + trial % 4, 1 + trial % 5, rng);
    const double value = forr(inst);
    EXPECT_NEAR(value, forr_matrix_product(inst), 1e-12);
    EXPECT_LE(std::abs(value), 1.0 + 1e-12);
  }
}

TEST(Forr, ShapeErrors) {
  EXPECT_THROW(forr({2, 1, {SignVector(2, 1)}}), ShapeError);
  EXPECT_THROW(forr({1, 2, {SignVector(2, 1)}}), ShapeError);
  EXPECT_THROW(instance_from_json(R"({"k":1,"n":1,"blocks":[[1,0]]})"), ShapeError);
  EXPECT_THROW(instance_from_json("{"), SpecificationError);
}

TEST(Forr, ForrelatedGeneratorBeatsRandomOnAverage) {
  std::mt19937_64 rng(5);
  double related = 0.0;
  double plain = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    related += forr(forrelated_instance(2, 4, rng));
    plain += forr(random_instance(2, 4, rng));
  }
  EXPECT_GT(related, plain);
}

TEST(Forr, JsonRoundTrip) {
  std::mt19937_64 rng(1);
  const auto inst = random_instance(3, 2, rng);
  const auto back = instance_from_json(instance_to_json(inst));
  EXPECT_EQ(back.k, 3);
  EXPECT_EQ(back.n, 2);
  EXPECT_EQ(back.blocks, inst.blocks);
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(0.0, 0.1), ForrelationLabel::PLUS_ONE);
  EXPECT_EQ(classify(1.0, 0.1), ForrelationLabel::MINUS_ONE);
  EXPECT_EQ(classify(0.15, 0.1), ForrelationLabel::GAP);
  EXPECT_EQ(classify(0.2, 0.1), ForrelationLabel::MINUS_ONE);
  EXPECT_EQ(classify(0.1, 0.1), ForrelationLabel::PLUS_ONE);
  EXPECT_THROW(classify(0.0, 0.0), ParameterError);
  EXPECT_EQ(to_string(ForrelationLabel::GAP), "GAP");
}

TEST(DefaultEps, Examples) {
  EXPECT_DOUBLE_EQ(default_eps(2, 16), 1.0 / 16.0);
  EXPECT_DOUBLE_EQ(default_eps(1, 4), 0.5);
  EXPECT_NEAR(default_eps(3, 8), 1.0 / 27.0, 1e-15);
  EXPECT_THROW(default_eps(1, 2), ParameterError);
}

TEST(TraceCircuit, AllOnesCollapses) {
  for (int n = 1; n <= 2; ++n) {
    const std::size_t size = std::size_t{1} << n;
    const ComplexMatrix h = hadamard_matrix(n);
    for (int k = 1; k <= 2; ++k) {
      const auto circuit = trace_circuit(k, n);
      const std::vector<SignVector> ones(k, SignVector(size, 1));
      const ComplexMatrix power = k == 1 ? h : ComplexMatrix(h * h);
      const double expected = 0.5 + power.trace().real() / (2.0 * static_cast<double>(size));
      EXPECT_NEAR(circuit.acceptance(ones), expected, 1e-12);
      EXPECT_NEAR(trace_expression(ones, n), expected, 1e-12);
    }
  }
  // H squared is the identity, so the trace is N.
  EXPECT_NEAR(trace_circuit(2, 2).acceptance({SignVector(4, 1), SignVector(4, 1)}), 1.0, 1e-12);
}

TEST(TraceCircuit, MatchesTraceExpressionAndFormula) {
  std::mt19937_64 rng(77);
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 2; ++n) {
      const auto circuit = trace_circuit(k, n);
      EXPECT_EQ(circuit.spec.model, Model::DQCK);
      EXPECT_EQ(circuit.spec.space.k(), 1);
      EXPECT_EQ(circuit.restriction.free_count(), static_cast<std::size_t>(k) << n);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_blocks(k, n, rng);
        const double expected = trace_expression(x, n);
        EXPECT_NEAR(circuit.acceptance(x), expected, 1e-9);
        EXPECT_NEAR(acceptance_formula(circuit.spec, circuit.embed(x)), expected, 1e-9);
      }
    }
  }
  EXPECT_THROW(trace_circuit(0, 1), ParameterError);
}

TEST(Tightness, OneIndexPerBlockSupport) {
  const auto circuit = tightness_circuit(1, 2);
  const auto sp = circuit.spectrum();
  ASSERT_EQ(sp.num_vars, 4);
  for (std::uint64_t s = 1; s < 16; ++s) {
    const bool one_per_block = std::popcount(s & 0b0011) == 1 && std::popcount(s & 0b1100) == 1;
    if (!one_per_block) EXPECT_NEAR(sp[s], 0.0, 1e-12) << s;
  }
  EXPECT_NEAR(sp[0], 0.5, 1e-12);
}

TEST(Tightness, ExactSpectrumAtTwoQubitsThreeBlocks) {
  const int n = 2;
  const int d = 3;
  const std::size_t size = 4;
  const auto circuit = tightness_circuit(n, d);
  const auto sp = circuit.spectrum(2);
  ASSERT_EQ(sp.num_vars, 12);
  const double magnitude = 1.0 / (2.0 * size * std::pow(size, d / 2.0));
  std::size_t nonzero = 0;
  for (std::uint64_t s = 1; s < sp.coeffs.size(); ++s) {
    if (std::abs(sp[s]) > 1e-12) ++nonzero;
    if (std::popcount(s) != 3) {
      EXPECT_NEAR(sp[s], 0.0, 1e-12);
      continue;
    }
    const std::uint64_t a = s & 0xF;
    const std::uint64_t b = (s >> 4) & 0xF;
    const std::uint64_t c = (s >> 8) & 0xF;
    if (std::popcount(a) != 1 || std::popcount(b) != 1 || std::popcount(c) != 1) {
      EXPECT_NEAR(sp[s], 0.0, 1e-12);
      continue;
    }
    const auto i1 = static_cast<std::size_t>(std::countr_zero(a));
    const auto i2 = static_cast<std::size_t>(std::countr_zero(b));
    const auto i3 = static_cast<std::size_t>(std::countr_zero(c));
    const int exponent = std::popcount(i1 & i2) + std::popcount(i2 & i3) + std::popcount(i3 & i1);
    EXPECT_NEAR(sp[s], (exponent % 2 ? -1.0 : 1.0) * magnitude, 1e-12) << s;
  }
  EXPECT_EQ(nonzero, 64u);
  EXPECT_NEAR(growth(sp, 3), 1.0, 1e-9);
}

TEST(Tightness, CapEnforced) {
  EXPECT_THROW(tightness_circuit(3, 3), ResourceError);
  EXPECT_THROW(tightness_circuit(1, 0), ParameterError);
}

}  // namespace
}  // namespace fgrowth
