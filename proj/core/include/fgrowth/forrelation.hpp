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

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fgrowth/fourier.hpp"
#include "fgrowth/models.hpp"

namespace fgrowth {

struct ForrelationInstance {
  int k = 1;
  int n = 1;
  std::vector<SignVector> blocks;

  std::size_t N() const { return std::size_t{1} << n; }
};

void validate(const ForrelationInstance& inst);

// <0| H O_1 H O_2 ... H O_k H |0>, evaluated on a state vector.
double forr(const ForrelationInstance& inst);
// Same quantity from the dense matrix product.
double forr_matrix_product(const ForrelationInstance& inst);

enum class ForrelationLabel { MINUS_ONE, PLUS_ONE, GAP };
std::string_view to_string(ForrelationLabel label);

ForrelationLabel classify(double forr_value, double eps);
ForrelationLabel classify(const ForrelationInstance& inst, double eps);
// (log2 N)^{-k}.
double default_eps(int k, std::size_t n_oracle);

ForrelationInstance random_instance(int k, int n, std::mt19937_64& rng);
// Uniform blocks except the last, which is set to the sign of its
// correlation with the rest so that forr is maximized.
ForrelationInstance forrelated_instance(int k, int n, std::mt19937_64& rng);

std::string instance_to_json(const ForrelationInstance& inst);
ForrelationInstance instance_from_json(const std::string& text);

// One-clean-qubit Hadamard test over `blocks` input blocks of length 2^n.
//
// The oracle register is (control, slot, i) with slot ranging over the
// smallest power of two >= blocks. Positions with control 1 and slot < blocks
// carry the inputs; every other position is fixed to +1 by `restriction`.
// Each of the `queries` steps applies a controlled H_N and a controlled phase
// (the clean qubit is swapped into the control position around the query),
// then rotates the slot register, so every noisy start traverses a cyclic
// rotation of the block sequence. The acceptance probability is
//   1/2 + Tr(O_1 H_N O_2 H_N ... O_blocks H_N) / (2N).
struct BlockCircuit {
  AlgorithmSpec spec;
  Restriction restriction;
  int blocks = 0;
  int n = 0;

  // Full oracle input for the given blocks.
  SignVector embed(const std::vector<SignVector>& x) const;
  double acceptance(const std::vector<SignVector>& x) const;
  // Spectrum over the blocks * N free variables, block-major.
  FourierSpectrum spectrum(unsigned workers = 1) const;
};

BlockCircuit trace_circuit(int k, int n);
BlockCircuit tightness_circuit(int n, int d);

// 1/2 + Tr(O_1 H ... O_k H) / (2N) from dense matrices.
double trace_expression(const std::vector<SignVector>& blocks, int n);

}  // namespace fgrowth
