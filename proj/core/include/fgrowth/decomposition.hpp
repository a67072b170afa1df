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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fgrowth/fourier.hpp"
#include "fgrowth/linalg.hpp"
#include "fgrowth/models.hpp"

namespace fgrowth {

// Inputs of the decomposition lemmas. Times are one-based: matrices[t - 1] is
// U_t, and equality pairs / memory indices refer to positions t in [2, d].
struct DecompositionSpec {
  std::vector<ComplexMatrix> matrices;
  // Size of the oracle register; a composite index I has oracle coordinate
  // i = I / (M / oracle_dim).
  std::size_t oracle_dim = 0;
  // Times whose index does not enter the parity.
  std::vector<int> ignored;
  // Oracle coordinates 0 .. n_tilde - 1 are tracked in the parity register.
  int n_tilde = 0;
  std::vector<std::pair<int, int>> equality_pairs;
  std::vector<int> memory_indices;

  int d() const { return static_cast<int>(matrices.size()); }
  std::size_t M() const { return matrices.empty() ? 0 : static_cast<std::size_t>(matrices[0].rows()); }
  std::size_t oracle_of(std::size_t composite) const { return composite / (M() / oracle_dim); }
  bool ignores(int t) const;
};

// One coordinate of an augmented index space: composite index, parity set,
// equality registers A and memory registers B (0 = empty, else oracle
// coordinate + 1).
struct AugmentedIndex {
  std::size_t composite = 0;
  std::uint64_t parity = 0;
  std::vector<std::uint32_t> equality;
  std::vector<std::uint32_t> memory;

  friend bool operator==(const AugmentedIndex&, const AugmentedIndex&) = default;
};

// flat = ((composite * 2^parity_bits + parity) * R^eq_slots + A) * R^mem_slots + B
// with R = oracle_dim + 1 and registers read as base-R numerals, slot 0 most
// significant.
struct AugmentedCodec {
  std::size_t outer = 0;
  int parity_bits = 0;
  int eq_slots = 0;
  int mem_slots = 0;
  std::size_t radix = 1;

  std::size_t size() const;
  std::size_t encode(const AugmentedIndex& idx) const;
  AugmentedIndex decode(std::size_t flat) const;

  friend bool operator==(const AugmentedCodec&, const AugmentedCodec&) = default;
};

// Compressed-row matrix over augmented indices.
class SparseFactor {
 public:
  SparseFactor(AugmentedCodec rows, AugmentedCodec cols);

  const AugmentedCodec& row_codec() const { return rows_; }
  const AugmentedCodec& col_codec() const { return cols_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_.size(); }
  std::size_t nonzeros() const { return values_.size(); }

  // Rows must be appended in increasing order.
  void push(std::size_t row, std::size_t col, Complex value);
  void finish();

  Complex at(std::size_t row, std::size_t col) const;
  ComplexMatrix dense() const;

  struct Block {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
  };
  // Connected components of the bipartite row/column graph of the nonzeros;
  // after permuting rows and columns the factor is block diagonal with these blocks.
  std::vector<Block> blocks() const;
  ComplexMatrix block_matrix(const Block& b) const;

  // Largest singular value, computed blockwise.
  double operator_norm() const;

  // out = left * this, for a dense left operand with rows() columns.
  ComplexMatrix right_multiply(const ComplexMatrix& left) const;

  std::span<const std::size_t> row_offsets() const { return offsets_; }
  std::span<const std::size_t> col_indices() const { return col_index_; }
  std::span<const Complex> values() const { return values_; }

 private:
  AugmentedCodec rows_;
  AugmentedCodec cols_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> col_index_;
  std::vector<Complex> values_;
};

struct AugmentedMatrix {
  std::vector<SparseFactor> factors;
  ComplexMatrix product;
  AugmentedCodec row_codec;
  AugmentedCodec col_codec;

  Complex entry(const AugmentedIndex& row, const AugmentedIndex& col) const {
    return product(row_codec.encode(row), col_codec.encode(col));
  }
};

// S xor {i} when t is in [2, d] minus T and i < n_tilde (i zero-based); S otherwise.
std::uint64_t update(std::uint64_t parity, std::size_t oracle, int t, const DecompositionSpec& spec);

// Structural checks plus operator norms of the inputs (<= 1 + 1e-9).
void validate(const DecompositionSpec& spec);

// Parity-only decomposition. The first factor has rows I_1 alone; the
// remaining factors are square over (I, S).
AugmentedMatrix decompose(const DecompositionSpec& spec);

// Decomposition with equality and memory registers. Rows (I_1, S_1) and
// columns (I_{d+1}, S_{d+1}, B_{d+1}).
AugmentedMatrix decompose_improved(const DecompositionSpec& spec);

// Literal sum over (I_2, ..., I_d) of U_1[I_1|I_2] ... U_d[I_d|I_end] times
// the parity, equality and memory indicators.
Complex brute_force_entry(const DecompositionSpec& spec, std::size_t i1, std::size_t i_end,
                          std::uint64_t s_end, std::span<const std::uint32_t> b_end,
                          std::uint64_t s1 = 0);

struct VerifyReport {
  std::string lemma;
  double max_deviation = 0.0;
  double max_factor_norm = 0.0;
  double product_frobenius = 0.0;
  double min_input_frobenius = 0.0;
  bool entries_pass = false;
  bool norms_pass = false;
  bool frobenius_pass = false;

  bool pass() const { return entries_pass && norms_pass && frobenius_pass; }
  std::string to_json(std::uint64_t seed) const;
};

// Builds the appropriate decomposition and checks all three guarantees
// against brute_force_entry.
VerifyReport verify(const DecompositionSpec& spec, unsigned workers = 1);

// Reads every Fourier coefficient of a DQC(k) acceptance probability, restricted
// by rho, off the parity-augmented product of its trace form.
FourierSpectrum spectrum_via_decomposition(const AlgorithmSpec& spec, const Restriction& rho);

DecompositionSpec random_decomposition_spec(std::size_t oracle_dim, std::size_t aux_dim, int d,
                                            int n_tilde, int eq_pairs, int mem_indices,
                                            std::uint64_t seed);

}  // namespace fgrowth
