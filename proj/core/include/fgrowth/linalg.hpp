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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fgrowth {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

// A point of the Boolean cube in the multiplicative convention: every entry is
// +1 or -1.
using SignVector = std::vector<std::int8_t>;

// Register sizes of a query algorithm: n oracle qubits, w workspace qubits and
// k clean qubits.
//
// Basis states of the full register are addressed by a zero-based composite
// index flat = (i * W + w) * K + k, so the oracle coordinate i varies slowest.
class IndexSpace {
 public:
  IndexSpace(int n, int w, int k);

  int n() const { return n_; }
  int w() const { return w_; }
  int k() const { return k_; }
  std::size_t N() const { return std::size_t{1} << n_; }
  std::size_t W() const { return std::size_t{1} << w_; }
  std::size_t K() const { return std::size_t{1} << k_; }
  std::size_t M() const { return N() * W() * K(); }

  std::size_t flat(std::size_t oracle, std::size_t work, std::size_t clean) const {
    return (oracle * W() + work) * K() + clean;
  }
  std::size_t oracle_of(std::size_t flat_index) const { return flat_index / (W() * K()); }
  std::size_t work_of(std::size_t flat_index) const { return (flat_index / K()) % W(); }
  std::size_t clean_of(std::size_t flat_index) const { return flat_index % K(); }

  friend bool operator==(const IndexSpace&, const IndexSpace&) = default;

 private:
  int n_;
  int w_;
  int k_;
};

inline int parity(std::uint64_t bits) { return __builtin_popcountll(bits) & 1; }

// Inner product over F2 of the bit encodings of one-based indices i and j,
// where index i encodes the binary string of i - 1.
int f2_inner(std::size_t i, std::size_t j);

// Normalized n-qubit Hadamard transform, entry (a, b) = (-1)^{<a,b>} / sqrt(2^n).
ComplexMatrix hadamard_matrix(int n);

double operator_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

// ||A^dagger A - I||_frob.
double unitarity_residual(const ComplexMatrix& a);

// Haar-random unitary, reproducible for a given seed.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);

// Diagonal M x M matrix whose entry at composite index (i, w, k) is x_i.
ComplexMatrix phase_oracle(std::span<const std::int8_t> x, const IndexSpace& space);

// Multiplies every row whose oracle coordinate is i by x_i, in place. This is
// phase_oracle(x) * a without forming the diagonal.
void apply_phase_rows(std::span<const std::int8_t> x, const IndexSpace& space,
                      ComplexMatrix& a);

}  // namespace fgrowth
