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

#include "fgrowth/linalg.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/limits.hpp"

namespace fgrowth {

IndexSpace::IndexSpace(int n, int w, int k) : n_(n), w_(w), k_(k) {
  if (n < 1 || n > kMaxTruthTableVars) {
    throw DimensionError("oracle qubit count must lie in [1, 20], got " + std::to_string(n));
  }
  if (w < 0 || k < 0) {
    throw DimensionError("workspace and clean qubit counts must be non-negative");
  }
  if (n + w + k > 30) {
    throw DimensionError("total qubit count exceeds 30");
  }
}

int f2_inner(std::size_t i, std::size_t j) { return parity((i - 1) & (j - 1)); }

ComplexMatrix hadamard_matrix(int n) {
  if (n < 1 || n > kMaxTruthTableVars) {
    throw DimensionError("hadamard_matrix: n must lie in [1, 20], got " + std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  if (dim * dim > kMaxDenseEntries) {
    throw ResourceError("hadamard_matrix: dense matrix too large for n=" + std::to_string(n));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix h(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      h(a, b) = parity(a & b) ? -scale : scale;
    }
  }
  return h;
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double unitarity_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeError("unitarity_residual: matrix is not square");
  }
  const ComplexMatrix gram = a.adjoint() * a;
  return (gram - ComplexMatrix::Identity(a.rows(), a.cols())).norm();
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DimensionError("random_unitary: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix z(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      z(r, c) = Complex(re, im) * M_SQRT1_2;
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t c = 0; c < dim; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    const Complex phase = mag > 0.0 ? diag / mag : Complex(1.0, 0.0);
    q.col(c) *= phase;
  }
  return q;
}

ComplexMatrix phase_oracle(std::span<const std::int8_t> x, const IndexSpace& space) {
  if (x.size() != space.N()) {
    throw ShapeError("phase_oracle: input has length " + std::to_string(x.size()) +
                     ", expected " + std::to_string(space.N()));
  }
  const std::size_t m = space.M();
  ComplexMatrix o = ComplexMatrix::Zero(m, m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    o(idx, idx) = static_cast<double>(x[space.oracle_of(idx)]);
  }
  return o;
}

void apply_phase_rows(std::span<const std::int8_t> x, const IndexSpace& space,
                      ComplexMatrix& a) {
  if (x.size() != space.N() || static_cast<std::size_t>(a.rows()) != space.M()) {
    throw ShapeError("apply_phase_rows: shape mismatch");
  }
  const std::size_t block = space.W() * space.K();
  for (std::size_t i = 0; i < space.N(); ++i) {
    if (x[i] < 0) a.middleRows(i * block, block) *= -1.0;
  }
}

}  // namespace fgrowth
