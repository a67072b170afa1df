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

#include <cmath>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/fourier.hpp"
#include "fgrowth/limits.hpp"

namespace fgrowth {

std::vector<std::size_t> free_prefix_permutation(const Restriction& rho) {
  std::vector<std::size_t> perm(rho.size());
  std::size_t next = 0;
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (rho.is_free(p)) perm[p] = next++;
  }
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (!rho.is_free(p)) perm[p] = next++;
  }
  return perm;
}

ComplexMatrix relabel_oracle(const ComplexMatrix& a, const IndexSpace& space,
                             std::span<const std::size_t> perm) {
  const std::size_t m = space.M();
  const std::size_t block = space.W() * space.K();
  std::vector<std::size_t> image(m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    image[idx] = perm[space.oracle_of(idx)] * block + idx % block;
  }
  ComplexMatrix out(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) out(image[r], image[c]) = a(r, c);
  }
  return out;
}

namespace {

// A cyclic chain W_1[I_1|I_2] W_2[I_2|I_3] ... W_L[I_L|I_1] summed over all
// index tuples, with the free oracle coordinates of selected positions folded
// into a parity mask.
class ChainSum {
 public:
  ChainSum(const IndexSpace& space, std::size_t free_vars) : space_(space), free_vars_(free_vars) {}

  std::vector<ComplexMatrix> factors;
  std::vector<bool> tracks_parity;
  std::vector<std::size_t> first_indices;
  // Position (zero-based) whose index is weighted by pair_weight(I_1, I_pos).
  int weighted_position = -1;
  std::vector<bool> pair_weight;

  std::vector<Complex> run() {
    const std::size_t m = space_.M();
    const double terms = static_cast<double>(first_indices.size()) *
                         std::pow(static_cast<double>(m), static_cast<double>(factors.size() - 1));
    if (terms > static_cast<double>(kMaxEnumeratedTerms)) {
      throw ResourceError("direct coefficient sum would enumerate " + std::to_string(terms) +
                          " index tuples (cap 1e7)");
    }
    acc_.assign(std::size_t{1} << free_vars_, Complex(0.0));
    for (std::size_t first : first_indices) {
      first_ = first;
      descend(0, first, Complex(1.0), bit(first, 0));
    }
    return acc_;
  }

 private:
  std::uint64_t bit(std::size_t idx, std::size_t position) const {
    if (!tracks_parity[position]) return 0;
    const std::size_t oracle = space_.oracle_of(idx);
    return oracle < free_vars_ ? std::uint64_t{1} << oracle : 0;
  }

  void descend(std::size_t position, std::size_t current, Complex value, std::uint64_t mask) {
    const std::size_t last = factors.size() - 1;
    if (position == last) {
      acc_[mask] += value * factors[last](current, first_);
      return;
    }
    const std::size_t m = space_.M();
    const ComplexMatrix& w = factors[position];
    for (std::size_t next = 0; next < m; ++next) {
      const Complex entry = w(current, next);
      if (entry == Complex(0.0)) continue;
      if (static_cast<int>(position + 1) == weighted_position &&
          !pair_weight[first_ * m + next]) {
        continue;
      }
      descend(position + 1, next, value * entry, mask ^ bit(next, position + 1));
    }
  }

  IndexSpace space_;
  std::size_t free_vars_;
  std::size_t first_ = 0;
  std::vector<Complex> acc_;
};

// Rows of fixed oracle coordinates scaled by their fixed value.
void apply_fixed_rows(ComplexMatrix& a, const IndexSpace& space, std::span<const int> fixed_value) {
  const std::size_t block = space.W() * space.K();
  for (std::size_t q = 0; q < space.N(); ++q) {
    if (fixed_value[q] < 0) a.middleRows(q * block, block) *= -1.0;
  }
}

FourierSpectrum direct_spectrum_checked(const AlgorithmSpec& spec, const Restriction& rho,
                                        Model expected) {
  if (spec.model != expected) {
    throw SpecificationError("direct coefficient oracle called for the wrong model");
  }
  return direct_spectrum(spec, rho);
}

}  // namespace

FourierSpectrum direct_spectrum(const AlgorithmSpec& spec, const Restriction& rho) {
  const IndexSpace& space = spec.space;
  if (rho.size() != space.N()) throw ShapeError("restriction length differs from N");
  const std::size_t free_vars = rho.free_count();
  if (free_vars > static_cast<std::size_t>(kMaxTruthTableVars)) {
    throw ResourceError("too many free variables for a dense spectrum");
  }
  const auto perm = free_prefix_permutation(rho);
  // Fixed value at each relabeled position; 0 for free ones.
  std::vector<int> fixed_value(space.N(), 0);
  for (std::size_t p = 0; p < rho.size(); ++p) {
    if (!rho.is_free(p)) fixed_value[perm[p]] = static_cast<int>(rho[p]);
  }
  auto v = formula_matrices(spec);
  for (auto& mat : v) mat = relabel_oracle(mat, space, perm);

  const std::size_t m = space.M();
  const std::size_t block = space.W() * space.K();
  ChainSum chain(space, free_vars);
  chain.tracks_parity.assign(v.size(), true);
  double scale = 1.0;
  switch (spec.model) {
    case Model::BQP:
      chain.tracks_parity[0] = false;
      chain.first_indices = {perm[0] * block};
      break;
    case Model::DQCK:
      for (std::size_t idx = 0; idx < m; ++idx) chain.first_indices.push_back(idx);
      scale = 1.0 / static_cast<double>(space.N() * space.W());
      break;
    case Model::HALF_BQP: {
      const std::size_t second = static_cast<std::size_t>(spec.d) + 1;
      chain.tracks_parity[0] = false;
      chain.tracks_parity[second] = false;
      for (std::size_t idx = 0; idx < m; ++idx) chain.first_indices.push_back(idx);
      chain.weighted_position = static_cast<int>(second);
      chain.pair_weight.assign(m * m, false);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t ri = perm[space.oracle_of(i)] * block + i % block;
          const std::size_t rj = perm[space.oracle_of(j)] * block + j % block;
          chain.pair_weight[ri * m + rj] = spec.accepts_pair(i, j);
        }
      }
      scale = 1.0 / static_cast<double>(m);
      break;
    }
  }
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (chain.tracks_parity[t]) apply_fixed_rows(v[t], space, fixed_value);
  }
  chain.factors = std::move(v);
  const auto acc = chain.run();

  FourierSpectrum out{static_cast<int>(free_vars), std::vector<double>(acc.size())};
  for (std::size_t s = 0; s < acc.size(); ++s) out.coeffs[s] = acc[s].real() * scale;
  return out;
}

double direct_coefficient_dqck(const AlgorithmSpec& spec, const Restriction& rho,
                               std::uint64_t mask) {
  return direct_spectrum_checked(spec, rho, Model::DQCK).coeffs.at(mask);
}

double direct_coefficient_bqp(const AlgorithmSpec& spec, const Restriction& rho,
                              std::uint64_t mask) {
  return direct_spectrum_checked(spec, rho, Model::BQP).coeffs.at(mask);
}

double direct_coefficient_half_bqp(const AlgorithmSpec& spec, const Restriction& rho,
                                   std::uint64_t mask) {
  return direct_spectrum_checked(spec, rho, Model::HALF_BQP).coeffs.at(mask);
}

}  // namespace fgrowth
