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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fgrowth/models.hpp"

namespace fgrowth {

// Multilinear coefficients of a real function on {-1,1}^N, indexed by subset
// bitmask (bit j set means variable j belongs to S).
struct FourierSpectrum {
  int num_vars = 0;
  std::vector<double> coeffs;

  double operator[](std::uint64_t mask) const { return coeffs[mask]; }
};

using CubeFunction = std::function<double(std::span<const std::int8_t>)>;

// In-place unnormalized Walsh-Hadamard transform; data.size() must be a power of two.
void walsh_hadamard(std::span<double> data);

// Truth table order: entry b is f at the point where x_j = -1 iff bit j of b is set.
FourierSpectrum spectrum_from_table(std::vector<double> table, int num_vars);
FourierSpectrum spectrum(const CubeFunction& f, int num_vars, unsigned workers = 1);
std::vector<double> truth_table(const FourierSpectrum& sp);

// Spectrum of the acceptance probability restricted by rho, over the free
// variables in increasing position order.
FourierSpectrum restricted_spectrum(const AlgorithmSpec& spec, const Restriction& rho,
                                    unsigned workers = 1);

// Coefficients of f restricted by rho, as a function of all N variables:
// fixed variables are folded into the coefficients of free subsets.
FourierSpectrum restrict_spectrum(const FourierSpectrum& sp, const Restriction& rho);

double growth(const FourierSpectrum& sp, int level);
double parseval_gap(const FourierSpectrum& sp, std::span<const double> table);

class SignFamily {
 public:
  enum class Kind { GENERIC, ALPHA_GAMMA, BETA_GAMMA };

  static SignFamily generic(int level, std::map<std::uint64_t, double> values);
  static SignFamily alpha(std::vector<double> gamma);
  static SignFamily beta(std::vector<double> gamma);
  static SignFamily from_json(const std::string& text);

  Kind kind() const { return kind_; }
  int level() const { return level_; }
  const std::vector<double>& gamma() const { return gamma_; }
  std::size_t block_size() const { return gamma_.size() / 3; }

  // Sign attached to the subset; zero for subsets outside the family's support.
  double value(std::uint64_t mask) const;

 private:
  SignFamily(Kind kind, int level) : kind_(kind), level_(level) {}

  Kind kind_;
  int level_;
  std::map<std::uint64_t, double> values_;
  std::vector<double> gamma_;
};

// Signed growth: sum over |S| = level of signs(S) * coeffs[S].
double signed_growth(const FourierSpectrum& sp, const SignFamily& signs);

double alpha_gamma(const SignFamily& signs, std::uint64_t mask);
double beta_gamma(const SignFamily& signs, std::uint64_t mask);

// Ceilings on level-l growth.
double binomial(int n, int r);
double bqp_ceiling(int d, int level, std::size_t n_oracle);
double dqck_ceiling(int d, int level, std::size_t n_oracle, int k);
double hybrid_ceiling(int d, int level, std::size_t n_oracle, int k);

// Direct-summation coefficient oracles. Each enumerates every index tuple of
// the product form once and returns the whole spectrum of f restricted by rho,
// over the free variables in increasing position order. Free coordinates are
// first relabeled to a prefix of the oracle register.
FourierSpectrum direct_spectrum(const AlgorithmSpec& spec, const Restriction& rho);
double direct_coefficient_dqck(const AlgorithmSpec& spec, const Restriction& rho,
                               std::uint64_t mask);
double direct_coefficient_bqp(const AlgorithmSpec& spec, const Restriction& rho,
                              std::uint64_t mask);
double direct_coefficient_half_bqp(const AlgorithmSpec& spec, const Restriction& rho,
                                   std::uint64_t mask);

// Permutation of oracle positions sending the free coordinates of rho, in
// order, to 0, 1, ..., followed by the fixed ones.
std::vector<std::size_t> free_prefix_permutation(const Restriction& rho);

// Conjugates a composite-space matrix by the oracle relabeling perm
// (position p moves to perm[p]).
ComplexMatrix relabel_oracle(const ComplexMatrix& a, const IndexSpace& space,
                             std::span<const std::size_t> perm);

std::string spectrum_csv(const FourierSpectrum& sp, double threshold = 0.0);
std::string spectrum_json(const FourierSpectrum& sp, double threshold = 0.0);

}  // namespace fgrowth
