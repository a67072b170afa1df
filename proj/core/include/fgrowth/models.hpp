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
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgrowth/linalg.hpp"

namespace fgrowth {

enum class Model { BQP, DQCK, HALF_BQP };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

// Partial assignment of the N oracle bits. Free coordinates keep the value of
// the input; fixed ones are overwritten.
class Restriction {
 public:
  enum class Entry : std::int8_t { MINUS = -1, STAR = 0, PLUS = 1 };

  Restriction() = default;
  explicit Restriction(std::vector<Entry> pattern) : pattern_(std::move(pattern)) {}

  static Restriction all_free(std::size_t n);
  // Parses a string over "+-*", one character per oracle position.
  static Restriction parse(std::string_view text);
  // Fixes each coordinate independently with probability p_fixed to a uniform sign.
  static Restriction random(std::size_t n, double p_fixed, std::mt19937_64& rng);

  std::size_t size() const { return pattern_.size(); }
  Entry operator[](std::size_t i) const { return pattern_[i]; }
  bool is_free(std::size_t i) const { return pattern_[i] == Entry::STAR; }
  const std::vector<Entry>& pattern() const { return pattern_; }

  // Free positions in increasing order; free variable j of the restricted
  // function is oracle position free_positions()[j].
  std::vector<std::size_t> free_positions() const;
  std::size_t free_count() const;

  // Expands an assignment of the free variables (bit j set means free
  // variable j is -1) into a full oracle input.
  SignVector expand(std::uint64_t free_mask) const;

  std::string str() const;

 private:
  std::vector<Entry> pattern_;
};

SignVector restrict(std::span<const std::int8_t> x, const Restriction& rho);

// The i-th point of {-1,1}^N in truth-table order: bit j of mask set means x_j = -1.
SignVector cube_point(std::uint64_t mask, std::size_t n);

struct AlgorithmSpec {
  Model model = Model::BQP;
  IndexSpace space{1, 0, 0};
  int d = 0;
  // U_1, ..., U_{d+1}, each M x M.
  std::vector<ComplexMatrix> unitaries;
  // Accepting basis states for BQP and DQCK, indexed by composite index.
  std::vector<bool> accept;
  // HALF_BQP predicate F(I_1, I_{d+2}), row-major M x M.
  std::vector<bool> accept_pairs;
  // Optional restriction carried by spec documents.
  std::optional<Restriction> restriction;

  bool accepts(std::size_t final_index) const { return accept[final_index]; }
  bool accepts_pair(std::size_t start, std::size_t final_index) const {
    return accept_pairs[start * space.M() + final_index];
  }
};

// Throws SpecificationError / ValidationError on any structural defect,
// including non-unitary gates (residual above 1e-9).
void validate(const AlgorithmSpec& spec);

double acceptance_direct(const AlgorithmSpec& spec, std::span<const std::int8_t> x);
double acceptance_formula(const AlgorithmSpec& spec, std::span<const std::int8_t> x);

// Same as acceptance_formula but returns the complex value of the trace or
// scalar expression, so callers can inspect its imaginary part.
Complex acceptance_formula_complex(const AlgorithmSpec& spec, std::span<const std::int8_t> x);

// The matrices V_1, V_2, ... that sit between oracle applications in the
// product form of the acceptance probability:
//   BQP       2d+1 matrices, f = <0| V_1 O V_2 O ... O V_{2d+1} |0>
//   DQCK      2d matrices,   f = Tr(V_1 O V_2 O ... V_{2d} O) / (N W)
//   HALF_BQP  2d+2 matrices, P = V_1 O ... O V_{d+1}, Q = V_{d+2} O ... O V_{2d+2},
//             f = sum_{I,J} F[I,J] P[I,J] Q[J,I] / M
std::vector<ComplexMatrix> formula_matrices(const AlgorithmSpec& spec);

double bias(double acceptance);

// Truth table of f restricted by rho, as a function of the free variables
// only (2^{free} entries).
std::vector<double> restricted_truth_table(const AlgorithmSpec& spec, const Restriction& rho,
                                           unsigned workers = 1);

// Random instance with Haar unitaries and a uniformly random accepting set.
AlgorithmSpec random_spec(Model model, const IndexSpace& space, int d, std::uint64_t seed);

// Converts a DQC(k) algorithm into a DQC(k - t) algorithm whose bias is the
// original bias times 2^{-t-1}.
//
// Layout of the result: workspace = [original workspace | t+1 flag-source
// qubits | coin qubit], clean = [first k-t-1 original clean qubits | flag].
// The flag-source qubits stand in for the last t+1 original clean qubits.
AlgorithmSpec reduce_clean_qubits(const AlgorithmSpec& spec, int t);

// Classical decision tree over oracle positions whose leaves select a quantum
// algorithm to run on the same input.
struct DecisionNode {
  // Oracle position queried at this node; -1 marks a leaf.
  int variable = -1;
  // Children taken when the queried bit is +1 or -1.
  int on_plus = -1;
  int on_minus = -1;
  // Index into HybridSpec::leaf_algorithms for leaves.
  int leaf = -1;
};

struct HybridSpec {
  // nodes[0] is the root.
  std::vector<DecisionNode> nodes;
  std::vector<AlgorithmSpec> leaf_algorithms;
};

void validate(const HybridSpec& hybrid);
int tree_depth(const HybridSpec& hybrid);
double acceptance_hybrid(const HybridSpec& hybrid, std::span<const std::int8_t> x);

// Complete tree of the given depth over distinct random positions, with a
// random DQC(k) leaf algorithm of d queries at every leaf.
HybridSpec random_hybrid(const IndexSpace& space, int depth, int d, std::uint64_t seed);

// JSON algorithm-spec documents.
AlgorithmSpec spec_from_json(std::string_view text);
std::string spec_to_json(const AlgorithmSpec& spec);
AlgorithmSpec load_spec(const std::string& path);

}  // namespace fgrowth
