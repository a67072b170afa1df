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

#include "fgrowth/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/limits.hpp"
#include "fgrowth/parallel.hpp"
#include "json.hpp"

namespace fgrowth {

bool DecompositionSpec::ignores(int t) const {
  return std::find(ignored.begin(), ignored.end(), t) != ignored.end();
}

std::size_t AugmentedCodec::size() const {
  std::size_t s = outer << parity_bits;
  for (int j = 0; j < eq_slots + mem_slots; ++j) s *= radix;
  return s;
}

std::size_t AugmentedCodec::encode(const AugmentedIndex& idx) const {
  std::size_t flat = (idx.composite << parity_bits) | idx.parity;
  for (int j = 0; j < eq_slots; ++j) flat = flat * radix + idx.equality[j];
  for (int j = 0; j < mem_slots; ++j) flat = flat * radix + idx.memory[j];
  return flat;
}

AugmentedIndex AugmentedCodec::decode(std::size_t flat) const {
  AugmentedIndex idx;
  idx.memory.resize(mem_slots);
  idx.equality.resize(eq_slots);
  for (int j = mem_slots - 1; j >= 0; --j) {
    idx.memory[j] = static_cast<std::uint32_t>(flat % radix);
    flat /= radix;
  }
  for (int j = eq_slots - 1; j >= 0; --j) {
    idx.equality[j] = static_cast<std::uint32_t>(flat % radix);
    flat /= radix;
  }
  idx.parity = flat & ((std::uint64_t{1} << parity_bits) - 1);
  idx.composite = flat >> parity_bits;
  return idx;
}

SparseFactor::SparseFactor(AugmentedCodec rows, AugmentedCodec cols)
    : rows_(rows), cols_(cols), offsets_{0} {}

void SparseFactor::push(std::size_t row, std::size_t col, Complex value) {
  while (offsets_.size() < row + 2) offsets_.push_back(col_index_.size());
  col_index_.push_back(col);
  values_.push_back(value);
  offsets_.back() = col_index_.size();
}

void SparseFactor::finish() {
  while (offsets_.size() < rows() + 1) offsets_.push_back(col_index_.size());
}

Complex SparseFactor::at(std::size_t row, std::size_t col) const {
  for (std::size_t e = offsets_[row]; e < offsets_[row + 1]; ++e) {
    if (col_index_[e] == col) return values_[e];
  }
  return 0.0;
}

ComplexMatrix SparseFactor::dense() const {
  if (rows() * cols() > kMaxDenseEntries) throw ResourceError("factor too large to densify");
  ComplexMatrix out = ComplexMatrix::Zero(rows(), cols());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) out(r, col_index_[e]) += values_[e];
  }
  return out;
}

std::vector<SparseFactor::Block> SparseFactor::blocks() const {
  const std::size_t nr = rows();
  std::vector<std::size_t> parent(nr + cols());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<bool> touched(nr + cols(), false);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) {
      const std::size_t c = nr + col_index_[e];
      touched[r] = touched[c] = true;
      const std::size_t a = find(r);
      const std::size_t b = find(c);
      if (a != b) parent[a] = b;
    }
  }
  std::vector<std::size_t> slot(nr + cols(), SIZE_MAX);
  std::vector<Block> out;
  for (std::size_t v = 0; v < nr + cols(); ++v) {
    if (!touched[v]) continue;
    const std::size_t root = find(v);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.size();
      out.emplace_back();
    }
    Block& b = out[slot[root]];
    if (v < nr) {
      b.rows.push_back(v);
    } else {
      b.cols.push_back(v - nr);
    }
  }
  return out;
}

ComplexMatrix SparseFactor::block_matrix(const Block& b) const {
  ComplexMatrix out = ComplexMatrix::Zero(b.rows.size(), b.cols.size());
  for (std::size_t i = 0; i < b.rows.size(); ++i) {
    const std::size_t r = b.rows[i];
    for (std::size_t e = offsets_[r]; e < offsets_[r + 1]; ++e) {
      const auto it = std::lower_bound(b.cols.begin(), b.cols.end(), col_index_[e]);
      out(i, it - b.cols.begin()) += values_[e];
    }
  }
  return out;
}

double SparseFactor::operator_norm() const {
  double best = 0.0;
  for (const Block& b : blocks()) best = std::max(best, fgrowth::operator_norm(block_matrix(b)));
  return best;
}

ComplexMatrix SparseFactor::right_multiply(const ComplexMatrix& left) const {
  if (static_cast<std::size_t>(left.cols()) != rows()) {
    throw ShapeError("right_multiply: inner dimensions differ");
  }
  if (static_cast<std::size_t>(left.rows()) * cols() > kMaxDenseEntries) {
    throw ResourceError("augmented product too large to materialize");
  }
  ComplexMatrix out = ComplexMatrix::Zero(left.rows(), cols());
  for (Eigen::Index r = 0; r < left.rows(); ++r) {
    for (std::size_t k = 0; k < rows(); ++k) {
      const Complex a = left(r, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t e = offsets_[k]; e < offsets_[k + 1]; ++e) {
        out(r, col_index_[e]) += a * values_[e];
      }
    }
  }
  return out;
}

std::uint64_t update(std::uint64_t parity, std::size_t oracle, int t,
                     const DecompositionSpec& spec) {
  if (t < 2 || t > spec.d() || spec.ignores(t)) return parity;
  if (oracle >= static_cast<std::size_t>(spec.n_tilde)) return parity;
  return parity ^ (std::uint64_t{1} << oracle);
}

void validate(const DecompositionSpec& spec) {
  const int d = spec.d();
  if (d < 1) throw SpecificationError("decomposition: need at least one matrix");
  const std::size_t m = spec.M();
  if (spec.oracle_dim == 0 || m % spec.oracle_dim != 0) {
    throw SpecificationError("decomposition: oracle dimension must divide M");
  }
  if (spec.n_tilde < 0 || static_cast<std::size_t>(spec.n_tilde) > spec.oracle_dim ||
      spec.n_tilde > kMaxTruthTableVars) {
    throw SpecificationError("decomposition: n_tilde must lie in [0, min(N, 20)]");
  }
  for (int t : spec.ignored) {
    if (t < 1 || t > d) throw SpecificationError("decomposition: ignored time out of range");
  }
  std::vector<int> times;
  for (auto [s, t] : spec.equality_pairs) {
    if (!(2 <= s && s < t && t <= d)) {
      throw ValidationError("decomposition: equality pair must satisfy 2 <= s < t <= d");
    }
    times.push_back(s);
    times.push_back(t);
  }
  for (int r : spec.memory_indices) {
    if (r < 2 || r > d) throw ValidationError("decomposition: memory index must lie in [2, d]");
    times.push_back(r);
  }
  std::sort(times.begin(), times.end());
  if (std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw ValidationError("decomposition: constraint times must be all distinct");
  }
  for (int t = 0; t < d; ++t) {
    const auto& u = spec.matrices[t];
    if (static_cast<std::size_t>(u.rows()) != m || static_cast<std::size_t>(u.cols()) != m) {
      throw SpecificationError("decomposition: matrices must all be M x M");
    }
    if (!u.allFinite()) throw ValidationError("decomposition: non-finite matrix entry");
    const double norm = operator_norm(u);
    if (norm > 1.0 + 1e-9) {
      throw ValidationError("decomposition: matrix " + std::to_string(t + 1) +
                            " has operator norm " + std::to_string(norm) + " > 1");
    }
  }
}

namespace {

// Register transition of one step; returns false when the step is forbidden.
bool step_registers(const DecompositionSpec& spec, int t, std::size_t i_t, std::size_t i_next,
                    std::vector<std::uint32_t>& eq, std::vector<std::uint32_t>& mem) {
  const auto value = static_cast<std::uint32_t>(i_t + 1);
  for (std::size_t j = 0; j < spec.memory_indices.size(); ++j) {
    if (spec.memory_indices[j] != t) continue;
    if (mem[j] != 0) return false;
    mem[j] = value;
  }
  for (std::size_t j = 0; j < spec.equality_pairs.size(); ++j) {
    if (spec.equality_pairs[j].first != t) continue;
    if (eq[j] != 0) return false;
    eq[j] = value;
  }
  for (std::size_t j = 0; j < spec.equality_pairs.size(); ++j) {
    if (spec.equality_pairs[j].second != t + 1) continue;
    if (eq[j] != i_next + 1) return false;
    eq[j] = 0;
  }
  return true;
}

SparseFactor build_factor(const DecompositionSpec& spec, int t, const AugmentedCodec& rows,
                          const AugmentedCodec& cols) {
  const std::size_t m = spec.M();
  const std::size_t p = spec.equality_pairs.size();
  const std::size_t q = spec.memory_indices.size();
  const ComplexMatrix& u = spec.matrices[t - 1];
  SparseFactor factor(rows, cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    AugmentedIndex row = rows.decode(r);
    row.equality.resize(p, 0);
    row.memory.resize(q, 0);
    const std::size_t i_t = spec.oracle_of(row.composite);
    const std::uint64_t next_parity = update(row.parity, i_t, t, spec);
    for (std::size_t j = 0; j < m; ++j) {
      const Complex entry = u(row.composite, j);
      if (entry == Complex(0.0)) continue;
      AugmentedIndex col{j, next_parity, row.equality, row.memory};
      if (!step_registers(spec, t, i_t, spec.oracle_of(j), col.equality, col.memory)) continue;
      if (cols.eq_slots == 0 &&
          std::any_of(col.equality.begin(), col.equality.end(), [](auto v) { return v != 0; })) {
        continue;
      }
      if (cols.mem_slots == 0 &&
          std::any_of(col.memory.begin(), col.memory.end(), [](auto v) { return v != 0; })) {
        continue;
      }
      if (cols.parity_bits == 0 && col.parity != 0) continue;
      factor.push(r, cols.encode(col), entry);
    }
  }
  factor.finish();
  return factor;
}

void check_augmented_size(const DecompositionSpec& spec) {
  const double dim = static_cast<double>(spec.M()) * std::ldexp(1.0, spec.n_tilde) *
                     std::pow(static_cast<double>(spec.oracle_dim + 1),
                              static_cast<double>(spec.equality_pairs.size() +
                                                  spec.memory_indices.size()));
  if (dim > static_cast<double>(kMaxAugmentedDim)) {
    throw ResourceError("augmented dimension " + std::to_string(dim) + " exceeds 65536");
  }
}

AugmentedMatrix assemble(const DecompositionSpec& spec, const std::vector<AugmentedCodec>& rows,
                         const std::vector<AugmentedCodec>& cols) {
  AugmentedMatrix out;
  for (int t = 1; t <= spec.d(); ++t) {
    out.factors.push_back(build_factor(spec, t, rows[t - 1], cols[t - 1]));
  }
  out.product = out.factors[0].dense();
  for (std::size_t t = 1; t < out.factors.size(); ++t) {
    out.product = out.factors[t].right_multiply(out.product);
  }
  out.row_codec = rows.front();
  out.col_codec = cols.back();
  return out;
}

}  // namespace

AugmentedMatrix decompose(const DecompositionSpec& spec) {
  validate(spec);
  if (!spec.equality_pairs.empty() || !spec.memory_indices.empty()) {
    throw SpecificationError("decompose: use decompose_improved for equality or memory constraints");
  }
  check_augmented_size(spec);
  const std::size_t m = spec.M();
  const std::size_t radix = spec.oracle_dim + 1;
  const AugmentedCodec plain{m, 0, 0, 0, radix};
  const AugmentedCodec tracked{m, spec.n_tilde, 0, 0, radix};
  std::vector<AugmentedCodec> rows(spec.d(), tracked);
  std::vector<AugmentedCodec> cols(spec.d(), tracked);
  rows[0] = plain;
  return assemble(spec, rows, cols);
}

AugmentedMatrix decompose_improved(const DecompositionSpec& spec) {
  validate(spec);
  check_augmented_size(spec);
  const std::size_t m = spec.M();
  const std::size_t radix = spec.oracle_dim + 1;
  const int p = static_cast<int>(spec.equality_pairs.size());
  const int q = static_cast<int>(spec.memory_indices.size());
  const AugmentedCodec full{m, spec.n_tilde, p, q, radix};
  std::vector<AugmentedCodec> rows(spec.d(), full);
  std::vector<AugmentedCodec> cols(spec.d(), full);
  rows.front() = AugmentedCodec{m, spec.n_tilde, 0, 0, radix};
  cols.back() = AugmentedCodec{m, spec.n_tilde, 0, q, radix};
  return assemble(spec, rows, cols);
}

namespace {

// Visits every (I_2, ..., I_d) with a nonzero product and passing equality
// constraints, reporting the product, the final parity (from S_1 = empty) and
// the recorded memory values.
void enumerate_paths(const DecompositionSpec& spec, std::size_t i1, std::size_t i_end,
                     const std::function<void(Complex, std::uint64_t,
                                              std::span<const std::uint32_t>)>& visit) {
  const int d = spec.d();
  const std::size_t m = spec.M();
  const double terms = std::pow(static_cast<double>(m), d - 1);
  if (terms > static_cast<double>(kMaxEnumeratedTerms)) {
    throw ResourceError("brute force would enumerate " + std::to_string(terms) + " terms");
  }
  std::vector<std::size_t> idx(d + 2, 0);
  idx[1] = i1;
  idx[d + 1] = i_end;
  std::vector<std::uint32_t> memory(spec.memory_indices.size());
  const auto total = static_cast<std::uint64_t>(terms);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (int t = 2; t <= d; ++t) {
      idx[t] = rest % m;
      rest /= m;
    }
    Complex value = 1.0;
    for (int t = 1; t <= d && value != Complex(0.0); ++t) value *= spec.matrices[t - 1](idx[t], idx[t + 1]);
    if (value == Complex(0.0)) continue;
    bool equal = true;
    for (auto [s, t] : spec.equality_pairs) {
      equal = equal && spec.oracle_of(idx[s]) == spec.oracle_of(idx[t]);
    }
    if (!equal) continue;
    std::uint64_t parity = 0;
    for (int t = 2; t <= d; ++t) {
      if (spec.ignores(t)) continue;
      const std::size_t i = spec.oracle_of(idx[t]);
      if (i < static_cast<std::size_t>(spec.n_tilde)) parity ^= std::uint64_t{1} << i;
    }
    for (std::size_t j = 0; j < memory.size(); ++j) {
      memory[j] = static_cast<std::uint32_t>(spec.oracle_of(idx[spec.memory_indices[j]]) + 1);
    }
    visit(value, parity, memory);
  }
}

}  // namespace

Complex brute_force_entry(const DecompositionSpec& spec, std::size_t i1, std::size_t i_end,
                          std::uint64_t s_end, std::span<const std::uint32_t> b_end,
                          std::uint64_t s1) {
  if (b_end.size() != spec.memory_indices.size()) {
    throw ShapeError("brute_force_entry: memory register has the wrong length");
  }
  Complex total = 0.0;
  enumerate_paths(spec, i1, i_end,
                  [&](Complex value, std::uint64_t parity, std::span<const std::uint32_t> memory) {
                    if ((s1 ^ parity) != s_end) return;
                    if (!std::equal(memory.begin(), memory.end(), b_end.begin())) return;
                    total += value;
                  });
  return total;
}

std::string VerifyReport::to_json(std::uint64_t seed) const {
  nlohmann::ordered_json doc;
  doc["lemma"] = lemma;
  doc["seed"] = seed;
  doc["max_deviation"] = max_deviation;
  doc["max_factor_norm"] = max_factor_norm;
  doc["product_frobenius"] = product_frobenius;
  doc["min_input_frobenius"] = min_input_frobenius;
  doc["entries_pass"] = entries_pass;
  doc["norms_pass"] = norms_pass;
  doc["frobenius_pass"] = frobenius_pass;
  doc["pass"] = pass();
  return doc.dump(2);
}

VerifyReport verify(const DecompositionSpec& spec, unsigned workers) {
  validate(spec);
  const bool improved = !spec.equality_pairs.empty() || !spec.memory_indices.empty();
  const AugmentedMatrix aug = improved ? decompose_improved(spec) : decompose(spec);
  const std::size_t m = spec.M();
  const std::size_t parity_sets = std::size_t{1} << spec.n_tilde;
  const AugmentedCodec mem_codec{1, 0, 0, static_cast<int>(spec.memory_indices.size()),
                                 spec.oracle_dim + 1};
  const std::size_t mem_states = mem_codec.size();

  VerifyReport report;
  report.lemma = improved ? "improved" : "basic";
  std::vector<double> deviation(m, 0.0);
  parallel_for(m, workers, [&](std::size_t i1) {
    std::vector<Complex> block(parity_sets * mem_states);
    double worst = 0.0;
    for (std::size_t i_end = 0; i_end < m; ++i_end) {
      std::fill(block.begin(), block.end(), Complex(0.0));
      enumerate_paths(spec, i1, i_end,
                      [&](Complex value, std::uint64_t parity, std::span<const std::uint32_t> memory) {
                        AugmentedIndex key{0, 0, {}, {memory.begin(), memory.end()}};
                        block[parity * mem_states + mem_codec.encode(key)] += value;
                      });
      const std::size_t row_sets = improved ? parity_sets : 1;
      for (std::size_t s1 = 0; s1 < row_sets; ++s1) {
        const std::size_t row = aug.row_codec.encode({i1, s1, {}, {}});
        for (std::size_t s_end = 0; s_end < parity_sets; ++s_end) {
          for (std::size_t b = 0; b < mem_states; ++b) {
            AugmentedIndex col{i_end, s_end, {}, mem_codec.decode(b).memory};
            const Complex expected = block[(s_end ^ s1) * mem_states + b];
            worst = std::max(worst, std::abs(aug.product(row, aug.col_codec.encode(col)) - expected));
          }
        }
      }
    }
    deviation[i1] = worst;
  });
  report.max_deviation = *std::max_element(deviation.begin(), deviation.end());

  for (const auto& f : aug.factors) {
    report.max_factor_norm = std::max(report.max_factor_norm, f.operator_norm());
  }
  if (improved) {
    double sq = 0.0;
    for (std::size_t i1 = 0; i1 < m; ++i1) {
      sq += aug.product.row(aug.row_codec.encode({i1, 0, {}, {}})).squaredNorm();
    }
    report.product_frobenius = std::sqrt(sq);
  } else {
    report.product_frobenius = frobenius_norm(aug.product);
  }
  report.min_input_frobenius = frobenius_norm(spec.matrices[0]);
  for (const auto& u : spec.matrices) {
    report.min_input_frobenius = std::min(report.min_input_frobenius, frobenius_norm(u));
  }
  report.entries_pass = report.max_deviation <= 1e-9;
  report.norms_pass = report.max_factor_norm <= 1.0 + 1e-9;
  report.frobenius_pass = within_bound(report.product_frobenius, report.min_input_frobenius);
  return report;
}

FourierSpectrum spectrum_via_decomposition(const AlgorithmSpec& spec, const Restriction& rho) {
  if (spec.model != Model::DQCK) {
    throw SpecificationError("spectrum_via_decomposition: expects a DQC(k) trace-form circuit");
  }
  if (spec.d < 1) throw SpecificationError("spectrum_via_decomposition: needs at least one query");
  const IndexSpace& space = spec.space;
  if (rho.size() != space.N()) throw ShapeError("restriction length differs from N");
  const auto perm = free_prefix_permutation(rho);
  const std::size_t free_vars = rho.free_count();
  const std::size_t block = space.W() * space.K();

  DecompositionSpec dspec;
  dspec.oracle_dim = space.N();
  dspec.n_tilde = static_cast<int>(free_vars);
  for (auto v : formula_matrices(spec)) {
    v = relabel_oracle(v, space, perm);
    for (std::size_t p = 0; p < rho.size(); ++p) {
      if (!rho.is_free(p) && rho[p] == Restriction::Entry::MINUS) {
        v.middleRows(perm[p] * block, block) *= -1.0;
      }
    }
    dspec.matrices.push_back(std::move(v));
  }
  const AugmentedMatrix aug = decompose(dspec);

  const std::size_t m = space.M();
  const double scale = 1.0 / static_cast<double>(space.N() * space.W());
  FourierSpectrum out{static_cast<int>(free_vars), std::vector<double>(std::size_t{1} << free_vars, 0.0)};
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    const std::size_t oracle = space.oracle_of(i1);
    const std::uint64_t own = oracle < free_vars ? std::uint64_t{1} << oracle : 0;
    for (std::uint64_t s = 0; s < out.coeffs.size(); ++s) {
      out.coeffs[s] += scale * aug.product(i1, aug.col_codec.encode({i1, s ^ own, {}, {}})).real();
    }
  }
  return out;
}

DecompositionSpec random_decomposition_spec(std::size_t oracle_dim, std::size_t aux_dim, int d,
                                            int n_tilde, int eq_pairs, int mem_indices,
                                            std::uint64_t seed) {
  if (d < 1) throw ParameterError("random_decomposition_spec: d must be positive");
  if (2 * eq_pairs + mem_indices > d - 1) {
    throw ParameterError("random_decomposition_spec: not enough distinct times in [2, d]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = oracle_dim * aux_dim;
  DecompositionSpec spec;
  spec.oracle_dim = oracle_dim;
  spec.n_tilde = n_tilde;
  for (int t = 0; t < d; ++t) {
    const ComplexMatrix left = random_unitary(m, rng());
    const ComplexMatrix right = random_unitary(m, rng());
    ComplexMatrix scaled = left;
    const bool contraction = rng() & 1;
    for (std::size_t c = 0; c < m; ++c) scaled.col(c) *= contraction ? unit(rng) : 1.0;
    spec.matrices.push_back(scaled * right);
  }
  for (int t = 1; t <= d; ++t) {
    if (rng() & 1) spec.ignored.push_back(t);
  }
  std::vector<int> times;
  for (int t = 2; t <= d; ++t) times.push_back(t);
  std::shuffle(times.begin(), times.end(), rng);
  std::size_t next = 0;
  for (int j = 0; j < eq_pairs; ++j) {
    const int a = times[next++];
    const int b = times[next++];
    spec.equality_pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  for (int j = 0; j < mem_indices; ++j) spec.memory_indices.push_back(times[next++]);
  return spec;
}

}  // namespace fgrowth
