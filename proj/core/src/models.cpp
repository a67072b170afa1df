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

#include "fgrowth/models.hpp"

#include <cmath>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/limits.hpp"
#include "fgrowth/parallel.hpp"

namespace fgrowth {

namespace {

void scale_columns(std::span<const std::int8_t> x, const IndexSpace& space, ComplexMatrix& a) {
  const std::size_t block = space.W() * space.K();
  for (std::size_t i = 0; i < space.N(); ++i) {
    if (x[i] < 0) a.middleCols(i * block, block) *= -1.0;
  }
}

void check_input(const AlgorithmSpec& spec, std::span<const std::int8_t> x) {
  if (x.size() != spec.space.N()) {
    throw ShapeError("input has length " + std::to_string(x.size()) + ", expected " +
                     std::to_string(spec.space.N()));
  }
}

// Applies U_{d+1} O U_d ... O U_1 to the columns of `state`.
ComplexMatrix evolve(const AlgorithmSpec& spec, std::span<const std::int8_t> x,
                     ComplexMatrix state) {
  for (int t = 0; t < spec.d; ++t) {
    state = spec.unitaries[t] * state;
    apply_phase_rows(x, spec.space, state);
  }
  return spec.unitaries[spec.d] * state;
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::BQP: return "BQP";
    case Model::DQCK: return "DQCK";
    case Model::HALF_BQP: return "HALF_BQP";
  }
  return "?";
}

Model parse_model(std::string_view text) {
  if (text == "BQP" || text == "bqp") return Model::BQP;
  if (text == "DQCK" || text == "dqck" || text == "DQC" || text == "dqc") return Model::DQCK;
  if (text == "HALF_BQP" || text == "half_bqp" || text == "half-bqp") return Model::HALF_BQP;
  throw ParameterError("unknown model '" + std::string(text) + "'");
}

Restriction Restriction::all_free(std::size_t n) {
  return Restriction(std::vector<Entry>(n, Entry::STAR));
}

Restriction Restriction::parse(std::string_view text) {
  std::vector<Entry> pattern;
  pattern.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '+': pattern.push_back(Entry::PLUS); break;
      case '-': pattern.push_back(Entry::MINUS); break;
      case '*': pattern.push_back(Entry::STAR); break;
      default:
        throw ParameterError(std::string("restriction: unexpected character '") + c + "'");
    }
  }
  return Restriction(std::move(pattern));
}

Restriction Restriction::random(std::size_t n, double p_fixed, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Entry> pattern(n, Entry::STAR);
  for (auto& e : pattern) {
    if (unit(rng) < p_fixed) e = (rng() & 1) ? Entry::MINUS : Entry::PLUS;
  }
  return Restriction(std::move(pattern));
}

std::vector<std::size_t> Restriction::free_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    if (is_free(i)) out.push_back(i);
  }
  return out;
}

std::size_t Restriction::free_count() const {
  std::size_t count = 0;
  for (auto e : pattern_) count += e == Entry::STAR;
  return count;
}

SignVector Restriction::expand(std::uint64_t free_mask) const {
  SignVector x(pattern_.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    if (is_free(i)) {
      x[i] = ((free_mask >> j) & 1) ? -1 : 1;
      ++j;
    } else {
      x[i] = static_cast<std::int8_t>(pattern_[i]);
    }
  }
  return x;
}

std::string Restriction::str() const {
  std::string s;
  for (auto e : pattern_) s.push_back(e == Entry::STAR ? '*' : e == Entry::PLUS ? '+' : '-');
  return s;
}

SignVector restrict(std::span<const std::int8_t> x, const Restriction& rho) {
  if (x.size() != rho.size()) throw ShapeError("restrict: length mismatch");
  SignVector out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!rho.is_free(i)) out[i] = static_cast<std::int8_t>(rho[i]);
  }
  return out;
}

SignVector cube_point(std::uint64_t mask, std::size_t n) {
  SignVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = ((mask >> j) & 1) ? -1 : 1;
  return x;
}

void validate(const AlgorithmSpec& spec) {
  const std::size_t m = spec.space.M();
  if (spec.d < 0) throw SpecificationError("query count must be non-negative");
  if (spec.model == Model::DQCK && spec.space.k() < 1) {
    throw SpecificationError("DQCK requires at least one clean qubit");
  }
  if (spec.model != Model::DQCK && spec.space.k() != 0) {
    throw SpecificationError(std::string(to_string(spec.model)) + " uses k = 0");
  }
  if (m * m > kMaxDenseEntries) throw ResourceError("composite dimension too large");
  if (spec.unitaries.size() != static_cast<std::size_t>(spec.d) + 1) {
    throw SpecificationError("expected d + 1 = " + std::to_string(spec.d + 1) +
                             " unitaries, got " + std::to_string(spec.unitaries.size()));
  }
  for (std::size_t t = 0; t < spec.unitaries.size(); ++t) {
    const auto& u = spec.unitaries[t];
    if (static_cast<std::size_t>(u.rows()) != m || static_cast<std::size_t>(u.cols()) != m) {
      throw SpecificationError("unitary " + std::to_string(t + 1) + " is not " +
                               std::to_string(m) + " x " + std::to_string(m));
    }
    if (!u.allFinite()) throw ValidationError("unitary " + std::to_string(t + 1) + " has non-finite entries");
    const double residual = unitarity_residual(u);
    if (residual > 1e-9) {
      throw ValidationError("unitary " + std::to_string(t + 1) + " has unitarity residual " +
                            std::to_string(residual));
    }
  }
  if (spec.model == Model::HALF_BQP) {
    if (spec.accept_pairs.size() != m * m) {
      throw SpecificationError("HALF_BQP accepting predicate must be M x M");
    }
  } else if (spec.accept.size() != m) {
    throw SpecificationError("accepting set must have M entries");
  }
  if (spec.restriction && spec.restriction->size() != spec.space.N()) {
    throw SpecificationError("restriction length differs from N");
  }
}

double acceptance_direct(const AlgorithmSpec& spec, std::span<const std::int8_t> x) {
  check_input(spec, x);
  const IndexSpace& s = spec.space;
  const std::size_t m = s.M();
  switch (spec.model) {
    case Model::BQP: {
      ComplexMatrix start = ComplexMatrix::Zero(m, 1);
      start(0, 0) = 1.0;
      const ComplexMatrix psi = evolve(spec, x, std::move(start));
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (spec.accepts(j)) total += std::norm(psi(j, 0));
      }
      return total;
    }
    case Model::DQCK: {
      const std::size_t starts = s.N() * s.W();
      ComplexMatrix block = ComplexMatrix::Zero(m, starts);
      for (std::size_t c = 0; c < starts; ++c) block(c * s.K(), c) = 1.0;
      const ComplexMatrix psi = evolve(spec, x, std::move(block));
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (spec.accepts(j)) total += psi.row(j).squaredNorm();
      }
      return total / static_cast<double>(starts);
    }
    case Model::HALF_BQP: {
      const ComplexMatrix psi = evolve(spec, x, ComplexMatrix::Identity(m, m));
      double total = 0.0;
      for (std::size_t start = 0; start < m; ++start) {
        for (std::size_t j = 0; j < m; ++j) {
          if (spec.accepts_pair(start, j)) total += std::norm(psi(j, start));
        }
      }
      return total / static_cast<double>(m);
    }
  }
  throw SpecificationError("unknown model");
}

std::vector<ComplexMatrix> formula_matrices(const AlgorithmSpec& spec) {
  const int d = spec.d;
  const std::size_t m = spec.space.M();
  const auto& u = spec.unitaries;
  auto projector = [&](auto&& member) {
    ComplexMatrix p = ComplexMatrix::Zero(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      if (member(j)) p(j, j) = 1.0;
    }
    return p;
  };
  const ComplexMatrix pi_accept = spec.model == Model::HALF_BQP
                                      ? ComplexMatrix()
                                      : projector([&](std::size_t j) { return spec.accepts(j); });
  std::vector<ComplexMatrix> v;
  switch (spec.model) {
    case Model::BQP:
      for (int t = 0; t < d; ++t) v.push_back(u[t].adjoint());
      v.push_back(u[d].adjoint() * pi_accept * u[d]);
      for (int t = d - 1; t >= 0; --t) v.push_back(u[t]);
      break;
    case Model::DQCK: {
      const std::size_t clean = spec.space.K();
      const ComplexMatrix pi_start = projector([&](std::size_t j) { return j % clean == 0; });
      if (d == 0) {
        v.push_back(u[0] * pi_start * u[0].adjoint() * pi_accept);
        break;
      }
      v.push_back(u[0] * pi_start * u[0].adjoint());
      for (int t = 1; t < d; ++t) v.push_back(u[t].adjoint());
      v.push_back(u[d].adjoint() * pi_accept * u[d]);
      for (int t = d - 1; t >= 1; --t) v.push_back(u[t]);
      break;
    }
    case Model::HALF_BQP:
      for (int t = 0; t <= d; ++t) v.push_back(u[t].adjoint());
      for (int t = d; t >= 0; --t) v.push_back(u[t]);
      break;
  }
  return v;
}

Complex acceptance_formula_complex(const AlgorithmSpec& spec, std::span<const std::int8_t> x) {
  check_input(spec, x);
  const IndexSpace& s = spec.space;
  const std::size_t m = s.M();
  const auto v = formula_matrices(spec);
  const int d = spec.d;
  switch (spec.model) {
    case Model::BQP: {
      ComplexMatrix row = v[0].topRows(1);
      for (std::size_t t = 1; t < v.size(); ++t) {
        scale_columns(x, s, row);
        row = row * v[t];
      }
      return row(0, 0);
    }
    case Model::DQCK: {
      if (d == 0) return v[0].trace() / static_cast<double>(s.N() * s.W());
      ComplexMatrix p = v[0];
      for (std::size_t t = 1; t < v.size(); ++t) {
        scale_columns(x, s, p);
        p = p * v[t];
      }
      scale_columns(x, s, p);
      return p.trace() / static_cast<double>(s.N() * s.W());
    }
    case Model::HALF_BQP: {
      auto chain = [&](std::size_t first, std::size_t last) {
        ComplexMatrix p = v[first];
        for (std::size_t t = first + 1; t <= last; ++t) {
          scale_columns(x, s, p);
          p = p * v[t];
        }
        return p;
      };
      const ComplexMatrix p = chain(0, d);
      const ComplexMatrix q = chain(d + 1, 2 * d + 1);
      Complex total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          if (spec.accepts_pair(i, j)) total += p(i, j) * q(j, i);
        }
      }
      return total / static_cast<double>(m);
    }
  }
  throw SpecificationError("unknown model");
}

double acceptance_formula(const AlgorithmSpec& spec, std::span<const std::int8_t> x) {
  return acceptance_formula_complex(spec, x).real();
}

double bias(double acceptance) { return 2.0 * acceptance - 1.0; }

std::vector<double> restricted_truth_table(const AlgorithmSpec& spec, const Restriction& rho,
                                           unsigned workers) {
  if (rho.size() != spec.space.N()) throw ShapeError("restriction length differs from N");
  const std::size_t free = rho.free_count();
  if (free > static_cast<std::size_t>(kMaxTruthTableVars)) {
    throw ResourceError("truth table over " + std::to_string(free) + " variables exceeds 2^20");
  }
  std::vector<double> table(std::size_t{1} << free);
  parallel_for(table.size(), workers, [&](std::size_t mask) {
    table[mask] = acceptance_direct(spec, rho.expand(mask));
  });
  return table;
}

AlgorithmSpec random_spec(Model model, const IndexSpace& space, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AlgorithmSpec spec;
  spec.model = model;
  spec.space = space;
  spec.d = d;
  const std::size_t m = space.M();
  for (int t = 0; t <= d; ++t) spec.unitaries.push_back(random_unitary(m, rng()));
  if (model == Model::HALF_BQP) {
    spec.accept_pairs.resize(m * m);
    for (std::size_t i = 0; i < m * m; ++i) spec.accept_pairs[i] = rng() & 1;
  } else {
    spec.accept.resize(m);
    for (std::size_t i = 0; i < m; ++i) spec.accept[i] = rng() & 1;
  }
  validate(spec);
  return spec;
}

}  // namespace fgrowth
