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

#include "fgrowth/forrelation.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/limits.hpp"
#include "json.hpp"

namespace fgrowth {

void validate(const ForrelationInstance& inst) {
  if (inst.k < 1) throw ParameterError("forrelation: k must be positive");
  if (inst.n < 1 || inst.n > kMaxTruthTableVars) throw DimensionError("forrelation: n out of range");
  if (inst.blocks.size() != static_cast<std::size_t>(inst.k)) {
    throw ShapeError("forrelation: expected k blocks");
  }
  for (const auto& b : inst.blocks) {
    if (b.size() != inst.N()) throw ShapeError("forrelation: block length differs from N");
  }
}

namespace {

void normalized_hadamard(std::vector<double>& v) {
  walsh_hadamard(v);
  const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (double& a : v) a *= scale;
}

void apply_signs(std::vector<double>& v, const SignVector& x) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= x[i];
}

}  // namespace

double forr(const ForrelationInstance& inst) {
  validate(inst);
  if (inst.n > 12) throw ResourceError("forr: n above 12");
  std::vector<double> v(inst.N(), 0.0);
  v[0] = 1.0;
  normalized_hadamard(v);
  for (int b = inst.k - 1; b >= 0; --b) {
    apply_signs(v, inst.blocks[b]);
    normalized_hadamard(v);
  }
  return v[0];
}

double forr_matrix_product(const ForrelationInstance& inst) {
  validate(inst);
  if (inst.n > 12) throw ResourceError("forr: n above 12");
  const ComplexMatrix h = hadamard_matrix(inst.n);
  const IndexSpace space(inst.n, 0, 0);
  ComplexMatrix product = h;
  for (const auto& block : inst.blocks) {
    product = product * phase_oracle(block, space) * h;
  }
  return product(0, 0).real();
}

std::string_view to_string(ForrelationLabel label) {
  switch (label) {
    case ForrelationLabel::MINUS_ONE: return "MINUS_ONE";
    case ForrelationLabel::PLUS_ONE: return "PLUS_ONE";
    case ForrelationLabel::GAP: return "GAP";
  }
  return "?";
}

ForrelationLabel classify(double forr_value, double eps) {
  if (!(eps > 0.0)) throw ParameterError("classify: eps must be positive");
  if (forr_value >= 2.0 * eps) return ForrelationLabel::MINUS_ONE;
  if (forr_value <= eps) return ForrelationLabel::PLUS_ONE;
  return ForrelationLabel::GAP;
}

ForrelationLabel classify(const ForrelationInstance& inst, double eps) {
  return classify(forr(inst), eps);
}

double default_eps(int k, std::size_t n_oracle) {
  if (n_oracle < 4) throw ParameterError("default_eps: N must be at least 4");
  return std::pow(std::log2(static_cast<double>(n_oracle)), -k);
}

ForrelationInstance random_instance(int k, int n, std::mt19937_64& rng) {
  ForrelationInstance inst{k, n, {}};
  for (int b = 0; b < k; ++b) {
    SignVector x(inst.N());
    for (auto& v : x) v = (rng() & 1) ? -1 : 1;
    inst.blocks.push_back(std::move(x));
  }
  validate(inst);
  return inst;
}

ForrelationInstance forrelated_instance(int k, int n, std::mt19937_64& rng) {
  ForrelationInstance inst = random_instance(k, n, rng);
  std::vector<double> u(inst.N(), 0.0);
  u[0] = 1.0;
  normalized_hadamard(u);
  for (int b = 0; b + 1 < k; ++b) {
    apply_signs(u, inst.blocks[b]);
    normalized_hadamard(u);
  }
  for (std::size_t i = 0; i < inst.N(); ++i) inst.blocks.back()[i] = u[i] < 0.0 ? -1 : 1;
  return inst;
}

std::string instance_to_json(const ForrelationInstance& inst) {
  nlohmann::ordered_json doc;
  doc["k"] = inst.k;
  doc["n"] = inst.n;
  auto blocks = nlohmann::ordered_json::array();
  for (const auto& b : inst.blocks) {
    auto row = nlohmann::ordered_json::array();
    for (auto v : b) row.push_back(static_cast<int>(v));
    blocks.push_back(std::move(row));
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump();
}

ForrelationInstance instance_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ForrelationInstance inst{doc.at("k").get<int>(), doc.at("n").get<int>(), {}};
    for (const auto& row : doc.at("blocks")) {
      SignVector b;
      for (const auto& v : row) {
        const int value = v.get<int>();
        if (value != 1 && value != -1) throw ShapeError("forrelation: block entries must be +1 or -1");
        b.push_back(static_cast<std::int8_t>(value));
      }
      inst.blocks.push_back(std::move(b));
    }
    validate(inst);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw SpecificationError(std::string("forrelation: malformed instance: ") + e.what());
  }
}

namespace {

int ceil_log2(int value) {
  int bits = 0;
  while ((1 << bits) < value) ++bits;
  return bits;
}

// Register geometry of the Hadamard-test circuit.
struct TestLayout {
  int n;
  int blocks;
  int slot_bits;
  std::size_t N() const { return std::size_t{1} << n; }
  std::size_t slots() const { return std::size_t{1} << slot_bits; }
  IndexSpace space() const { return IndexSpace(1 + slot_bits + n, 0, 1); }

  struct Basis {
    std::size_t control, slot, i, clean;
  };
  Basis split(std::size_t flat) const {
    const std::size_t p = flat >> 1;
    return {p / (slots() * N()), (p / N()) % slots(), p % N(), flat & 1};
  }
  std::size_t join(const Basis& b) const {
    return (((b.control * slots() + b.slot) * N() + b.i) << 1) | b.clean;
  }
  std::size_t input_position(std::size_t block, std::size_t i) const {
    return (slots() + block) * N() + i;
  }
};

using ColumnImage = std::function<void(std::size_t, const std::function<void(std::size_t, double)>&)>;

ComplexMatrix build_gate(std::size_t m, const ColumnImage& image) {
  ComplexMatrix g = ComplexMatrix::Zero(m, m);
  for (std::size_t c = 0; c < m; ++c) {
    image(c, [&](std::size_t r, double amp) { g(r, c) += amp; });
  }
  return g;
}

BlockCircuit hadamard_test_circuit(int n, int blocks) {
  if (n < 1) throw DimensionError("hadamard test circuit: n must be positive");
  if (blocks < 1) throw ParameterError("hadamard test circuit: need at least one block");
  const TestLayout layout{n, blocks, ceil_log2(blocks)};
  const IndexSpace space = layout.space();
  const std::size_t m = space.M();
  if (m * m > kMaxDenseEntries) throw ResourceError("hadamard test circuit: register too large");
  const double r2 = M_SQRT1_2;
  const ComplexMatrix h = hadamard_matrix(n);

  const ComplexMatrix h_clean = build_gate(m, [&](std::size_t c, const auto& emit) {
    auto b = layout.split(c);
    const double sign = b.clean ? -r2 : r2;
    b.clean = 0;
    emit(layout.join(b), r2);
    b.clean = 1;
    emit(layout.join(b), sign);
  });
  const ComplexMatrix controlled_h = build_gate(m, [&](std::size_t c, const auto& emit) {
    auto b = layout.split(c);
    if (b.clean == 0 || b.slot >= static_cast<std::size_t>(blocks)) {
      emit(c, 1.0);
      return;
    }
    const std::size_t i = b.i;
    for (std::size_t out = 0; out < layout.N(); ++out) {
      b.i = out;
      emit(layout.join(b), h(out, i).real());
    }
  });
  const ComplexMatrix swap = build_gate(m, [&](std::size_t c, const auto& emit) {
    auto b = layout.split(c);
    std::swap(b.control, b.clean);
    emit(layout.join(b), 1.0);
  });
  const ComplexMatrix shift = build_gate(m, [&](std::size_t c, const auto& emit) {
    auto b = layout.split(c);
    b.slot = (b.slot + layout.slots() - 1) % layout.slots();
    emit(layout.join(b), 1.0);
  });

  BlockCircuit circuit;
  circuit.blocks = blocks;
  circuit.n = n;
  AlgorithmSpec& spec = circuit.spec;
  spec.model = Model::DQCK;
  spec.space = space;
  spec.d = static_cast<int>(layout.slots());
  spec.unitaries.push_back(swap * controlled_h * h_clean);
  for (int s = 1; s < spec.d; ++s) spec.unitaries.push_back(swap * controlled_h * shift * swap);
  spec.unitaries.push_back(h_clean * shift * swap);
  spec.accept.resize(m);
  for (std::size_t idx = 0; idx < m; ++idx) spec.accept[idx] = (idx & 1) == 0;

  std::vector<Restriction::Entry> pattern(space.N(), Restriction::Entry::PLUS);
  for (int b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < layout.N(); ++i) {
      pattern[layout.input_position(b, i)] = Restriction::Entry::STAR;
    }
  }
  circuit.restriction = Restriction(std::move(pattern));
  spec.restriction = circuit.restriction;
  validate(spec);
  return circuit;
}

}  // namespace

SignVector BlockCircuit::embed(const std::vector<SignVector>& x) const {
  if (x.size() != static_cast<std::size_t>(blocks)) throw ShapeError("embed: wrong block count");
  SignVector full(spec.space.N(), 1);
  const std::size_t block_len = std::size_t{1} << n;
  const auto free = restriction.free_positions();
  for (int b = 0; b < blocks; ++b) {
    if (x[b].size() != block_len) throw ShapeError("embed: block length differs from N");
    for (std::size_t i = 0; i < block_len; ++i) full[free[b * block_len + i]] = x[b][i];
  }
  return full;
}

double BlockCircuit::acceptance(const std::vector<SignVector>& x) const {
  return acceptance_direct(spec, embed(x));
}

FourierSpectrum BlockCircuit::spectrum(unsigned workers) const {
  return restricted_spectrum(spec, restriction, workers);
}

BlockCircuit trace_circuit(int k, int n) {
  if (k < 1) throw ParameterError("trace_circuit: k must be positive");
  return hadamard_test_circuit(n, k);
}

BlockCircuit tightness_circuit(int n, int d) {
  if (n < 1 || d < 1) throw ParameterError("tightness_circuit: n and d must be positive");
  if (static_cast<std::size_t>(d) * (std::size_t{1} << n) > static_cast<std::size_t>(kMaxTruthTableVars)) {
    throw ResourceError("tightness_circuit: d * N exceeds the 20-bit truth-table cap");
  }
  return hadamard_test_circuit(n, d);
}

double trace_expression(const std::vector<SignVector>& blocks, int n) {
  const ComplexMatrix h = hadamard_matrix(n);
  const IndexSpace space(n, 0, 0);
  ComplexMatrix product = ComplexMatrix::Identity(h.rows(), h.cols());
  for (const auto& x : blocks) product = product * phase_oracle(x, space) * h;
  return 0.5 + product.trace().real() / (2.0 * static_cast<double>(space.N()));
}

}  // namespace fgrowth
