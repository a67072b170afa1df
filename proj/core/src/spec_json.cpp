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

#include <fstream>
#include <sstream>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/models.hpp"
#include "json.hpp"

namespace fgrowth {

namespace {

using nlohmann::json;

ComplexMatrix parse_unitary(const json& node, std::size_t m, int qubits) {
  const std::string kind = node.value("kind", "explicit");
  if (kind == "identity") return ComplexMatrix::Identity(m, m);
  if (kind == "hadamard") return hadamard_matrix(qubits);
  if (kind == "haar") return random_unitary(m, node.at("seed").get<std::uint64_t>());
  if (kind != "explicit") throw SpecificationError("unknown unitary kind '" + kind + "'");
  const json& rows = node.at("rows");
  if (rows.size() != m) throw SpecificationError("explicit unitary must have M rows");
  ComplexMatrix u(m, m);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != m) throw SpecificationError("explicit unitary must have M columns");
    for (std::size_t c = 0; c < m; ++c) {
      const json& entry = rows[r][c];
      if (entry.is_number()) {
        u(r, c) = entry.get<double>();
      } else {
        u(r, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
      }
    }
  }
  return u;
}

}  // namespace

AlgorithmSpec spec_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecificationError(std::string("spec document is not valid JSON: ") + e.what());
  }
  try {
    AlgorithmSpec spec;
    spec.model = parse_model(doc.at("model").get<std::string>());
    spec.space = IndexSpace(doc.at("n").get<int>(), doc.value("w", 0), doc.value("k", 0));
    spec.d = doc.at("d").get<int>();
    const std::size_t m = spec.space.M();
    const int qubits = spec.space.n() + spec.space.w() + spec.space.k();
    for (const json& node : doc.at("unitaries")) {
      spec.unitaries.push_back(parse_unitary(node, m, qubits));
    }
    const json& accept = doc.at("accept");
    if (spec.model == Model::HALF_BQP) {
      if (accept.size() != m) throw SpecificationError("HALF_BQP accept must be M rows");
      spec.accept_pairs.assign(m * m, false);
      for (std::size_t r = 0; r < m; ++r) {
        if (accept[r].size() != m) throw SpecificationError("HALF_BQP accept rows must have M entries");
        for (std::size_t c = 0; c < m; ++c) spec.accept_pairs[r * m + c] = accept[r][c].get<int>() != 0;
      }
    } else {
      spec.accept.assign(m, false);
      for (const json& idx : accept) {
        const auto j = idx.get<std::size_t>();
        if (j >= m) throw SpecificationError("accepting index out of range");
        spec.accept[j] = true;
      }
    }
    if (doc.contains("restriction")) {
      spec.restriction = Restriction::parse(doc.at("restriction").get<std::string>());
    }
    validate(spec);
    return spec;
  } catch (const json::exception& e) {
    throw SpecificationError(std::string("malformed spec document: ") + e.what());
  }
}

std::string spec_to_json(const AlgorithmSpec& spec) {
  json doc;
  doc["model"] = std::string(to_string(spec.model));
  doc["n"] = spec.space.n();
  doc["w"] = spec.space.w();
  doc["k"] = spec.space.k();
  doc["d"] = spec.d;
  json unitaries = json::array();
  for (const auto& u : spec.unitaries) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < u.cols(); ++c) row.push_back({u(r, c).real(), u(r, c).imag()});
      rows.push_back(std::move(row));
    }
    unitaries.push_back({{"kind", "explicit"}, {"rows", std::move(rows)}});
  }
  doc["unitaries"] = std::move(unitaries);
  const std::size_t m = spec.space.M();
  if (spec.model == Model::HALF_BQP) {
    json rows = json::array();
    for (std::size_t r = 0; r < m; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < m; ++c) row.push_back(spec.accepts_pair(r, c) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    doc["accept"] = std::move(rows);
  } else {
    json list = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      if (spec.accepts(j)) list.push_back(j);
    }
    doc["accept"] = std::move(list);
  }
  if (spec.restriction) doc["restriction"] = spec.restriction->str();
  return doc.dump(2);
}

AlgorithmSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecificationError("cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return spec_from_json(buffer.str());
}

}  // namespace fgrowth
