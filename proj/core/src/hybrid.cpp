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

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/models.hpp"

namespace fgrowth {

void validate(const HybridSpec& hybrid) {
  if (hybrid.nodes.empty()) throw SpecificationError("hybrid: decision tree has no nodes");
  if (hybrid.leaf_algorithms.empty()) throw SpecificationError("hybrid: no leaf algorithms");
  const AlgorithmSpec& first = hybrid.leaf_algorithms.front();
  for (const auto& leaf : hybrid.leaf_algorithms) {
    validate(leaf);
    if (leaf.model != first.model || !(leaf.space == first.space)) {
      throw SpecificationError("hybrid: leaf algorithms must share model and register sizes");
    }
  }
  const std::size_t n = first.space.N();
  std::vector<int> path;
  std::function<void(int)> walk = [&](int node_id) {
    if (node_id < 0 || static_cast<std::size_t>(node_id) >= hybrid.nodes.size()) {
      throw SpecificationError("hybrid: dangling node reference");
    }
    if (path.size() > hybrid.nodes.size()) throw SpecificationError("hybrid: cycle in tree");
    const DecisionNode& node = hybrid.nodes[node_id];
    if (node.variable < 0) {
      if (node.leaf < 0 || static_cast<std::size_t>(node.leaf) >= hybrid.leaf_algorithms.size()) {
        throw SpecificationError("hybrid: leaf " + std::to_string(node_id) +
                                 " has no algorithm");
      }
      return;
    }
    if (static_cast<std::size_t>(node.variable) >= n) {
      throw SpecificationError("hybrid: queried position out of range");
    }
    if (std::find(path.begin(), path.end(), node.variable) != path.end()) {
      throw SpecificationError("hybrid: a path queries position " +
                               std::to_string(node.variable) + " twice");
    }
    path.push_back(node.variable);
    walk(node.on_plus);
    walk(node.on_minus);
    path.pop_back();
  };
  walk(0);
}

int tree_depth(const HybridSpec& hybrid) {
  std::function<int(int)> depth = [&](int node_id) -> int {
    const DecisionNode& node = hybrid.nodes.at(node_id);
    if (node.variable < 0) return 0;
    return 1 + std::max(depth(node.on_plus), depth(node.on_minus));
  };
  return depth(0);
}

double acceptance_hybrid(const HybridSpec& hybrid, std::span<const std::int8_t> x) {
  int node_id = 0;
  for (std::size_t steps = 0; steps <= hybrid.nodes.size(); ++steps) {
    const DecisionNode& node = hybrid.nodes.at(node_id);
    if (node.variable < 0) {
      if (node.leaf < 0 || static_cast<std::size_t>(node.leaf) >= hybrid.leaf_algorithms.size()) {
        throw SpecificationError("hybrid: leaf without an algorithm");
      }
      return acceptance_direct(hybrid.leaf_algorithms[node.leaf], x);
    }
    if (static_cast<std::size_t>(node.variable) >= x.size()) {
      throw ShapeError("hybrid: queried position outside the input");
    }
    node_id = x[node.variable] > 0 ? node.on_plus : node.on_minus;
  }
  throw SpecificationError("hybrid: cycle in tree");
}

HybridSpec random_hybrid(const IndexSpace& space, int depth, int d, std::uint64_t seed) {
  if (depth < 0 || static_cast<std::size_t>(depth) > space.N()) {
    throw ParameterError("random_hybrid: depth must lie in [0, N]");
  }
  std::mt19937_64 rng(seed);
  HybridSpec hybrid;
  std::vector<int> used;
  std::function<int(int)> grow = [&](int remaining) -> int {
    const int id = static_cast<int>(hybrid.nodes.size());
    hybrid.nodes.emplace_back();
    if (remaining == 0) {
      hybrid.nodes[id].leaf = static_cast<int>(hybrid.leaf_algorithms.size());
      hybrid.leaf_algorithms.push_back(random_spec(Model::DQCK, space, d, rng()));
      return id;
    }
    std::vector<int> candidates;
    for (int v = 0; v < static_cast<int>(space.N()); ++v) {
      if (std::find(used.begin(), used.end(), v) == used.end()) candidates.push_back(v);
    }
    const int variable = candidates[rng() % candidates.size()];
    hybrid.nodes[id].variable = variable;
    used.push_back(variable);
    const int plus = grow(remaining - 1);
    const int minus = grow(remaining - 1);
    used.pop_back();
    hybrid.nodes[id].on_plus = plus;
    hybrid.nodes[id].on_minus = minus;
    return id;
  };
  grow(depth);
  validate(hybrid);
  return hybrid;
}

}  // namespace fgrowth
