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

namespace fgrowth {

// Central size caps shared by every module and the command-line harness.
inline constexpr int kMaxTruthTableVars = 20;
inline constexpr std::size_t kMaxAugmentedDim = 65536;
inline constexpr std::uint64_t kMaxEnumeratedTerms = 10'000'000;
inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 25;

// lhs <= rhs up to the floating-point slack used for every certified bound.
inline constexpr bool within_bound(double lhs, double rhs) {
  return lhs <= rhs * (1.0 + 1e-9) + 1e-9;
}

}  // namespace fgrowth
