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

#include "fgrowth/fourier.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "fgrowth/errors.hpp"
#include "fgrowth/limits.hpp"
#include "fgrowth/parallel.hpp"
#include "json.hpp"

namespace fgrowth {

void walsh_hadamard(std::span<double> data) {
  const std::size_t size = data.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw ShapeError("walsh_hadamard: length must be a power of two");
  }
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t base = 0; base < size; base += 2 * half) {
      for (std::size_t j = base; j < base + half; ++j) {
        const double a = data[j];
        const double b = data[j + half];
        data[j] = a + b;
        data[j + half] = a - b;
      }
    }
  }
}

FourierSpectrum spectrum_from_table(std::vector<double> table, int num_vars) {
  if (num_vars < 0 || num_vars > kMaxTruthTableVars) {
    throw ResourceError("spectrum: " + std::to_string(num_vars) + " variables exceeds the 2^20 cap");
  }
  if (table.size() != (std::size_t{1} << num_vars)) {
    throw ShapeError("spectrum: truth table has the wrong length");
  }
  walsh_hadamard(table);
  const double scale = std::ldexp(1.0, -num_vars);
  for (double& c : table) c *= scale;
  return FourierSpectrum{num_vars, std::move(table)};
}

FourierSpectrum spectrum(const CubeFunction& f, int num_vars, unsigned workers) {
  if (num_vars < 0 || num_vars > kMaxTruthTableVars) {
    throw ResourceError("spectrum: " + std::to_string(num_vars) + " variables exceeds the 2^20 cap");
  }
  std::vector<double> table(std::size_t{1} << num_vars);
  parallel_for(table.size(), workers, [&](std::size_t mask) {
    table[mask] = f(cube_point(mask, static_cast<std::size_t>(num_vars)));
  });
  return spectrum_from_table(std::move(table), num_vars);
}

std::vector<double> truth_table(const FourierSpectrum& sp) {
  std::vector<double> table = sp.coeffs;
  walsh_hadamard(table);
  return table;
}

FourierSpectrum restricted_spectrum(const AlgorithmSpec& spec, const Restriction& rho,
                                    unsigned workers) {
  auto table = restricted_truth_table(spec, rho, workers);
  return spectrum_from_table(std::move(table), static_cast<int>(rho.free_count()));
}

FourierSpectrum restrict_spectrum(const FourierSpectrum& sp, const Restriction& rho) {
  if (rho.size() != static_cast<std::size_t>(sp.num_vars)) {
    throw ShapeError("restrict_spectrum: restriction length differs from variable count");
  }
  std::uint64_t free_mask = 0;
  std::uint64_t minus_mask = 0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho.is_free(j)) free_mask |= std::uint64_t{1} << j;
    if (rho[j] == Restriction::Entry::MINUS) minus_mask |= std::uint64_t{1} << j;
  }
  FourierSpectrum out{sp.num_vars, std::vector<double>(sp.coeffs.size(), 0.0)};
  for (std::uint64_t mask = 0; mask < sp.coeffs.size(); ++mask) {
    const std::uint64_t fixed_part = mask & ~free_mask;
    const double sign = parity(fixed_part & minus_mask) ? -1.0 : 1.0;
    out.coeffs[mask & free_mask] += sign * sp.coeffs[mask];
  }
  return out;
}

double growth(const FourierSpectrum& sp, int level) {
  if (level < 0 || level > sp.num_vars) throw ParameterError("growth: level out of range");
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < sp.coeffs.size(); ++mask) {
    if (std::popcount(mask) == level) total += std::abs(sp.coeffs[mask]);
  }
  return total;
}

double parseval_gap(const FourierSpectrum& sp, std::span<const double> table) {
  double energy = 0.0;
  for (double c : sp.coeffs) energy += c * c;
  double mean_square = 0.0;
  for (double v : table) mean_square += v * v;
  mean_square /= static_cast<double>(table.size());
  return std::abs(energy - mean_square);
}

SignFamily SignFamily::generic(int level, std::map<std::uint64_t, double> values) {
  SignFamily s(Kind::GENERIC, level);
  for (const auto& [mask, v] : values) {
    if (std::popcount(mask) != level) {
      throw SpecificationError("sign family: subset size differs from the level");
    }
    if (!(std::abs(v) <= 1.0)) throw SpecificationError("sign family: value outside [-1, 1]");
  }
  s.values_ = std::move(values);
  return s;
}

namespace {

void check_gamma(const std::vector<double>& gamma) {
  if (gamma.empty() || gamma.size() % 3 != 0) {
    throw SpecificationError("sign family: gamma length must be a positive multiple of 3");
  }
  const std::size_t block = gamma.size() / 3;
  if ((block & (block - 1)) != 0) {
    throw SpecificationError("sign family: block size must be a power of two");
  }
  for (double g : gamma) {
    if (!(std::abs(g) <= 1.0)) throw SpecificationError("sign family: gamma outside [-1, 1]");
  }
}

double hbar(std::size_t a, std::size_t b) { return parity(a & b) ? -1.0 : 1.0; }

// Splits a subset into its members per block; false if some block does not
// hold exactly `per_block` members.
bool split_blocks(std::uint64_t mask, std::size_t block, std::size_t per_block,
                  std::array<std::array<std::size_t, 2>, 3>& members) {
  std::array<std::size_t, 3> counts{};
  while (mask != 0) {
    const auto pos = static_cast<std::size_t>(std::countr_zero(mask));
    mask &= mask - 1;
    const std::size_t b = pos / block;
    if (b >= 3 || counts[b] >= per_block) return false;
    members[b][counts[b]++] = pos;
  }
  return counts[0] == per_block && counts[1] == per_block && counts[2] == per_block;
}

double alpha_tuple(const std::vector<double>& gamma, std::size_t block, std::size_t i1,
                   std::size_t i2, std::size_t i3) {
  const std::size_t a = i1 % block;
  const std::size_t b = i2 % block;
  const std::size_t c = i3 % block;
  return hbar(b, a) * hbar(b, c) * gamma[i1] * gamma[i2] * gamma[i3];
}

}  // namespace

SignFamily SignFamily::alpha(std::vector<double> gamma) {
  check_gamma(gamma);
  SignFamily s(Kind::ALPHA_GAMMA, 3);
  s.gamma_ = std::move(gamma);
  return s;
}

SignFamily SignFamily::beta(std::vector<double> gamma) {
  check_gamma(gamma);
  SignFamily s(Kind::BETA_GAMMA, 6);
  s.gamma_ = std::move(gamma);
  return s;
}

SignFamily SignFamily::from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "alpha") return alpha(doc.at("gamma").get<std::vector<double>>());
    if (kind == "beta") return beta(doc.at("gamma").get<std::vector<double>>());
    if (kind == "generic") {
      std::map<std::uint64_t, double> values;
      for (const auto& entry : doc.at("values")) {
        std::uint64_t mask = 0;
        for (const auto& v : entry.at("subset")) mask |= std::uint64_t{1} << v.get<unsigned>();
        values[mask] = entry.at("sign").get<double>();
      }
      return generic(doc.at("level").get<int>(), std::move(values));
    }
    throw SpecificationError("sign family: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw SpecificationError(std::string("sign family: malformed document: ") + e.what());
  }
}

double SignFamily::value(std::uint64_t mask) const {
  switch (kind_) {
    case Kind::GENERIC: {
      const auto it = values_.find(mask);
      return it == values_.end() ? 0.0 : it->second;
    }
    case Kind::ALPHA_GAMMA: return alpha_gamma(*this, mask);
    case Kind::BETA_GAMMA: return beta_gamma(*this, mask);
  }
  return 0.0;
}

double alpha_gamma(const SignFamily& signs, std::uint64_t mask) {
  if (signs.kind() != SignFamily::Kind::ALPHA_GAMMA) {
    throw SpecificationError("alpha_gamma: sign family has the wrong kind");
  }
  if (std::popcount(mask) != 3) return 0.0;
  std::array<std::array<std::size_t, 2>, 3> m{};
  if (!split_blocks(mask, signs.block_size(), 1, m)) return 0.0;
  return alpha_tuple(signs.gamma(), signs.block_size(), m[0][0], m[1][0], m[2][0]);
}

double beta_gamma(const SignFamily& signs, std::uint64_t mask) {
  if (signs.kind() != SignFamily::Kind::BETA_GAMMA) {
    throw SpecificationError("beta_gamma: sign family has the wrong kind");
  }
  if (std::popcount(mask) != 6) return 0.0;
  std::array<std::array<std::size_t, 2>, 3> m{};
  if (!split_blocks(mask, signs.block_size(), 2, m)) return 0.0;
  // Members come out in increasing order, giving the canonical tuple
  // i1 < i4, i2 < i5, i3 < i6.
  const auto& g = signs.gamma();
  const std::size_t block = signs.block_size();
  return alpha_tuple(g, block, m[0][0], m[1][0], m[2][0]) *
         alpha_tuple(g, block, m[0][1], m[1][1], m[2][1]);
}

double signed_growth(const FourierSpectrum& sp, const SignFamily& signs) {
  const int level = signs.level();
  if (level < 0 || level > sp.num_vars) {
    throw SpecificationError("signed_growth: sign level exceeds the variable count");
  }
  if (signs.kind() != SignFamily::Kind::GENERIC &&
      signs.gamma().size() != static_cast<std::size_t>(sp.num_vars)) {
    throw SpecificationError("signed_growth: gamma length differs from the variable count");
  }
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < sp.coeffs.size(); ++mask) {
    if (std::popcount(mask) == level) total += signs.value(mask) * sp.coeffs[mask];
  }
  return total;
}

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return std::round(out);
}

double bqp_ceiling(int d, int level, std::size_t n_oracle) {
  return binomial(2 * d, level) * std::pow(static_cast<double>(n_oracle), (level - 1) / 2.0);
}

double dqck_ceiling(int d, int level, std::size_t n_oracle, int k) {
  if (level < 2) return bqp_ceiling(d, level, n_oracle);
  const double n = static_cast<double>(n_oracle);
  return std::min(std::pow(2.0, k / 2.0), std::sqrt(n)) * binomial(2 * d, level) *
         std::pow(n, (level - 2) / 2.0);
}

double hybrid_ceiling(int d, int level, std::size_t n_oracle, int k) {
  if (level < 2) throw ParameterError("hybrid ceiling is stated for levels >= 2");
  const double n = static_cast<double>(n_oracle);
  return binomial(3 * d, level) * std::pow(n, (level - 2) / 2.0) *
         std::min(std::pow(2.0, k / 2.0), std::sqrt(n));
}

std::string spectrum_csv(const FourierSpectrum& sp, double threshold) {
  std::string out = "mask,subset,coefficient\n";
  char buf[64];
  for (std::uint64_t mask = 0; mask < sp.coeffs.size(); ++mask) {
    if (std::abs(sp.coeffs[mask]) <= threshold) continue;
    std::string subset;
    for (int j = 0; j < sp.num_vars; ++j) {
      if ((mask >> j) & 1) {
        if (!subset.empty()) subset += ' ';
        subset += std::to_string(j + 1);
      }
    }
    std::snprintf(buf, sizeof buf, "%.15g", sp.coeffs[mask]);
    out += std::to_string(mask) + ",{" + subset + "}," + buf + "\n";
  }
  return out;
}

std::string spectrum_json(const FourierSpectrum& sp, double threshold) {
  nlohmann::ordered_json doc;
  doc["num_vars"] = sp.num_vars;
  auto rows = nlohmann::ordered_json::array();
  for (std::uint64_t mask = 0; mask < sp.coeffs.size(); ++mask) {
    if (std::abs(sp.coeffs[mask]) <= threshold) continue;
    rows.push_back({{"mask", mask}, {"coefficient", sp.coeffs[mask]}});
  }
  doc["coefficients"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace fgrowth
