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

// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Exit status is nonzero when any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fgrowth/decomposition.hpp"
#include "fgrowth/forrelation.hpp"
#include "fgrowth/fourier.hpp"
#include "fgrowth/limits.hpp"
#include "fgrowth/models.hpp"
#include "fgrowth/parallel.hpp"

namespace fgrowth {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

SignVector random_signs(std::size_t n, std::mt19937_64& rng) {
  SignVector x(n);
  for (auto& v : x) v = (rng() & 1) ? -1 : 1;
  return x;
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome decomposition_correctness() {
  std::mt19937_64 rng(101);
  double deviation = 0.0;
  double norm = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t oracle_dim = pick(rng, 0, 1) ? 4 : 2;
    const std::size_t aux_dim = pick(rng, 0, 1) ? 2 : 1;
    const int d = pick(rng, 1, 4);
    const int n_tilde = pick(rng, 0, static_cast<int>(std::min<std::size_t>(4, oracle_dim)));
    const int p = pick(rng, 0, std::min(2, (d - 1) / 2));
    const int q = pick(rng, 0, std::min(2, d - 1 - 2 * p));
    const auto spec = random_decomposition_spec(oracle_dim, aux_dim, d, n_tilde, p, q, rng());
    const VerifyReport report = verify(spec, default_workers());
    deviation = std::max(deviation, report.max_deviation);
    norm = std::max(norm, report.max_factor_norm);
    if (!report.pass()) ++failures;
  }
  return {failures == 0, format("50 specs, max entry deviation %.3g, max factor norm %.12f, %d failing",
                                deviation, norm, failures)};
}

Outcome formula_equivalence() {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  double worst_imag = 0.0;
  bool in_range = true;
  for (Model model : {Model::BQP, Model::DQCK, Model::HALF_BQP}) {
    for (int trial = 0; trial < 50; ++trial) {
      const int k = model == Model::DQCK ? pick(rng, 1, 2) : 0;
      const IndexSpace space(pick(rng, 1, 2), pick(rng, 0, 1), k);
      const AlgorithmSpec spec = random_spec(model, space, pick(rng, 1, 3), rng());
      const SignVector x = random_signs(space.N(), rng);
      const double direct = acceptance_direct(spec, x);
      const Complex formula = acceptance_formula_complex(spec, x);
      worst = std::max(worst, std::abs(direct - formula.real()));
      worst_imag = std::max(worst_imag, std::abs(formula.imag()));
      in_range = in_range && direct >= -1e-9 && direct <= 1.0 + 1e-9;
    }
  }
  return {worst <= 1e-9 && worst_imag <= 1e-9 && in_range,
          format("150 pairs, max |formula - direct| %.3g, max imaginary part %.3g", worst, worst_imag)};
}

// Growth of restricted spectra against a ceiling for every level listed.
Outcome ceiling_harness(Model model, std::vector<int> levels, std::uint64_t seed,
                        const std::function<double(const AlgorithmSpec&, int)>& ceiling) {
  std::mt19937_64 rng(seed);
  int violations = 0;
  int checks = 0;
  double tightest = 0.0;
  for (int trial = 0; trial < 25; ++trial) {
    const int k = model == Model::DQCK ? pick(rng, 1, 2) : 0;
    const IndexSpace space(pick(rng, 2, 3), pick(rng, 0, 1), k);
    const AlgorithmSpec spec = random_spec(model, space, pick(rng, 1, 2), rng());
    for (int r = 0; r < 5; ++r) {
      const Restriction rho =
          r == 0 ? Restriction::all_free(space.N()) : Restriction::random(space.N(), 0.4, rng);
      const auto sp = restricted_spectrum(spec, rho, default_workers());
      for (int level : levels) {
        if (level > sp.num_vars) continue;
        const double observed = growth(sp, level);
        const double bound = ceiling(spec, level);
        ++checks;
        if (bound > 0.0) tightest = std::max(tightest, observed / bound);
        if (!within_bound(observed, bound)) ++violations;
      }
    }
  }
  return {violations == 0,
          format("%d checks, %d violations, largest observed/ceiling %.4f", checks, violations, tightest)};
}

Outcome dqck_ceiling_check() {
  return ceiling_harness(Model::DQCK, {2, 3}, 303, [](const AlgorithmSpec& s, int level) {
    return dqck_ceiling(s.d, level, s.space.N(), s.space.k());
  });
}

Outcome bqp_ceiling_check() {
  return ceiling_harness(Model::BQP, {1, 2, 3}, 404, [](const AlgorithmSpec& s, int level) {
    return bqp_ceiling(s.d, level, s.space.N());
  });
}

Outcome tightness() {
  const int n = 2;
  const int d = 3;
  const double size = 4.0;
  const auto sp = tightness_circuit(n, d).spectrum(default_workers());
  const double magnitude = 1.0 / (2.0 * size * std::pow(size, d / 2.0));
  std::size_t nonzero = 0;
  bool magnitudes = true;
  for (std::uint64_t s = 1; s < sp.coeffs.size(); ++s) {
    if (std::abs(sp[s]) <= 1e-12) continue;
    ++nonzero;
    magnitudes = magnitudes && std::abs(std::abs(sp[s]) - magnitude) <= 1e-12;
  }
  const double level3 = growth(sp, 3);
  const double target = std::pow(size, d / 2.0 - 1.0) / 2.0;
  return {std::abs(level3 - target) <= 1e-9 && nonzero == 64 && magnitudes,
          format("level-3 growth %.12f (target %.1f), %zu nonzero coefficients of magnitude 1/64: %s",
                 level3, target, nonzero, magnitudes ? "yes" : "no")};
}

Outcome clean_qubit_reduction() {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  int evaluations = 0;
  for (int t = 1; t <= 2; ++t) {
    const double factor = std::ldexp(1.0, -t - 1);
    for (int trial = 0; trial < 4; ++trial) {
      const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(2, 0, 3), pick(rng, 1, 2), rng());
      const AlgorithmSpec reduced = reduce_clean_qubits(spec, t);
      for (std::uint64_t mask = 0; mask < 16; ++mask) {
        const SignVector x = cube_point(mask, 4);
        const double before = bias(acceptance_direct(spec, x));
        const double after = bias(acceptance_direct(reduced, x));
        worst = std::max(worst, std::abs(after - factor * before));
        ++evaluations;
      }
    }
  }
  return {worst <= 1e-9, format("%d inputs over t in {1,2}, max |bias' - 2^(-t-1) bias| %.3g",
                                evaluations, worst)};
}

Outcome oracle_agreement() {
  std::mt19937_64 rng(707);
  double direct_gap = 0.0;
  double decomposition_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const AlgorithmSpec spec = random_spec(Model::DQCK, IndexSpace(1, 0, 1), 2, rng());
    const Restriction rho = trial < 10 ? Restriction::all_free(2) : Restriction::random(2, 0.5, rng);
    const auto wht = restricted_spectrum(spec, rho);
    const auto direct = direct_spectrum(spec, rho);
    const auto decomposed = spectrum_via_decomposition(spec, rho);
    for (std::uint64_t s = 0; s < wht.coeffs.size(); ++s) {
      direct_gap = std::max(direct_gap, std::abs(direct[s] - wht[s]));
      decomposition_gap = std::max(decomposition_gap, std::abs(decomposed[s] - wht[s]));
    }
  }
  return {direct_gap <= 1e-8 && decomposition_gap <= 1e-8,
          format("20 instances (M=4, d=2), max gap direct %.3g, decomposition %.3g", direct_gap,
                 decomposition_gap)};
}

Outcome signed_growth_sanity() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int violations = 0;
  int alpha_pairs = 0;
  int beta_pairs = 0;
  std::string ratios;
  // Oracle sizes 4, 8, 16 leave 3, 6, 12 free inputs in three blocks; the rest is fixed to +1.
  for (int n = 2; n <= 4; ++n) {
    const std::size_t oracle = std::size_t{1} << n;
    const std::size_t free_vars = 3 * (oracle / 4);
    const std::string pattern = std::string(free_vars, '*') + std::string(oracle - free_vars, '+');
    const Restriction rho = Restriction::parse(pattern);
    const int specs = n == 2 ? 12 : (n == 3 ? 16 : 8);
    double largest_ratio = 0.0;
    for (int trial = 0; trial < specs; ++trial) {
      const int d = pick(rng, 1, 2);
      const AlgorithmSpec spec = random_spec(Model::HALF_BQP, IndexSpace(n, 0, 0), d, rng());
      const auto sp = restricted_spectrum(spec, rho, default_workers());
      const double l3 = growth(sp, 3);
      const double l6 = sp.num_vars >= 6 ? growth(sp, 6) : 0.0;
      for (int g = 0; g < 5; ++g) {
        std::vector<double> gamma(free_vars);
        for (auto& v : gamma) v = unit(rng);
        const double alpha = signed_growth(sp, SignFamily::alpha(gamma));
        if (!within_bound(std::abs(alpha), l3)) ++violations;
        if (sp.num_vars >= 6) {
          const double beta = signed_growth(sp, SignFamily::beta(gamma));
          if (!within_bound(std::abs(beta), l6)) ++violations;
          ++beta_pairs;
        }
        ++alpha_pairs;
        largest_ratio = std::max(largest_ratio, std::abs(alpha) / (d * d * d * std::sqrt(double(oracle))));
      }
    }
    ratios += format(" N=%zu:%.4g", oracle, largest_ratio);
  }
  return {violations == 0 && alpha_pairs >= 100 && beta_pairs >= 100,
          format("%d alpha pairs, %d beta pairs, %d violations; max |alpha growth|/(d^3 sqrt N)%s",
                 alpha_pairs, beta_pairs, violations, ratios.c_str())};
}

Outcome hybrid_bound() {
  std::mt19937_64 rng(909);
  int violations = 0;
  double tightest = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = pick(rng, 2, 3);
    const int k = pick(rng, 1, 2);
    const int d = pick(rng, 1, 2);
    const int depth = pick(rng, 0, d);
    const IndexSpace space(n, 0, k);
    const HybridSpec hybrid = random_hybrid(space, depth, d, rng());
    const auto sp = spectrum([&](std::span<const std::int8_t> x) { return acceptance_hybrid(hybrid, x); },
                             static_cast<int>(space.N()), default_workers());
    for (int level = 2; level <= 3; ++level) {
      const double bound = hybrid_ceiling(d, level, space.N(), k);
      const double observed = growth(sp, level);
      tightest = std::max(tightest, observed / bound);
      if (!within_bound(observed, bound)) ++violations;
    }
  }
  return {violations == 0,
          format("10 hybrids, %d violations, largest observed/ceiling %.4f", violations, tightest)};
}

Outcome forrelation_pipeline() {
  std::mt19937_64 rng(1010);
  double pipeline_gap = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = random_instance(pick(rng, 1, 4), pick(rng, 1, 6), rng);
    pipeline_gap = std::max(pipeline_gap, std::abs(forr(inst) - forr_matrix_product(inst)));
  }
  double circuit_gap = 0.0;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 1; n <= 2; ++n) {
      const auto circuit = trace_circuit(k, n);
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<SignVector> x;
        for (int b = 0; b < k; ++b) x.push_back(random_signs(std::size_t{1} << n, rng));
        circuit_gap = std::max(circuit_gap, std::abs(circuit.acceptance(x) - trace_expression(x, n)));
      }
    }
  }
  return {pipeline_gap <= 1e-12 && circuit_gap <= 1e-9,
          format("1000 instances, max pipeline gap %.3g; trace circuit max gap %.3g", pipeline_gap,
                 circuit_gap)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

}  // namespace
}  // namespace fgrowth

int main() {
  using namespace fgrowth;
  const std::vector<Criterion> criteria = {
      {1, "decomposition correctness", 60, decomposition_correctness},
      {2, "acceptance formula equivalence", 30, formula_equivalence},
      {3, "DQC(k) growth ceiling", 300, dqck_ceiling_check},
      {4, "BQP growth ceiling", 300, bqp_ceiling_check},
      {5, "tightness circuit", 0, tightness},
      {6, "clean-qubit reduction", 0, clean_qubit_reduction},
      {7, "Fourier oracle agreement", 0, oracle_agreement},
      {8, "signed growth sanity", 0, signed_growth_sanity},
      {9, "hybrid growth ceiling", 0, hybrid_bound},
      {10, "forrelation pipeline", 0, forrelation_pipeline},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += fgrowth::format("; over the %.0f s budget", c.budget_seconds);
    }
    if (!outcome.pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
