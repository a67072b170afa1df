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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fgrowth/decomposition.hpp"
#include "fgrowth/errors.hpp"
#include "fgrowth/forrelation.hpp"
#include "fgrowth/fourier.hpp"
#include "fgrowth/limits.hpp"
#include "fgrowth/parallel.hpp"
#include "json.hpp"

namespace fgrowth::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Rows of key/value pairs rendered as CSV or JSON, with the config echoed.
class Table {
 public:
  Table(const Config& cfg, Json config) : format_(cfg.format), config_(std::move(config)) {
    config_["command"] = cfg.command;
  }

  void add(Json row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    if (format_ == "json") {
      Json doc;
      doc["config"] = config_;
      doc["rows"] = rows_;
      return doc.dump(2) + "\n";
    }
    std::string out;
    if (!rows_.empty()) {
      bool first = true;
      for (const auto& [key, value] : rows_.front().items()) {
        out += (first ? "" : ",") + key;
        first = false;
      }
      out += "\n";
    }
    for (const auto& row : rows_) {
      bool first = true;
      for (const auto& [key, value] : row.items()) {
        out += first ? "" : ",";
        first = false;
        if (value.is_number_float()) {
          out += number(value.get<double>());
        } else if (value.is_string()) {
          out += value.get<std::string>();
        } else {
          out += value.dump();
        }
      }
      out += "\n";
    }
    out += "# config";
    for (const auto& [key, value] : config_.items()) {
      out += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    return out + "\n";
  }

 private:
  std::string format_;
  Json config_;
  std::vector<Json> rows_;
};

unsigned workers_of(const Config& cfg) { return cfg.workers == 0 ? default_workers() : cfg.workers; }

Restriction make_restriction(const std::string& text, std::size_t n, std::mt19937_64& rng) {
  if (text.empty()) return Restriction::all_free(n);
  if (text.rfind("random:", 0) == 0) {
    double p = 0.0;
    try {
      p = std::stod(text.substr(7));
    } catch (const std::exception&) {
      throw ParameterError("restriction: cannot parse probability in '" + text + "'");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("restriction: probability outside [0, 1]");
    return Restriction::random(n, p, rng);
  }
  Restriction rho = Restriction::parse(text);
  if (rho.size() != n) throw ShapeError("restriction length differs from N");
  return rho;
}

IndexSpace space_of(const Config& cfg) {
  return IndexSpace(cfg.n, cfg.w, parse_model(cfg.model) == Model::DQCK ? cfg.k : 0);
}

Json base_config(const Config& cfg) {
  Json c;
  c["model"] = cfg.model;
  c["n"] = cfg.n;
  c["w"] = cfg.w;
  c["k"] = cfg.k;
  c["d"] = cfg.d;
  c["seed"] = cfg.seed;
  return c;
}

std::string levels_text(const std::vector<int>& levels) {
  std::string out;
  for (int l : levels) out += (out.empty() ? "" : ";") + std::to_string(l);
  return out;
}

// Explicit-constant ceiling for the model at this level; negative when none applies.
double ceiling_for(Model model, int d, int level, std::size_t n_oracle, int k) {
  switch (model) {
    case Model::BQP: return bqp_ceiling(d, level, n_oracle);
    case Model::DQCK: return dqck_ceiling(d, level, n_oracle, k);
    case Model::HALF_BQP: return -1.0;
  }
  return -1.0;
}

}  // namespace

Result cmd_growth(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<AlgorithmSpec> specs;
  if (!cfg.spec_path.empty()) {
    specs.push_back(load_spec(cfg.spec_path));
  } else {
    const IndexSpace space = space_of(cfg);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      specs.push_back(random_spec(parse_model(cfg.model), space, cfg.d, rng()));
    }
  }
  const AlgorithmSpec& first = specs.front();
  std::vector<double> observed(cfg.levels.size(), 0.0);
  for (const auto& spec : specs) {
    const Restriction rho = spec.restriction && cfg.restriction.empty()
                                ? *spec.restriction
                                : make_restriction(cfg.restriction, spec.space.N(), rng);
    const auto sp = restricted_spectrum(spec, rho, workers_of(cfg));
    for (std::size_t j = 0; j < cfg.levels.size(); ++j) {
      const int level = cfg.levels[j];
      if (level < 1) throw ParameterError("levels must be positive");
      if (level <= sp.num_vars) observed[j] = std::max(observed[j], growth(sp, level));
    }
  }

  Json config = base_config(cfg);
  config["model"] = std::string(to_string(first.model));
  config["n"] = first.space.n();
  config["w"] = first.space.w();
  config["k"] = first.space.k();
  config["d"] = first.d;
  config["levels"] = levels_text(cfg.levels);
  config["trials"] = specs.size();
  config["restriction"] = cfg.restriction.empty() ? "all-free" : cfg.restriction;
  if (!cfg.spec_path.empty()) config["spec"] = cfg.spec_path;
  Table table(cfg, config);
  Result result;
  for (std::size_t j = 0; j < cfg.levels.size(); ++j) {
    const int level = cfg.levels[j];
    const double ceiling = ceiling_for(first.model, first.d, level, first.space.N(), first.space.k());
    const bool holds = ceiling < 0.0 || within_bound(observed[j], ceiling);
    if (!holds) result.exit_code = kBoundViolated;
    Json row;
    row["model"] = std::string(to_string(first.model));
    row["level"] = level;
    row["observed_max"] = observed[j];
    row["ceiling"] = ceiling < 0.0 ? Json("none") : Json(ceiling);
    row["status"] = ceiling < 0.0 ? "REPORT" : (holds ? "PASS" : "FAIL");
    table.add(std::move(row));
  }
  result.text = table.render();
  return result;
}

Result cmd_verify_decomposition(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const std::size_t oracle_dim = std::size_t{1} << cfg.n;
  const std::size_t aux_dim = std::size_t{1} << cfg.w;
  Json config;
  config["n"] = cfg.n;
  config["w"] = cfg.w;
  config["d"] = cfg.d;
  config["n_tilde"] = cfg.n_tilde;
  config["p"] = cfg.p;
  config["q"] = cfg.q;
  config["trials"] = cfg.trials;
  config["seed"] = cfg.seed;
  Table table(cfg, config);
  Result result;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t seed = rng();
    const auto spec = random_decomposition_spec(oracle_dim, aux_dim, cfg.d, cfg.n_tilde, cfg.p, cfg.q, seed);
    const VerifyReport report = verify(spec, workers_of(cfg));
    if (!report.pass()) result.exit_code = kBoundViolated;
    Json row;
    row["trial"] = trial;
    row["lemma"] = report.lemma;
    row["max_deviation"] = report.max_deviation;
    row["max_factor_norm"] = report.max_factor_norm;
    row["product_frobenius"] = report.product_frobenius;
    row["min_input_frobenius"] = report.min_input_frobenius;
    row["status"] = report.pass() ? "PASS" : "FAIL";
    table.add(std::move(row));
  }
  result.text = table.render();
  return result;
}

Result cmd_forrelation(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<ForrelationInstance> instances;
  if (!cfg.spec_path.empty()) {
    std::ifstream in(cfg.spec_path);
    if (!in) throw SpecificationError("cannot open instance file '" + cfg.spec_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    instances.push_back(instance_from_json(buffer.str()));
  } else {
    for (int trial = 0; trial < cfg.trials; ++trial) instances.push_back(random_instance(cfg.k, cfg.n, rng));
  }
  const ForrelationInstance& first = instances.front();
  const bool labelled = first.N() >= 4;
  const double eps = labelled ? default_eps(first.k, first.N()) : 0.0;
  Json config;
  config["k"] = first.k;
  config["n"] = first.n;
  config["trials"] = instances.size();
  config["seed"] = cfg.seed;
  config["eps"] = labelled ? Json(eps) : Json("none");
  if (!cfg.spec_path.empty()) config["spec"] = cfg.spec_path;
  Table table(cfg, config);
  Result result;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const double value = forr(instances[i]);
    const double product = forr_matrix_product(instances[i]);
    const bool agree = std::abs(value - product) <= 1e-12;
    if (!agree) result.exit_code = kBoundViolated;
    Json row;
    row["instance"] = i;
    row["forr"] = value;
    row["forr_matrix_product"] = product;
    row["label"] = labelled ? std::string(to_string(classify(value, eps))) : "none";
    row["status"] = agree ? "PASS" : "FAIL";
    table.add(std::move(row));
  }
  result.text = table.render();
  return result;
}

Result cmd_tightness(const Config& cfg) {
  const auto circuit = tightness_circuit(cfg.n, cfg.d);
  const auto sp = circuit.spectrum(workers_of(cfg));
  const double size = static_cast<double>(std::size_t{1} << cfg.n);
  const double magnitude = 1.0 / (2.0 * size * std::pow(size, cfg.d / 2.0));
  std::size_t nonzero = 0;
  bool magnitudes = true;
  for (std::uint64_t s = 1; s < sp.coeffs.size(); ++s) {
    if (std::abs(sp[s]) <= 1e-12) continue;
    ++nonzero;
    magnitudes = magnitudes && std::abs(std::abs(sp[s]) - magnitude) <= 1e-12;
  }
  const double observed = growth(sp, cfg.d);
  const double target = std::pow(size, cfg.d / 2.0 - 1.0) / 2.0;
  const auto expected_nonzero = static_cast<std::size_t>(std::llround(std::pow(size, cfg.d)));
  const bool pass = std::abs(observed - target) <= 1e-9 && nonzero == expected_nonzero && magnitudes;

  Json config;
  config["n"] = cfg.n;
  config["d"] = cfg.d;
  config["queries"] = circuit.spec.d;
  Table table(cfg, config);
  Json row;
  row["level"] = cfg.d;
  row["growth"] = observed;
  row["target"] = target;
  row["nonzero"] = nonzero;
  row["expected_nonzero"] = expected_nonzero;
  row["magnitude"] = magnitude;
  row["status"] = pass ? "PASS" : "FAIL";
  table.add(std::move(row));
  return {pass ? kPass : kBoundViolated, table.render()};
}

Result cmd_spectrum(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const AlgorithmSpec spec = cfg.spec_path.empty()
                                 ? random_spec(parse_model(cfg.model), space_of(cfg), cfg.d, rng())
                                 : load_spec(cfg.spec_path);
  const Restriction rho = spec.restriction && cfg.restriction.empty()
                              ? *spec.restriction
                              : make_restriction(cfg.restriction, spec.space.N(), rng);
  auto sp = restricted_spectrum(spec, rho, workers_of(cfg));
  if (cfg.bias) {
    for (double& c : sp.coeffs) c *= 2.0;
    sp.coeffs[0] -= 1.0;
  }
  constexpr double threshold = 1e-12;
  if (cfg.format == "json") {
    Json doc;
    Json config = base_config(cfg);
    config["command"] = cfg.command;
    config["restriction"] = rho.str();
    config["bias"] = cfg.bias;
    if (!cfg.spec_path.empty()) config["spec"] = cfg.spec_path;
    doc["config"] = config;
    doc["spectrum"] = Json::parse(spectrum_json(sp, threshold));
    return {kPass, doc.dump(2) + "\n"};
  }
  return {kPass, spectrum_csv(sp, threshold)};
}

Result cmd_reduce(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const AlgorithmSpec spec = cfg.spec_path.empty()
                                 ? random_spec(Model::DQCK, IndexSpace(cfg.n, cfg.w, cfg.k), cfg.d, rng())
                                 : load_spec(cfg.spec_path);
  const AlgorithmSpec reduced = reduce_clean_qubits(spec, cfg.t);
  const std::size_t n_oracle = spec.space.N();
  if (n_oracle > static_cast<std::size_t>(kMaxTruthTableVars)) {
    throw ResourceError("reduce: 2^N inputs exceed the truth-table cap");
  }
  const double factor = std::ldexp(1.0, -cfg.t - 1);
  double worst = 0.0;
  double strongest = -1.0;
  double ratio = factor;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_oracle); ++mask) {
    const SignVector x = cube_point(mask, n_oracle);
    const double before = bias(acceptance_direct(spec, x));
    const double after = bias(acceptance_direct(reduced, x));
    worst = std::max(worst, std::abs(after - factor * before));
    if (std::abs(before) > strongest) {
      strongest = std::abs(before);
      if (before != 0.0) ratio = after / before;
    }
  }
  const bool pass = worst <= 1e-9;
  Json config = base_config(cfg);
  config["model"] = std::string(to_string(spec.model));
  config["k"] = spec.space.k();
  config["t"] = cfg.t;
  if (!cfg.spec_path.empty()) config["spec"] = cfg.spec_path;
  Table table(cfg, config);
  Json row;
  row["t"] = cfg.t;
  row["clean_before"] = spec.space.k();
  row["clean_after"] = reduced.space.k();
  row["expected_ratio"] = factor;
  row["observed_ratio"] = ratio;
  row["max_deviation"] = worst;
  row["status"] = pass ? "PASS" : "FAIL";
  table.add(std::move(row));
  return {pass ? kPass : kBoundViolated, table.render()};
}

Result cmd_hybrid_growth(const Config& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const IndexSpace space(cfg.n, cfg.w, cfg.k);
  if (space.N() > static_cast<std::size_t>(kMaxTruthTableVars)) {
    throw ResourceError("hybrid-growth: N exceeds the truth-table cap");
  }
  std::vector<double> observed(cfg.levels.size(), 0.0);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int depth = cfg.depth >= 0 ? cfg.depth : trial % (cfg.d + 1);
    const HybridSpec hybrid = random_hybrid(space, depth, cfg.d, rng());
    const auto sp = spectrum([&](std::span<const std::int8_t> x) { return acceptance_hybrid(hybrid, x); },
                             static_cast<int>(space.N()), workers_of(cfg));
    for (std::size_t j = 0; j < cfg.levels.size(); ++j) {
      if (cfg.levels[j] <= sp.num_vars) observed[j] = std::max(observed[j], growth(sp, cfg.levels[j]));
    }
  }
  Json config = base_config(cfg);
  config["model"] = "DQCK";
  config["levels"] = levels_text(cfg.levels);
  config["trials"] = cfg.trials;
  config["depth"] = cfg.depth >= 0 ? Json(cfg.depth) : Json("cycled");
  Table table(cfg, config);
  Result result;
  for (std::size_t j = 0; j < cfg.levels.size(); ++j) {
    const int level = cfg.levels[j];
    Json row;
    row["level"] = level;
    row["observed_max"] = observed[j];
    if (level < 2) {
      row["ceiling"] = "none";
      row["status"] = "REPORT";
    } else {
      const double ceiling = hybrid_ceiling(cfg.d, level, space.N(), cfg.k);
      const bool holds = within_bound(observed[j], ceiling);
      if (!holds) result.exit_code = kBoundViolated;
      row["ceiling"] = ceiling;
      row["status"] = holds ? "PASS" : "FAIL";
    }
    table.add(std::move(row));
  }
  result.text = table.render();
  return result;
}

Result dispatch(const Config& cfg) {
  if (cfg.format != "csv" && cfg.format != "json") throw ParameterError("format must be csv or json");
  if (cfg.command == "growth") return cmd_growth(cfg);
  if (cfg.command == "verify-decomposition") return cmd_verify_decomposition(cfg);
  if (cfg.command == "forrelation") return cmd_forrelation(cfg);
  if (cfg.command == "tightness") return cmd_tightness(cfg);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg);
  if (cfg.command == "reduce") return cmd_reduce(cfg);
  if (cfg.command == "hybrid-growth") return cmd_hybrid_growth(cfg);
  throw ParameterError("unknown command '" + cfg.command + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Fourier growth experiments for small quantum query algorithms"};
  app.require_subcommand(1, 1);
  Config cfg;

  const auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "BQP, DQCK or HALF_BQP")->capture_default_str();
    sub->add_option("--n", cfg.n, "oracle qubits")->capture_default_str();
    sub->add_option("--w", cfg.w, "maximally mixed workspace qubits")->capture_default_str();
    sub->add_option("--k", cfg.k, "clean qubits, or forrelation blocks")->capture_default_str();
    sub->add_option("--d", cfg.d, "queries")->capture_default_str();
    sub->add_option("--levels", cfg.levels, "Fourier levels")->delimiter(',');
    sub->add_option("--trials", cfg.trials, "random instances")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    sub->add_option("--restriction", cfg.restriction, "string over +-* or random:p");
    sub->add_option("--spec", cfg.spec_path, "JSON spec or instance path");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "worker threads (0 = available parallelism)");
  };

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"growth", "observed level growth vs. ceiling for random algorithms"},
      {"verify-decomposition", "check augmented-matrix decompositions against brute force"},
      {"forrelation", "evaluate and classify random forrelation instances"},
      {"tightness", "exact spectrum of the block-oracle trace circuit"},
      {"spectrum", "Fourier spectrum of one algorithm as CSV or JSON"},
      {"reduce", "clean-qubit reduction bias check over all inputs"},
      {"hybrid-growth", "growth of classical-then-quantum hybrids vs. ceiling"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    const std::string command = name;
    sub->callback([&cfg, command] { cfg.command = command; });
    if (command == "reduce") sub->add_option("--t", cfg.t, "clean qubits removed")->capture_default_str();
    if (command == "verify-decomposition") {
      sub->add_option("--n-tilde", cfg.n_tilde, "tracked oracle coordinates")->capture_default_str();
      sub->add_option("--p", cfg.p, "equality pairs")->capture_default_str();
      sub->add_option("--q", cfg.q, "memory indices")->capture_default_str();
    }
    if (command == "spectrum") sub->add_flag("--bias", cfg.bias, "transform 2f - 1 instead of f");
    if (command == "hybrid-growth") sub->add_option("--depth", cfg.depth, "tree depth (default cycles 0..d)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const Result result = dispatch(cfg);
    if (cfg.out_path.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw ResourceError("cannot write '" + cfg.out_path + "'");
      file << result.text;
    }
    return result.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace fgrowth::cli
