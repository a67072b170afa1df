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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fgrowth::cli {

enum ExitCode : int { kPass = 0, kBoundViolated = 1, kUsageError = 2 };

struct Config {
  std::string command;
  std::string model = "DQCK";
  int n = 2;
  int w = 0;
  int k = 1;
  int d = 2;
  std::vector<int> levels{1, 2, 3};
  int trials = 5;
  std::uint64_t seed = 1;
  std::string restriction;
  std::string spec_path;
  std::string out_path;
  std::string format = "csv";
  unsigned workers = 0;
  int t = 1;
  int n_tilde = 2;
  int p = 0;
  int q = 0;
  int depth = -1;
  bool bias = false;
};

struct Result {
  int exit_code = kPass;
  std::string text;
};

Result cmd_growth(const Config& cfg);
Result cmd_verify_decomposition(const Config& cfg);
Result cmd_forrelation(const Config& cfg);
Result cmd_tightness(const Config& cfg);
Result cmd_spectrum(const Config& cfg);
Result cmd_reduce(const Config& cfg);
Result cmd_hybrid_growth(const Config& cfg);

Result dispatch(const Config& cfg);

// Parses arguments, runs the command and writes its output to `out` or to
// --out. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fgrowth::cli
