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
#include <vector>

#include <gtest/gtest.h>

#include "commands.hpp"

namespace fgrowth::cli {
namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fgrowth");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kParity = std::string(FGROWTH_DATA_DIR) + "/two_bit_parity.json";

TEST(Cli, GrowthBqpWithinCeiling) {
  const auto r = invoke({"growth", "--model", "BQP", "--n", "2", "--d", "1", "--levels", "1", "--trials", "3"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("BQP,1,"), std::string::npos);
  EXPECT_NE(r.out.find(",2,PASS"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# config"), std::string::npos);
}

TEST(Cli, GrowthDqckCeilingIsReported) {
  const auto r = invoke({"growth", "--model", "DQCK", "--n", "2", "--k", "1", "--d", "2", "--levels", "2",
                         "--trials", "2", "--format", "json"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("\"ceiling\": 8.48528137423"), std::string::npos) << r.out;
}

TEST(Cli, ConstantAcceptSpecHasZeroGrowth) {
  const std::string path = testing::TempDir() + "constant.json";
  {
    std::ofstream f(path);
    f << R"({"model":"BQP","n":1,"d":1,"unitaries":[{"kind":"identity"},{"kind":"identity"}],"accept":[0,1]})";
  }
  const auto r = invoke({"growth", "--spec", path, "--levels", "1,2"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("BQP,1,0,"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("BQP,2,0,"), std::string::npos) << r.out;
}

TEST(Cli, SpectrumOfParity) {
  const auto r = invoke({"spectrum", "--spec", kParity, "--bias"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_EQ(r.out, "mask,subset,coefficient\n3,{1 2},1\n");
}

TEST(Cli, TightnessPasses) {
  const auto r = invoke({"tightness", "--n", "1", "--d", "2"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, ReduceReportsQuarterRatio) {
  const auto r = invoke({"reduce", "--n", "2", "--k", "2", "--d", "1", "--t", "1", "--format", "json"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("\"expected_ratio\": 0.25"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"status\": \"PASS\""), std::string::npos);
}

TEST(Cli, VerifyDecompositionAndForrelation) {
  auto r = invoke({"verify-decomposition", "--n", "1", "--w", "1", "--d", "3", "--n-tilde", "2", "--q", "1",
                   "--trials", "2"});
  EXPECT_EQ(r.code, kPass) << r.err << r.out;
  r = invoke({"forrelation", "--k", "2", "--n", "3", "--trials", "4"});
  EXPECT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("eps=0.111111"), std::string::npos) << r.out;
}

TEST(Cli, HybridGrowth) {
  const auto r = invoke({"hybrid-growth", "--n", "2", "--k", "1", "--d", "1", "--levels", "2,3", "--trials", "2"});
  EXPECT_EQ(r.code, kPass) << r.err;
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args = {"growth", "--model", "HALF_BQP", "--n", "2", "--d", "1",
                                         "--restriction", "random:0.5", "--seed", "9"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("REPORT"), std::string::npos);
}

TEST(Cli, UsageAndResourceErrors) {
  EXPECT_EQ(invoke({"growth", "--model", "nonsense"}).code, kUsageError);
  EXPECT_EQ(invoke({"nosuch"}).code, kUsageError);
  EXPECT_EQ(invoke({"growth", "--n", "x"}).code, kUsageError);
  EXPECT_EQ(invoke({"tightness", "--n", "3", "--d", "3"}).code, kUsageError);
  EXPECT_EQ(invoke({"growth", "--format", "xml"}).code, kUsageError);
  EXPECT_EQ(invoke({"spectrum", "--spec", "/nonexistent.json"}).code, kUsageError);
}

}  // namespace
}  // namespace fgrowth::cli
