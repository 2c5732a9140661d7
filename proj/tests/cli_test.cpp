// Copyright 2026 The dpcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the installed binary; the harness exports DPCALC_BIN.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/mechanism_io.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dpcalc {
namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

// Runs the binary with the given arguments.  stderr is dropped unless
// `merge_stderr` is set, so byte-for-byte comparisons are not perturbed by
// timing chatter.
CliResult RunCli(const std::string& args, bool merge_stderr = false) {
  const char* bin = std::getenv("DPCALC_BIN");
  if (bin == nullptr) {
    ADD_FAILURE() << "DPCALC_BIN must point at the dpcalc binary";
    return {};
  }
  const std::string cmd = std::string(bin) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  CliResult result;
  if (pipe == nullptr) {
    ADD_FAILURE() << "popen failed for: " << cmd;
    return result;
  }
  char buffer[4096];
  while (std::fgets(buffer, sizeof(buffer), pipe) != nullptr) {
    result.output += buffer;
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

TEST(CliBoundTest, ComposePinnedValue) {
  const CliResult r = RunCli("bound compose --eps1 1 --eps2 1");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_NEAR(doc.at("eps").get<double>(), 0.433781, 1e-6);
}

TEST(CliBoundTest, SubsampleAcceptsBothRateSpellings) {
  const CliResult via_p = RunCli("bound subsample --eps 1 --delta 0.01 --p 0.1");
  ASSERT_EQ(via_p.exit_code, 0) << via_p.output;
  const auto doc = nlohmann::json::parse(via_p.output);
  EXPECT_NEAR(doc.at("eps").get<double>(), 0.158565, 1e-6);
  EXPECT_NEAR(doc.at("delta").get<double>(), 0.001, 1e-12);

  const CliResult via_rate = RunCli("bound subsample --eps 1 --delta 0.01 --rate 0.1");
  ASSERT_EQ(via_rate.exit_code, 0);
  EXPECT_EQ(via_rate.output, via_p.output);
}

TEST(CliAuditTest, MatchesTheLibraryAudit) {
  const Mechanism rr = Mechanism::randomized_response(1.0);
  const std::string path = testing::TempDir() + "cli_rr.json";
  save_mechanism(rr, path);
  const CliResult r = RunCli("audit --model replacement --mechanism " + path +
                             " --eps 0.5");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_NEAR(doc.at("delta").get<double>(), audit_replacement_ldp(rr, 0.5), 1e-12);
}

TEST(CliVerifyTest, AppendixSuiteSummary) {
  const CliResult r = RunCli("verify --suite appendix --seed 1");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto lines = Lines(r.output);
  ASSERT_EQ(lines.size(), 2u);
  const auto check = nlohmann::json::parse(lines[0]);
  EXPECT_EQ(check.at("id").get<std::string>(), "appendix.exp-ratio-bound");
  EXPECT_EQ(check.at("count").get<int64_t>(), 40000);
  EXPECT_TRUE(check.at("pass").get<bool>());
  const auto summary = nlohmann::json::parse(lines[1]);
  EXPECT_EQ(summary.at("checks").get<int>(), 1);
  EXPECT_EQ(summary.at("failures").get<int>(), 0);
  EXPECT_EQ(summary.at("suite").get<std::string>(), "appendix");
}

TEST(CliVerifyTest, RunsAreByteIdentical) {
  const CliResult first = RunCli("verify --suite counterexample --seed 7");
  const CliResult second = RunCli("verify --suite counterexample --seed 7");
  ASSERT_EQ(first.exit_code, 0);
  ASSERT_EQ(second.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
  EXPECT_FALSE(first.output.empty());
}

TEST(CliVerifyTest, OutFileMirrorsStdout) {
  const std::string path = testing::TempDir() + "verify_out.jsonl";
  const CliResult r = RunCli("verify --suite appendix --seed 1 --out " + path);
  ASSERT_EQ(r.exit_code, 0);
  std::ifstream in(path);
  std::stringstream contents;
  contents << in.rdbuf();
  EXPECT_EQ(contents.str(), r.output);
}

TEST(CliVerifyTest, SubsampleProbeReportsTheGap) {
  const CliResult r = RunCli("verify subsample --eps 0.5 --n 2 --m 1");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_LE(std::abs(doc.at("gap").get<double>()), 1e-9);
  EXPECT_TRUE(doc.at("pass").get<bool>());
}

TEST(CliErrorTest, UsageProblemsExitTwo) {
  EXPECT_EQ(RunCli("bound compose --eps1 1", true).exit_code, 2);  // missing --eps2
  EXPECT_EQ(RunCli("no-such-command", true).exit_code, 2);
  EXPECT_EQ(RunCli("verify --suite no-such-suite", true).exit_code, 2);
  EXPECT_EQ(RunCli("verify subsample --eps 0.5 --n 2 --m 5", true).exit_code, 2);
}

TEST(CliErrorTest, MissingMechanismFileIsReported) {
  const CliResult r =
      RunCli("audit --model replacement --mechanism /nonexistent.json --eps 0.5", true);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("error:"), std::string::npos) << r.output;
}

TEST(CliHelpTest, HelpExitsZero) {
  EXPECT_EQ(RunCli("--help").exit_code, 0);
  EXPECT_EQ(RunCli("bound --help").exit_code, 0);
}

TEST(CliPrettyTest, PrettyOutputParsesToTheSameDocument) {
  const CliResult compact = RunCli("bound coupon --n 10");
  const CliResult pretty = RunCli("--pretty bound coupon --n 10");
  ASSERT_EQ(compact.exit_code, 0);
  ASSERT_EQ(pretty.exit_code, 0);
  EXPECT_NE(compact.output, pretty.output);
  EXPECT_EQ(nlohmann::json::parse(compact.output), nlohmann::json::parse(pretty.output));
  EXPECT_EQ(nlohmann::json::parse(compact.output).at("rounds").get<int>(), 41);
}

}  // namespace
}  // namespace dpcalc
