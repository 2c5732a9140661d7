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

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dpcalc/verify.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dpcalc {
namespace {

TEST(VerifySuiteTest, RegistryListsTheSuites) {
  // Six concrete suites plus the "all" alias, in registration order.
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 7u);
  EXPECT_EQ(names.front(), "dp");
  EXPECT_EQ(names[5], "appendix");
  EXPECT_EQ(names.back(), "all");
  EXPECT_THROW(run_suite("nope", 0), std::invalid_argument);
}

TEST(VerifySuiteTest, AppendixCountsItsGrid) {
  const auto results = run_suite("appendix", 0);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].id, "appendix.exp-ratio-bound");
  EXPECT_EQ(results[0].count, 40000);
  EXPECT_TRUE(results[0].pass);
}

TEST(VerifySuiteTest, DeterministicForAFixedSeed) {
  const auto a = run_suite("dp", 11);
  const auto b = run_suite("dp", 11);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(to_json_line(a[i]), to_json_line(b[i]));
  }
  // A different seed draws different instances somewhere in the suite.
  const auto c = run_suite("dp", 12);
  ASSERT_EQ(a.size(), c.size());
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    any_difference = any_difference || to_json_line(a[i]) != to_json_line(c[i]);
  }
  EXPECT_TRUE(any_difference);
}

TEST(VerifySuiteTest, JsonLinesRoundTrip) {
  const auto results = run_suite("counterexample", 7);
  ASSERT_FALSE(results.empty());
  for (const auto& r : results) {
    const std::string line = to_json_line(r);
    EXPECT_EQ(line.find('\n'), std::string::npos);
    const nlohmann::json parsed = nlohmann::json::parse(line);
    EXPECT_EQ(parsed.at("id").get<std::string>(), r.id);
    EXPECT_EQ(parsed.at("pass").get<bool>(), r.pass);
    EXPECT_TRUE(parsed.contains("claim"));
    EXPECT_TRUE(parsed.contains("inputs"));
    EXPECT_TRUE(parsed.contains("expected"));
    EXPECT_TRUE(parsed.contains("achieved"));
    EXPECT_TRUE(parsed.contains("margin"));
    EXPECT_TRUE(parsed.contains("tolerance"));
    EXPECT_TRUE(parsed.contains("count"));
  }
}

TEST(VerifySuiteTest, MarginSemantics) {
  for (const auto& r : run_suite("all", 7)) {
    EXPECT_EQ(r.pass, r.margin >= -r.tolerance) << r.id;
  }
}

TEST(VerifySuiteTest, EveryCheckPassesAtTypicalSeeds) {
  for (uint64_t seed : {uint64_t{0}, uint64_t{7}}) {
    const auto results = run_suite("all", seed);
    EXPECT_EQ(results.size(), 30u);
    for (const auto& r : results) {
      EXPECT_TRUE(r.pass) << r.id << " at seed " << seed << ": " << to_json_line(r);
    }
  }
}

}  // namespace
}  // namespace dpcalc
