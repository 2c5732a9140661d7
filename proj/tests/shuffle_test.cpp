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

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/sampling.h"
#include "dpcalc/shuffle.h"
#include "gtest/gtest.h"

namespace dpcalc {
namespace {

TEST(CountVectorTest, NeighborsAndTotals) {
  EXPECT_EQ((CountVector{{2, 0}}).total(), 2);
  EXPECT_TRUE(are_neighbors(CountVector{{2, 0}}, CountVector{{1, 1}}));
  EXPECT_FALSE(are_neighbors(CountVector{{2, 0}}, CountVector{{0, 2}}));
  EXPECT_FALSE(are_neighbors(CountVector{{2, 0}}, CountVector{{2, 1}}));
  EXPECT_FALSE(are_neighbors(CountVector{{2, 0}}, CountVector{{2, 0}}));
}

TEST(ShuffledDistributionTest, MatchesBinomialByHand) {
  // Randomized response at ln 3 keeps the true value with probability 3/4, so
  // two users holding "0" produce counts Binomial(2, 3/4) on the first symbol.
  const Mechanism rr = Mechanism::randomized_response(std::log(3.0));
  const CountDist d = shuffled_distribution(rr, CountVector{{2, 0}});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d.at({2, 0}), 9.0 / 16.0, 1e-15);
  EXPECT_NEAR(d.at({1, 1}), 6.0 / 16.0, 1e-15);
  EXPECT_NEAR(d.at({0, 2}), 1.0 / 16.0, 1e-15);
}

TEST(ShuffledDistributionTest, EnforcesLimitsAndShape) {
  const Mechanism rr = Mechanism::randomized_response(0.5);
  EXPECT_THROW(shuffled_distribution(rr, CountVector{{61, 0}}), std::invalid_argument);
  EXPECT_THROW(shuffled_distribution(rr, CountVector{{1, 1, 1}}), std::invalid_argument);
}

TEST(CountHockeyStickTest, UnionOfSupports) {
  CountDist p;
  p[{1, 0}] = 0.5;
  p[{0, 1}] = 0.5;
  CountDist q;
  q[{1, 0}] = 1.0;
  EXPECT_DOUBLE_EQ(hockey_stick(p, q, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(hockey_stick(q, p, 0.0), 0.5);
  // Mass of p escaping q's support survives any eps.
  EXPECT_DOUBLE_EQ(hockey_stick(p, q, 3.0), 0.5);
}

TEST(AuditShuffleTest, OneUserEqualsReplacementAudit) {
  DeterministicRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const Mechanism r = sample_mechanism(rng, 3, 3);
    for (double eps : {0.0, 0.4}) {
      EXPECT_NEAR(audit_shuffle(r, 1, eps), audit_replacement_ldp(r, eps), 1e-12);
    }
  }
}

TEST(AuditShuffleTest, NeverWorsensWithMoreUsers) {
  const Mechanism rr = Mechanism::randomized_response(0.5);
  double previous = audit_shuffle(rr, 1, 0.25);
  for (int64_t n : {2, 3, 5, 8}) {
    const double current = audit_shuffle(rr, n, 0.25);
    EXPECT_LE(current, previous + 1e-12) << "n = " << n;
    previous = current;
  }
}

TEST(ShuffleToLocalTest, BudgetShape) {
  const PrivacyBudget b = shuffle_to_ldp_budget(0.3, 0.01, 4);
  EXPECT_NEAR(b.eps, 0.3 + std::log(4.0), 1e-15);
  EXPECT_DOUBLE_EQ(b.delta, 0.01);
  EXPECT_DOUBLE_EQ(shuffle_to_ldp_budget(0.3, 0.01, 1).eps, 0.3);
  EXPECT_THROW(shuffle_to_ldp_budget(0.3, 0.01, 0), std::invalid_argument);
}

TEST(EnumLimitsTest, ReadsTheEnvironment) {
  unsetenv("DPCALC_MAX_ENUM");
  const EnumLimits def = EnumLimits::from_env();
  EXPECT_EQ(def.max_n, 60);
  EXPECT_EQ(def.max_outputs, 6u);

  setenv("DPCALC_MAX_ENUM", "25", 1);
  EXPECT_EQ(EnumLimits::from_env().max_n, 25);
  EXPECT_EQ(EnumLimits::from_env().max_outputs, 6u);

  setenv("DPCALC_MAX_ENUM", "30,4", 1);
  const EnumLimits both = EnumLimits::from_env();
  EXPECT_EQ(both.max_n, 30);
  EXPECT_EQ(both.max_outputs, 4u);

  setenv("DPCALC_MAX_ENUM", "junk", 1);
  EXPECT_THROW(EnumLimits::from_env(), std::invalid_argument);
  unsetenv("DPCALC_MAX_ENUM");
}

TEST(AmplificationTest, FormulaAndGate) {
  const double eps_l = 0.25;
  const double delta = 0.05;
  const double f40 = amplification_formula(eps_l, delta, 40);
  const double expected =
      std::log1p(4.0 * (std::exp(eps_l) - 1.0) *
                 (std::sqrt(2.0 * std::log(4.0 / delta) /
                            ((std::exp(eps_l) + 1.0) * 40.0)) +
                  1.0 / 40.0));
  EXPECT_NEAR(f40, expected, 1e-12);
  EXPECT_NEAR(f40, 0.3223, 1e-4);
  EXPECT_GT(f40, amplification_formula(eps_l, delta, 80));

  // The guarded variant rejects this population as too small and names the
  // cutoff it applied.
  try {
    amplification_eps({eps_l, delta, 40, 1.0});
    FAIL() << "expected the population gate to reject";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("cutoff"), std::string::npos) << e.what();
  }
}

TEST(AmplificationTest, HonestFractionShrinksThePopulation) {
  const double gated = amplification_eps({0.25, 0.3, 200, 0.5});
  EXPECT_NEAR(gated, amplification_formula(0.25, 0.3, 100), 1e-15);
  EXPECT_GT(gated, amplification_eps({0.25, 0.3, 200, 1.0}));
}

TEST(AmplificationTest, BoundBeatsExactAudit) {
  const AmplificationReport report =
      check_amplification_vs_exact(Mechanism::randomized_response(0.25), 60, 0.3);
  EXPECT_TRUE(report.ok);
  EXPECT_NEAR(report.eps_l, 0.25, 1e-12);
  EXPECT_LE(report.exact_delta, report.target_delta);
  EXPECT_GE(report.margin, 0.0);
}

}  // namespace
}  // namespace dpcalc
