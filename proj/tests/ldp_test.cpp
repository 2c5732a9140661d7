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
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/ldp.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/sampling.h"
#include "gtest/gtest.h"

namespace dpcalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(DeletionModelTest, ReplacementTransfersVerbatim) {
  const Mechanism rr = Mechanism::randomized_response(0.9);
  const DeletionView view = replacement_to_deletion(rr, 0, 0.9, 0.0);
  EXPECT_EQ(view.reference, rr.row(0));
  EXPECT_DOUBLE_EQ(view.budget.eps, 0.9);
  EXPECT_DOUBLE_EQ(view.budget.delta, 0.0);
  EXPECT_LE(audit_deletion_ldp(rr, view.reference, 0.9), 1e-12);
}

TEST(DeletionModelTest, GenericConverseBudget) {
  const PrivacyBudget b = deletion_to_replacement_budget(1.0, 0.01);
  EXPECT_DOUBLE_EQ(b.eps, 2.0);
  EXPECT_NEAR(b.delta, 0.01 * (std::exp(1.0) + 1.0), 1e-15);

  // The converse budget holds on a random instance against an exact audit.
  DeterministicRng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Mechanism r = sample_mechanism(rng, 3, 4, 0.2);
    const double eps = 0.5;
    const Dist r0 = Dist::uniform(4);
    const double delta = audit_deletion_ldp(r, r0, eps);
    const PrivacyBudget rep = deletion_to_replacement_budget(eps, delta);
    EXPECT_LE(audit_replacement_ldp(r, rep.eps), rep.delta + 1e-9);
  }
}

TEST(CounterexampleTest, PinnedInstance) {
  const double eps = 0.25;
  const double delta = 1.0 / 6.0;
  const Mechanism m = build_counterexample(eps, delta);
  ASSERT_EQ(m.num_inputs(), 2u);
  ASSERT_EQ(m.num_outputs(), 3u);

  // The deletion guarantee against the uniform reference is exactly delta.
  EXPECT_NEAR(audit_deletion_ldp(m, Dist::uniform(3), eps), delta, 1e-12);

  // On the middle outcome the 2 eps inequality is violated by exactly
  // (1 + e^eps) delta.
  const auto mid = m.output_index("2");
  ASSERT_TRUE(mid.has_value());
  const double overshoot = m.row(1)[*mid] - std::exp(2.0 * eps) * m.row(0)[*mid];
  EXPECT_NEAR(overshoot, (1.0 + std::exp(eps)) * delta, 1e-12);

  // So the exact replacement audit at 2 eps beats the would-be 2 delta slack.
  const double exact = audit_replacement_ldp(m, 2.0 * eps);
  EXPECT_GE(exact - 2.0 * delta, 0.047);
}

TEST(CounterexampleTest, RejectsOutOfRangeParameters) {
  EXPECT_THROW(build_counterexample(0.6, 0.1), std::invalid_argument);
  EXPECT_THROW(build_counterexample(0.25, 0.21), std::invalid_argument);
}

TEST(TrimTest, ProducesPureDeletionWithBoundedMovement) {
  DeterministicRng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Mechanism r = sample_mechanism(rng, 3, 4, 0.2);
    const Dist r0 = Dist::uniform(4);
    const double eps = 0.4;
    const double delta = audit_deletion_ldp(r, r0, eps);
    const Mechanism trimmed = trim_to_pure_deletion(r, r0, eps, delta);
    EXPECT_LE(audit_deletion_ldp(trimmed, r0, eps), 1e-9);
    for (std::size_t x = 0; x < r.num_inputs(); ++x) {
      EXPECT_LE(tv_distance(trimmed.row(x), r.row(x)), delta + 1e-9);
    }
  }
}

TEST(TrimTest, RowsInsideTheBandAreUntouched) {
  const Mechanism rr = Mechanism::randomized_response(0.3);
  const Dist r0 = Dist::uniform(2);
  const Mechanism trimmed = trim_to_pure_deletion(rr, r0, 0.4, 0.0);
  EXPECT_EQ(trimmed.row(0), rr.row(0));
  EXPECT_EQ(trimmed.row(1), rr.row(1));
}

TEST(TrimTest, RejectsUnderstatedDelta) {
  const Mechanism rr = Mechanism::randomized_response(2.0);
  const Dist r0 = Dist::uniform(2);
  const double true_delta = audit_deletion_ldp(rr, r0, 0.1);
  ASSERT_GT(true_delta, 0.05);
  EXPECT_THROW(trim_to_pure_deletion(rr, r0, 0.1, true_delta / 2.0),
               std::invalid_argument);
}

TEST(SymmetrizeTest, PrivateCoinTagsAndPureLevel) {
  const std::vector<Mechanism> members = {Mechanism::randomized_response(0.5),
                                          Mechanism::randomized_response(1.0)};
  const SymmetricCompilation comp = symmetrize(members, CoinModel::kPrivate);
  EXPECT_EQ(comp.coin, CoinModel::kPrivate);
  ASSERT_TRUE(comp.combined.has_value());
  EXPECT_TRUE(comp.seed_family.empty());
  ASSERT_EQ(comp.combined->num_outputs(), 4u);
  EXPECT_EQ(comp.combined->output_labels()[0], "0:0");
  EXPECT_EQ(comp.combined->output_labels()[3], "1:1");
  // The tagged release is exactly as private as the loudest member.
  EXPECT_NEAR(audit_pure(*comp.combined), 1.0, 1e-12);
  EXPECT_EQ(comp.n_prime, coupon_rounds(2, 1.0 / 6.0));
}

TEST(SymmetrizeTest, PublicCoinKeepsTheFamily) {
  const std::vector<Mechanism> members = {Mechanism::randomized_response(0.5),
                                          Mechanism::randomized_response(1.0)};
  const SymmetricCompilation comp = symmetrize(members, CoinModel::kPublic);
  EXPECT_EQ(comp.coin, CoinModel::kPublic);
  EXPECT_FALSE(comp.combined.has_value());
  ASSERT_EQ(comp.seed_family.size(), 2u);
  EXPECT_EQ(comp.n_prime, coupon_rounds(2, 1.0 / 6.0));
}

TEST(SymmetrizeTest, RejectsMismatchedAlphabets) {
  const Mechanism binary = Mechanism::randomized_response(0.5);
  const Mechanism ternary = Mechanism::constant({"0", "1"}, {"a", "b", "c"},
                                                Dist::uniform(3));
  EXPECT_THROW(symmetrize({binary, ternary}, CoinModel::kPrivate),
               std::invalid_argument);
  EXPECT_THROW(symmetrize({}, CoinModel::kPublic), std::invalid_argument);
}

TEST(CouponTest, PinnedRoundCounts) {
  EXPECT_EQ(coupon_rounds(10, 1.0 / 6.0), 41);
  EXPECT_EQ(coupon_rounds(100, 1.0 / 6.0), 640);
  EXPECT_EQ(coupon_rounds(1, 1.0 / 6.0), 2);
  EXPECT_THROW(coupon_rounds(0, 0.1), std::invalid_argument);
  EXPECT_THROW(coupon_rounds(5, 0.0), std::invalid_argument);
  EXPECT_THROW(coupon_rounds(5, 1.0), std::invalid_argument);
}

TEST(GroupositionTest, ClosedFormAndBudget) {
  EXPECT_NEAR(grouposition_eps({4, 0.5, 0.01, 0.0}), 3.534854258770293, 1e-12);
  const PrivacyBudget b = grouposition_budget({2, 0.3, 0.01, 0.05});
  EXPECT_NEAR(b.eps, 2.0 * 0.09 / 2.0 + 0.3 * std::sqrt(4.0 * std::log(100.0)), 1e-12);
  EXPECT_NEAR(b.delta, 0.07, 1e-15);
  // delta_total saturates at one.
  EXPECT_DOUBLE_EQ(grouposition_budget({3, 0.3, 0.4, 0.9}).delta, 1.0);
  EXPECT_THROW(grouposition_eps({0, 0.5, 0.01, 0.0}), std::invalid_argument);
  EXPECT_THROW(grouposition_eps({4, 0.5, 0.0, 0.0}), std::invalid_argument);
}

TEST(ComposeTest, ClosedFormAndEdgeCases) {
  EXPECT_NEAR(compose_eps(1.0, 1.0), 0.4337808304830272, 1e-12);
  EXPECT_NEAR(compose_eps(0.25, 2.0), compose_eps(2.0, 0.25), 1e-15);
  EXPECT_DOUBLE_EQ(compose_eps(0.0, 5.0), 0.0);
  EXPECT_DOUBLE_EQ(compose_eps(kInf, 0.7), 0.7);
  EXPECT_DOUBLE_EQ(compose_eps(0.7, kInf), 0.7);
  EXPECT_THROW(compose_eps(-0.1, 1.0), std::invalid_argument);
  for (double e1 : {0.3, 1.0, 2.5}) {
    for (double e2 : {0.2, 0.9, 3.0}) {
      const double c = compose_eps(e1, e2);
      EXPECT_LE(c, std::min(e1, e2) + 1e-15);
      EXPECT_LE(c, e1 * e2 / 2.0 + 1e-15);
    }
  }
}

TEST(ComposeTest, SearchAchievesTheBound) {
  const double bound = compose_eps(0.5, 1.0);
  const double found = compose_tightness_search(0.5, 1.0, 400);
  EXPECT_LE(found, bound + 1e-12);
  EXPECT_GE(found, bound - 1e-3);
  EXPECT_THROW(compose_tightness_search(0.5, 1.0, 1), std::invalid_argument);
}

TEST(PurificationTest, BookkeepingMatchesClosedForms) {
  const PurificationParams p{0.1, 1e-8, 100, 12};
  const PurificationBounds b = purification_bounds(p);
  EXPECT_DOUBLE_EQ(b.ldp_eps, 1.0);
  const double expected_tv =
      100.0 * (std::pow(0.6, 12.0) +
               6.0 * 12.0 * 1e-8 * std::exp(0.1) / (1.0 - std::exp(-0.1)));
  EXPECT_NEAR(b.tv_bound, expected_tv, 1e-15);
  EXPECT_NEAR(b.comm_bits, std::log2(12.0), 1e-15);
  EXPECT_FALSE(b.public_random_bits.has_value());

  const std::vector<int64_t> widths = {3, 5};
  const PurificationBounds with_bits = purification_bounds(p, &widths);
  ASSERT_TRUE(with_bits.public_random_bits.has_value());
  EXPECT_DOUBLE_EQ(*with_bits.public_random_bits, 96.0);
}

TEST(PurificationTest, RepetitionWindowIsEnforced) {
  // At eps = 0.1, delta = 1e-8, n = 100 the feasible range is roughly
  // [11.51, 21526.7]; both endpoints must be named when t falls outside.
  PurificationParams p{0.1, 1e-8, 100, 5};
  try {
    purification_bounds(p);
    FAIL() << "expected rejection below the window";
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("11.51"), std::string::npos) << msg;
    EXPECT_NE(msg.find("21526"), std::string::npos) << msg;
  }
  p.t = 30000;
  EXPECT_THROW(purification_bounds(p), std::invalid_argument);

  // A large delta leaves no feasible repetition count at all.
  const PurificationParams empty{0.1, 1e-2, 100, 12};
  EXPECT_THROW(purification_bounds(empty), std::invalid_argument);
  const PurificationParams loud{0.3, 1e-8, 100, 12};
  EXPECT_THROW(purification_bounds(loud), std::invalid_argument);
}

TEST(AppendixTest, InequalityHoldsOnSamplePoints) {
  EXPECT_TRUE(appendix_inequality_check(0.0, 0.0));
  EXPECT_TRUE(appendix_inequality_check(5.0, 0.0));
  EXPECT_TRUE(appendix_inequality_check(2.5, 2.5));
  DeterministicRng rng(3);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(appendix_inequality_check(rng.uniform(0.0, 5.0),
                                          rng.uniform(0.0, 5.0)));
  }
  EXPECT_THROW(appendix_inequality_check(-0.1, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace dpcalc
