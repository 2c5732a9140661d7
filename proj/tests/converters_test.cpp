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
#include <stdexcept>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/converters.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/sampling.h"
#include "gtest/gtest.h"

namespace dpcalc {
namespace {

TEST(PureToApproxTest, SplitsBudget) {
  const PrivacyBudget b = pure_to_approx(1.0, 0.25);
  EXPECT_DOUBLE_EQ(b.eps, 0.75);
  EXPECT_DOUBLE_EQ(b.delta, 0.25);
  EXPECT_THROW(pure_to_approx(1.0, 1.5), std::invalid_argument);
  EXPECT_THROW(pure_to_approx(0.5, 0.6), std::invalid_argument);
}

TEST(PureToApproxTest, SplitHoldsOnRandomPureMechanisms) {
  DeterministicRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Mechanism m = sample_mechanism(rng, 3, 3, 0.3);
    const double eps0 = audit_pure(m);
    ASSERT_TRUE(std::isfinite(eps0));
    const double delta = 0.5 * std::min(1.0, eps0);
    if (delta <= 0.0) continue;
    const PrivacyBudget b = pure_to_approx(eps0, delta);
    EXPECT_LE(audit_replacement_ldp(m, b.eps), b.delta + 1e-12);
  }
}

TEST(ApproxToPureTest, PinnedTwoOutputValue) {
  // eps = 1, delta = 0.01, eta = 0.1 over a binary alphabet:
  // eps' = 1 + ln(1 + 0.01 * 2 * e^-1 / 0.1).
  const Mechanism rr = Mechanism::randomized_response(1.0);
  const ApproxToPureResult res = approx_to_pure_finite(rr, 1.0, 0.01, 0.1);
  EXPECT_NEAR(res.eps_prime, 1.0709950281849112, 1e-12);
  EXPECT_LE(audit_pure(res.mechanism), res.eps_prime + 1e-9);
}

TEST(ApproxToPureTest, MatchesFormulaAndStaysClose) {
  DeterministicRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Mechanism a = sample_mechanism(rng, 2, 4);
    const double eps = 0.8;
    const double eta = 0.1;
    const double delta = audit_replacement_ldp(a, eps);
    const ApproxToPureResult res = approx_to_pure_finite(a, eps, delta, eta);
    const double k = static_cast<double>(a.num_outputs());
    EXPECT_NEAR(res.eps_prime, eps + std::log1p(delta * k * std::exp(-eps) / eta),
                1e-12);
    for (std::size_t x = 0; x < a.num_inputs(); ++x) {
      EXPECT_LE(tv_distance(res.mechanism.row(x), a.row(x)), eta + 1e-12);
    }
    EXPECT_LE(audit_pure(res.mechanism), res.eps_prime + 1e-9);
  }
}

TEST(ApproxToPureTest, EtaEdgeCases) {
  const Mechanism rr = Mechanism::randomized_response(1.0);
  EXPECT_THROW(approx_to_pure_finite(rr, 1.0, 0.01, 0.0), std::invalid_argument);
  EXPECT_THROW(approx_to_pure_finite(rr, 1.0, 0.01, 1.5), std::invalid_argument);
  // eta = 1 replaces every row with the uniform one.
  const ApproxToPureResult flat = approx_to_pure_finite(rr, 1.0, 0.01, 1.0);
  EXPECT_NEAR(audit_pure(flat.mechanism), 0.0, 1e-12);
}

TEST(RRDecomposeTest, ReconstructsThePair) {
  DeterministicRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Mechanism r = sample_mechanism(rng, 2, 3, 0.25);
    const RRDecomposition dec = rr_decompose_pure(r, 0, 1);
    EXPECT_NEAR(dec.eps, pair_pure_eps(r.row(0), r.row(1)), 1e-12);
    const double w = std::exp(dec.eps) / (std::exp(dec.eps) + 1.0);
    for (std::size_t y = 0; y < 3; ++y) {
      EXPECT_NEAR(w * dec.q.row(0)[y] + (1.0 - w) * dec.q.row(1)[y], r.row(0)[y], 1e-9);
      EXPECT_NEAR((1.0 - w) * dec.q.row(0)[y] + w * dec.q.row(1)[y], r.row(1)[y], 1e-9);
    }
  }
}

TEST(RRDecomposeTest, OverrideAndDegenerateCases) {
  const Mechanism rr = Mechanism::randomized_response(1.3);
  const RRDecomposition loose = rr_decompose_pure(rr, 0, 1, 2.0);
  EXPECT_DOUBLE_EQ(loose.eps, 2.0);
  const double w = std::exp(2.0) / (std::exp(2.0) + 1.0);
  for (std::size_t y = 0; y < 2; ++y) {
    EXPECT_NEAR(w * loose.q.row(0)[y] + (1.0 - w) * loose.q.row(1)[y], rr.row(0)[y],
                1e-12);
  }
  EXPECT_THROW(rr_decompose_pure(rr, 0, 1, 0.5), std::invalid_argument);

  // Identical rows make the mixing system singular; both components collapse.
  const Mechanism flat = Mechanism::constant({"a", "b"}, {"0", "1"}, Dist({0.3, 0.7}));
  const RRDecomposition degenerate = rr_decompose_pure(flat, 0, 1);
  EXPECT_DOUBLE_EQ(degenerate.eps, 0.0);
  EXPECT_EQ(degenerate.q.row(0), flat.row(0));
  EXPECT_EQ(degenerate.q.row(1), flat.row(0));

  // A pair with unmatched supports has no finite pure level.
  const Mechanism skewed({"a", "b"}, {"0", "1"},
                         {Dist({1.0, 0.0}), Dist({0.5, 0.5})});
  EXPECT_THROW(rr_decompose_pure(skewed, 0, 1), std::invalid_argument);
}

TEST(LeakyRRTest, WeightsSumToOne) {
  const LeakyRRWeights w = LeakyRRWeights::make(1.0, 0.2);
  const double e = std::exp(1.0);
  EXPECT_NEAR(w.w_main, 0.8 * e / (e + 1.0), 1e-15);
  EXPECT_NEAR(w.w_cross, 0.8 / (e + 1.0), 1e-15);
  EXPECT_DOUBLE_EQ(w.w_leak, 0.2);
  EXPECT_NEAR(w.w_main + w.w_cross + w.w_leak, 1.0, 1e-15);
}

TEST(LeakyRRTest, VerifiesForwardConstructedWitness) {
  DeterministicRng rng(31);
  const PrivacyBudget budget{0.7, 0.15};
  const LeakyRRWeights w = LeakyRRWeights::make(budget.eps, budget.delta);
  const Dist q0 = sample_dist(rng, 3);
  const Dist q1 = sample_dist(rng, 3);
  const Dist a0 = sample_dist(rng, 3);
  const Dist a1 = sample_dist(rng, 3);
  std::vector<double> left(3);
  std::vector<double> right(3);
  for (std::size_t y = 0; y < 3; ++y) {
    left[y] = w.w_main * q0[y] + w.w_cross * q1[y] + w.w_leak * a0[y];
    right[y] = w.w_cross * q0[y] + w.w_main * q1[y] + w.w_leak * a1[y];
  }
  const Mechanism r({"x", "xp"}, {"0", "1", "2"}, {Dist(left), Dist(right)});
  const Mechanism q({"c0", "c1", "ax", "axp"}, {"0", "1", "2"}, {q0, q1, a0, a1});

  const LeakyRRCheck check = verify_leaky_rr(r, 0, 1, q, budget);
  EXPECT_TRUE(check.ok);
  EXPECT_LE(check.max_residual, 1e-12);
}

TEST(LeakyRRTest, RejectsTamperedWitness) {
  DeterministicRng rng(31);
  const PrivacyBudget budget{0.7, 0.15};
  const LeakyRRWeights w = LeakyRRWeights::make(budget.eps, budget.delta);
  const Dist q0 = sample_dist(rng, 3);
  const Dist q1 = sample_dist(rng, 3);
  const Dist a0 = sample_dist(rng, 3);
  const Dist a1 = sample_dist(rng, 3);
  std::vector<double> left(3);
  std::vector<double> right(3);
  for (std::size_t y = 0; y < 3; ++y) {
    left[y] = w.w_main * q0[y] + w.w_cross * q1[y] + w.w_leak * a0[y];
    right[y] = w.w_cross * q0[y] + w.w_main * q1[y] + w.w_leak * a1[y];
  }
  const Mechanism r({"x", "xp"}, {"0", "1", "2"}, {Dist(left), Dist(right)});

  // Move mass off q1's heaviest symbol; the mixture identity must break by
  // roughly w_main times the shift.
  std::vector<double> bent = q1.mass();
  std::size_t heaviest = 0;
  for (std::size_t y = 1; y < 3; ++y) {
    if (bent[y] > bent[heaviest]) heaviest = y;
  }
  bent[heaviest] -= 0.05;
  bent[(heaviest + 1) % 3] += 0.05;
  const Mechanism q_bad({"c0", "c1", "ax", "axp"}, {"0", "1", "2"},
                        {q0, Dist(bent), a0, a1});
  const LeakyRRCheck bad = verify_leaky_rr(r, 0, 1, q_bad, budget);
  EXPECT_FALSE(bad.ok);
  EXPECT_GT(bad.max_residual, 1e-3);

  // Shape violations are rejected outright.
  const Mechanism q_three({"c0", "c1", "ax"}, {"0", "1", "2"}, {q0, q1, a0});
  EXPECT_THROW(verify_leaky_rr(r, 0, 1, q_three, budget), std::invalid_argument);
}

}  // namespace
}  // namespace dpcalc
