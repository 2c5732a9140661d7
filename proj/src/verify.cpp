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

#include "dpcalc/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/converters.h"
#include "dpcalc/dist.h"
#include "dpcalc/ldp.h"
#include "dpcalc/mechanism.h"
#include "dpcalc/sampling.h"
#include "dpcalc/shuffle.h"
#include "dpcalc/subsample.h"

namespace dpcalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> NumericLabels(std::size_t k) {
  std::vector<std::string> labels(k);
  for (std::size_t i = 0; i < k; ++i) labels[i] = std::to_string(i);
  return labels;
}

// Accumulates the worst elementary comparison of a check.  Orientation:
// margin >= -tolerance means pass, so upper bounds fold via bound - value,
// lower bounds via value - floor, and equalities via -|a - b|.
class Worst {
 public:
  void Bound(double bound, double value) { Fold(bound - value, bound, value); }
  void Floor(double floor, double value) { Fold(value - floor, floor, value); }
  void Equality(double want, double got) {
    Fold(-std::abs(want - got), want, got);
  }

  CheckResult Finish(std::string id, std::string claim, nlohmann::json inputs,
                     double tolerance) const {
    CheckResult r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.inputs = std::move(inputs);
    r.expected = expected_;
    r.achieved = achieved_;
    r.margin = margin_;
    r.tolerance = tolerance;
    r.pass = margin_ >= -tolerance;
    r.count = count_;
    return r;
  }

 private:
  void Fold(double margin, double expected, double achieved) {
    ++count_;
    if (margin < margin_) {
      margin_ = margin;
      expected_ = expected;
      achieved_ = achieved;
    }
  }

  double margin_ = kInf;
  double expected_ = 0.0;
  double achieved_ = 0.0;
  int64_t count_ = 0;
};

// ---------------------------------------------------------------------------
// Independent oracles.  These deliberately avoid the library's closed forms
// so a bug in the fast path cannot hide inside its own re-evaluation.
// ---------------------------------------------------------------------------

// Worst additive gap max_S P(S) - e^eps Q(S) by enumerating all 2^k subsets.
double SubsetOracle(const Dist& p, const Dist& q, double eps) {
  const std::size_t k = p.size();
  const double scale = std::exp(eps);
  double worst = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    double pm = 0.0;
    double qm = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      if (mask & (std::uint64_t{1} << y)) {
        pm += p[y];
        qm += q[y];
      }
    }
    worst = std::max(worst, pm - scale * qm);
  }
  return worst;
}

// Distribution over ordered report tuples when each user i draws
// independently from rows[i] and a uniformly random permutation then assigns
// reports to output positions.
std::map<std::vector<int>, double> OrderedShuffleOracle(
    const std::vector<Dist>& rows) {
  const int n = static_cast<int>(rows.size());
  const int k = static_cast<int>(rows[0].size());
  double n_factorial = 1.0;
  for (int i = 2; i <= n; ++i) n_factorial *= i;

  std::map<std::vector<int>, double> out;
  std::vector<int> tuple(n, 0);
  while (true) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double total = 0.0;
    do {
      // User i's report lands at output position perm[i].
      double prob = 1.0;
      for (int i = 0; i < n; ++i) prob *= rows[i][tuple[perm[i]]];
      total += prob;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out[tuple] = total / n_factorial;

    int pos = n - 1;
    while (pos >= 0 && tuple[pos] == k - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
  return out;
}

double MapHockeyStick(const std::map<std::vector<int>, double>& p,
                      const std::map<std::vector<int>, double>& q,
                      double eps) {
  const double scale = std::exp(eps);
  double total = 0.0;
  for (const auto& [key, mass] : p) {
    auto it = q.find(key);
    const double qm = it == q.end() ? 0.0 : it->second;
    const double gap = qm > 0.0 ? mass - scale * qm : mass;
    if (gap > 0.0) total += gap;
  }
  return std::min(total, 1.0);
}

// ---------------------------------------------------------------------------
// dp suite
// ---------------------------------------------------------------------------

CheckResult CheckHockeyStickOracle(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.hockey-stick-subset-oracle");
  const std::vector<double> eps_grid = {0.0, 0.3, 1.0, 3.0};
  Worst worst;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 12));
    const Dist p = sample_dist(rng, k, 0.05);
    const Dist q = sample_dist(rng, k, 0.05);
    for (double eps : eps_grid) {
      worst.Equality(SubsetOracle(p, q, eps), hockey_stick(p, q, eps));
    }
    // The optimal distinguishing event is a single subset, so the additive
    // gap at eps = 0 must coincide with total variation distance.
    worst.Equality(tv_distance(p, q), hockey_stick(p, q, 0.0));
  }
  return worst.Finish(
      "dp.hockey-stick-subset-oracle",
      "per-outcome hockey-stick sum matches exhaustive subset search, and at "
      "eps = 0 it equals total variation distance",
      {{"trials", 100}, {"eps_grid", eps_grid}, {"max_outputs", 12}}, 1e-12);
}

CheckResult CheckHockeyStickMonotone(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.hockey-stick-monotone");
  Worst worst;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 8));
    const Dist p = sample_dist(rng, k, 0.05);
    const Dist q = sample_dist(rng, k, 0.05);
    double prev = hockey_stick(p, q, 0.0);
    for (double eps = 0.25; eps <= 4.0 + 1e-9; eps += 0.25) {
      const double cur = hockey_stick(p, q, eps);
      worst.Bound(prev, cur);  // nonincreasing in eps
      prev = cur;
    }
  }
  return worst.Finish("dp.hockey-stick-monotone",
                      "the additive gap is nonincreasing in eps",
                      {{"trials", 100}, {"eps_step", 0.25}}, 1e-12);
}

CheckResult CheckPostprocessing(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.postprocessing");
  Worst worst;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(3, 5));
    const Mechanism m = sample_mechanism(rng, 2, k, 0.1);
    // Random surjection onto two buckets.
    std::vector<std::string> targets(k);
    for (std::size_t y = 0; y < k; ++y) {
      targets[y] = rng.uniform() < 0.5 ? "a" : "b";
    }
    targets[k - 1] = targets[0] == "a" ? "b" : "a";
    const Mechanism merged = postprocess(m, targets);
    for (double eps : {0.0, 0.5, 1.0}) {
      worst.Bound(audit_replacement_ldp(m, eps),
                  audit_replacement_ldp(merged, eps));
    }
  }
  return worst.Finish("dp.postprocessing",
                      "merging outputs never increases the audited delta",
                      {{"trials", 60}, {"eps_grid", {0.0, 0.5, 1.0}}}, 1e-12);
}

CheckResult CheckPureBudgetSplit(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.pure-budget-split");
  Worst worst;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const Mechanism m = sample_mechanism(rng, d, k, 0.3);
    const double eps0 = audit_pure(m);
    if (!std::isfinite(eps0) || eps0 <= 1e-6) continue;
    for (double delta : {0.01, 0.1, std::min(0.5, eps0)}) {
      if (delta > eps0) continue;
      const PrivacyBudget split = pure_to_approx(eps0, delta);
      worst.Bound(split.delta, audit_replacement_ldp(m, split.eps));
    }
  }
  return worst.Finish(
      "dp.pure-budget-split",
      "a mechanism with pure level eps0 audits within delta at eps0 - delta",
      {{"trials", 200}, {"delta_grid", "0.01, 0.1, min(0.5, eps0)"}}, 1e-12);
}

CheckResult CheckApproxToPure(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.approx-to-pure");
  Worst worst;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const Mechanism m = sample_mechanism(rng, d, k, 0.0);
    const double eps = rng.uniform(0.2, 1.5);
    const double delta = audit_replacement_ldp(m, eps);
    for (double eta : {0.05, 0.2}) {
      const ApproxToPureResult res = approx_to_pure_finite(m, eps, delta, eta);
      // Output perturbation stays within eta in total variation per input.
      for (std::size_t x = 0; x < d; ++x) {
        worst.Bound(eta, tv_distance(m.row(x), res.mechanism.row(x)));
      }
      // The advertised finite pure level really holds.
      worst.Bound(res.eps_prime, audit_pure(res.mechanism));
      // Closed form for the advertised level.
      worst.Equality(
          eps + std::log1p(delta * static_cast<double>(k) * std::exp(-eps) / eta),
          res.eps_prime);
      // Simple upper bound in the binary-output case.
      if (k == 2) worst.Bound(eps + 2.0 * delta / eta, res.eps_prime);
    }
  }
  return worst.Finish(
      "dp.approx-to-pure",
      "mixing with uniform noise rate eta yields a finite pure level of "
      "eps + ln(1 + delta*k*e^-eps/eta) while moving each row at most eta",
      {{"trials", 200}, {"eta_grid", {0.05, 0.2}}}, 1e-9);
}

CheckResult CheckRRRoundTrip(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.rr-round-trip");
  Worst worst;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const Mechanism m = sample_mechanism(rng, 2, k, 0.25);
    const double tight = pair_pure_eps(m.row(0), m.row(1));
    if (!std::isfinite(tight) || tight <= 1e-9) continue;
    for (double slack : {0.0, 0.35}) {
      const std::optional<double> override_eps =
          slack == 0.0 ? std::optional<double>()
                       : std::optional<double>(tight + slack);
      const RRDecomposition dec = rr_decompose_pure(m, 0, 1, override_eps);
      const double w = std::exp(dec.eps) / (std::exp(dec.eps) + 1.0);
      // Reconstruct both rows from the decomposition and compare.
      for (std::size_t y = 0; y < k; ++y) {
        worst.Equality(m.row(0)[y],
                       w * dec.q.row(0)[y] + (1.0 - w) * dec.q.row(1)[y]);
        worst.Equality(m.row(1)[y],
                       w * dec.q.row(1)[y] + (1.0 - w) * dec.q.row(0)[y]);
      }
    }
  }
  return worst.Finish(
      "dp.rr-round-trip",
      "a pure pair factors through binary randomized response: mixing the "
      "extracted channel rows with weight e^eps/(e^eps+1) reproduces both "
      "original rows",
      {{"trials", 200}, {"eps_slack", {0.0, 0.35}}}, 1e-9);
}

CheckResult CheckLeakyRRVerify(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "dp.leaky-rr-verify");
  int bad_outcomes = 0;
  int comparisons = 0;
  double worst_residual = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const double eps = rng.uniform(0.2, 1.2);
    const double delta = rng.uniform(0.05, 0.3);
    const LeakyRRWeights weights = LeakyRRWeights::make(eps, delta);
    const Dist q0 = sample_dist(rng, k, 0.05);
    const Dist q1 = sample_dist(rng, k, 0.05);
    const Dist announce0 = sample_dist(rng, k, 0.05);
    const Dist announce1 = sample_dist(rng, k, 0.05);
    // Forward-construct the two honest rows from the witness pieces.
    std::vector<double> r0(k), r1(k);
    for (std::size_t y = 0; y < k; ++y) {
      r0[y] = weights.w_main * q0[y] + weights.w_cross * q1[y] +
              weights.w_leak * announce0[y];
      r1[y] = weights.w_main * q1[y] + weights.w_cross * q0[y] +
              weights.w_leak * announce1[y];
    }
    const Mechanism r({"0", "1"}, NumericLabels(k),
                      {Dist(std::move(r0)), Dist(std::move(r1))});
    const std::vector<std::string> witness_inputs = {"q0", "q1", "announce0",
                                                     "announce1"};
    const Mechanism witness(witness_inputs, NumericLabels(k),
                            {q0, q1, announce0, announce1});
    const LeakyRRCheck good = verify_leaky_rr(r, 0, 1, witness, {eps, delta});
    ++comparisons;
    if (!good.ok) ++bad_outcomes;
    worst_residual = std::max(worst_residual, good.max_residual);

    // Perturb one witness row (shift mass off its heaviest symbol);
    // verification must notice.
    std::vector<Dist> pieces = {q0, q1, announce0, announce1};
    const std::size_t which = static_cast<std::size_t>(rng.uniform_int(0, 3));
    std::vector<double> tampered_mass = pieces[which].mass();
    const std::size_t donor = static_cast<std::size_t>(
        std::max_element(tampered_mass.begin(), tampered_mass.end()) -
        tampered_mass.begin());
    const std::size_t taker = (donor + 1) % k;
    const double shift = 0.1 * tampered_mass[donor] + 1e-3;
    tampered_mass[donor] -= shift;
    tampered_mass[taker] += shift;
    pieces[which] = Dist(std::move(tampered_mass));
    const Mechanism tampered(witness_inputs, NumericLabels(k), pieces);
    const LeakyRRCheck bad = verify_leaky_rr(r, 0, 1, tampered, {eps, delta});
    ++comparisons;
    if (bad.ok) ++bad_outcomes;
  }
  CheckResult res;
  res.id = "dp.leaky-rr-verify";
  res.claim =
      "honest leaky-randomized-response witnesses verify and tampered "
      "witnesses are rejected";
  res.inputs = {{"trials", 100}, {"worst_honest_residual", worst_residual}};
  res.expected = 0.0;
  res.achieved = static_cast<double>(bad_outcomes);
  res.margin = -res.achieved;
  res.tolerance = 0.0;
  res.pass = bad_outcomes == 0;
  res.count = comparisons;
  return res;
}

// ---------------------------------------------------------------------------
// ldp suite
// ---------------------------------------------------------------------------

CheckResult CheckReplacementToDeletion(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "ldp.replacement-to-deletion");
  Worst worst;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const Mechanism m = sample_mechanism(rng, d, k, 0.1);
    const double eps = rng.uniform(0.1, 1.0);
    const double delta = audit_replacement_ldp(m, eps);
    const std::size_t x0 =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<int64_t>(d) - 1));
    const DeletionView view = replacement_to_deletion(m, x0, eps, delta);
    worst.Bound(view.budget.delta,
                audit_deletion_ldp(m, view.reference, view.budget.eps));
  }
  return worst.Finish(
      "ldp.replacement-to-deletion",
      "a replacement guarantee transfers verbatim to the deletion model with "
      "any fixed row as the reference",
      {{"trials", 200}}, 1e-12);
}

CheckResult CheckDeletionToReplacement(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "ldp.deletion-to-replacement");
  Worst worst;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
    const Mechanism m = sample_mechanism(rng, d, k, 0.05);
    const double eps = rng.uniform(0.1, 1.0);
    const Dist reference = Dist::uniform(k);
    const double delta = audit_deletion_ldp(m, reference, eps);
    const PrivacyBudget rep = deletion_to_replacement_budget(eps, delta);
    worst.Bound(rep.delta, audit_replacement_ldp(m, rep.eps));
  }
  return worst.Finish(
      "ldp.deletion-to-replacement",
      "a deletion guarantee at (eps, delta) implies a replacement guarantee "
      "at (2*eps, (e^eps + 1)*delta)",
      {{"trials", 500}}, 1e-9);
}

CheckResult CheckTrim(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "ldp.trim");
  Worst worst;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const Mechanism m = sample_mechanism(rng, d, k, 0.2);
    const Dist reference = Dist::uniform(k);
    const double eps = rng.uniform(0.2, 1.5);
    const double delta = audit_deletion_ldp(m, reference, eps);
    const Mechanism trimmed = trim_to_pure_deletion(m, reference, eps, delta);
    // After trimming the deletion guarantee is pure at the same eps ...
    worst.Bound(0.0, audit_deletion_ldp(trimmed, reference, eps));
    // ... and no row moved by more than the audited delta.
    for (std::size_t x = 0; x < d; ++x) {
      worst.Bound(delta, tv_distance(m.row(x), trimmed.row(x)));
    }
  }
  return worst.Finish(
      "ldp.trim",
      "rounding an approximate deletion guarantee to a pure one keeps every "
      "row within the audited delta in total variation and audits to zero at "
      "the same eps",
      {{"trials", 500}}, 1e-9);
}

CheckResult CheckSymmetrize(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "ldp.symmetrize");
  Worst worst;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
    std::vector<Mechanism> family;
    family.reserve(n);
    double worst_pure = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      Mechanism m = sample_mechanism(rng, 2, k, 0.3);
      worst_pure = std::max(worst_pure, audit_pure(m));
      family.push_back(std::move(m));
    }
    const SymmetricCompilation comp = symmetrize(family, CoinModel::kPrivate);
    worst.Equality(worst_pure, audit_pure(*comp.combined));
    worst.Equality(
        static_cast<double>(coupon_rounds(static_cast<int64_t>(n), 1.0 / 6.0)),
        static_cast<double>(comp.n_prime));
  }
  return worst.Finish(
      "ldp.symmetrize",
      "the private-coin symmetric compilation has pure level exactly equal "
      "to the worst member of the family, and the inflated round count "
      "matches the coupon-collector bound at failure probability 1/6",
      {{"trials", 50}}, 1e-9);
}

CheckResult CheckCouponRounds(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "ldp.coupon-rounds");
  Worst worst;
  const int trials = 100000;
  nlohmann::json observed = nlohmann::json::array();
  for (int n : {10, 100}) {
    const int64_t rounds = coupon_rounds(n, 1.0 / 6.0);
    int failures = 0;
    std::vector<bool> seen(n);
    for (int t = 0; t < trials; ++t) {
      std::fill(seen.begin(), seen.end(), false);
      int distinct = 0;
      for (int64_t r = 0; r < rounds && distinct < n; ++r) {
        const int pick = static_cast<int>(rng.uniform_int(0, n - 1));
        if (!seen[pick]) {
          seen[pick] = true;
          ++distinct;
        }
      }
      if (distinct < n) ++failures;
    }
    const double rate = static_cast<double>(failures) / trials;
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(p * (1.0 - p) / trials);
    worst.Bound(p + 3.0 * sigma, rate);
    observed.push_back({{"n", n},
                        {"rounds", rounds},
                        {"failure_rate", rate},
                        {"limit", p + 3.0 * sigma}});
  }
  return worst.Finish(
      "ldp.coupon-rounds",
      "ceil(n*ln(n/p)) uniform draws collect all n coupons except with "
      "probability at most p = 1/6 (Monte Carlo, three-sigma slack)",
      {{"trials_per_n", trials}, {"instances", observed}}, 0.0);
}

CheckResult CheckGroupositionExact(uint64_t seed) {
  (void)seed;  // fully deterministic
  Worst worst;
  double worst_tail = 0.0;
  for (int k = 1; k <= 6; ++k) {
    for (double eps : {0.2, 0.5}) {
      for (double delta_prime : {0.1, 0.01}) {
        const double eps_prime = grouposition_eps({k, eps, delta_prime, 0.0});
        worst.Equality(
            k * eps * eps / 2.0 +
                eps * std::sqrt(2.0 * k * std::log(1.0 / delta_prime)),
            eps_prime);
        // Exact privacy-loss tail for k independent binary randomized
        // responses between the all-zeros and all-ones inputs: when j of the
        // k reports match the true input the loss equals (2j - k) * eps.
        const double w = std::exp(eps) / (std::exp(eps) + 1.0);
        double tail = 0.0;
        for (int j = 0; j <= k; ++j) {
          double binom = 1.0;
          for (int i = 0; i < j; ++i) binom = binom * (k - i) / (i + 1);
          const double prob = binom * std::pow(w, j) * std::pow(1.0 - w, k - j);
          if ((2.0 * j - k) * eps > eps_prime) tail += prob;
        }
        worst.Bound(delta_prime, tail);
        worst_tail = std::max(worst_tail, tail);
      }
    }
  }
  // Budget variant: the additive slack accumulates as delta + k * delta',
  // clamped to one.
  const PrivacyBudget b = grouposition_budget({2, 0.3, 0.01, 0.05});
  worst.Equality(0.05 + 2 * 0.01, b.delta);
  worst.Equality(grouposition_eps({2, 0.3, 0.01, 0.0}), b.eps);
  const PrivacyBudget clamped = grouposition_budget({3, 0.3, 0.4, 0.9});
  worst.Equality(1.0, clamped.delta);
  return worst.Finish(
      "ldp.grouposition-exact",
      "the k-fold budget k*eps^2/2 + eps*sqrt(2k*ln(1/delta')) caps the "
      "exact privacy-loss tail of k independent binary randomized responses, "
      "and the budget variant accumulates delta + k*delta' clamped to one",
      {{"k_range", {1, 6}},
       {"eps", {0.2, 0.5}},
       {"delta_prime", {0.1, 0.01}},
       {"worst_tail", worst_tail}},
      1e-9);
}

CheckResult CheckComposeBoundShape(uint64_t seed) {
  (void)seed;
  Worst worst;
  const std::vector<double> grid = {0.1, 0.25, 0.5, 1.0, 2.0, 3.0};
  for (double e1 : grid) {
    for (double e2 : grid) {
      const double bound = compose_eps(e1, e2);
      worst.Bound(std::min(e1, e2), bound);
      worst.Bound(e1 * e2 / 2.0, bound);
      worst.Floor(0.0, bound);
      worst.Equality(bound, compose_eps(e2, e1));
    }
    // An unbounded second stage degenerates to the first stage's level.
    worst.Equality(e1, compose_eps(e1, kInf));
  }
  return worst.Finish(
      "ldp.compose-bound-shape",
      "the cascade level ln((e^(a+b)+1)/(e^a+e^b)) is symmetric, at most "
      "min(a, b), at most a*b/2, and degenerates correctly at infinity",
      {{"grid", grid}}, 1e-12);
}

CheckResult CheckComposeTightness(uint64_t seed) {
  (void)seed;
  Worst worst;
  const std::vector<double> grid = {0.25, 0.5, 1.0, 2.0};
  nlohmann::json instances = nlohmann::json::array();
  for (double e1 : grid) {
    for (double e2 : grid) {
      const double bound = compose_eps(e1, e2);
      const double achieved = compose_tightness_search(e1, e2, 400);
      // Sound: no searched instance exceeds the bound.
      worst.Bound(bound, achieved);
      // Tight: the search gets within 1e-3 of the bound.
      worst.Bound(1e-3, bound - achieved);
      instances.push_back(
          {{"eps1", e1}, {"eps2", e2}, {"bound", bound}, {"achieved", achieved}});
    }
  }
  return worst.Finish(
      "ldp.compose-tightness",
      "an exhaustive grid search over first stages audits at most the "
      "cascade bound and approaches it within 1e-3, so the bound is exact",
      {{"grid", grid}, {"search_grid", 400}, {"instances", instances}}, 1e-12);
}

CheckResult CheckPurification(uint64_t seed) {
  (void)seed;
  Worst worst;
  const double eps = 0.1;
  const double delta = 1e-8;
  const int64_t n = 100;
  const PurificationBounds at12 = purification_bounds({eps, delta, n, 12});
  worst.Equality(10.0 * eps, at12.ldp_eps);
  const double direct_tv =
      n * (std::pow(0.5 + eps, 12.0) +
           6.0 * 12.0 * delta * std::exp(eps) / (1.0 - std::exp(-eps)));
  worst.Equality(direct_tv, at12.tv_bound);
  worst.Equality(std::log2(12.0), at12.comm_bits);
  // More rounds tightens the simulation when the leakage term is negligible.
  const PurificationBounds at30 = purification_bounds({eps, delta, n, 30});
  worst.Bound(at12.tv_bound, at30.tv_bound);
  // Optional public-randomness accounting: t * (total bits per round).
  const std::vector<int64_t> widths = {3, 5};
  const PurificationBounds with_bits =
      purification_bounds({eps, delta, n, 12}, &widths);
  worst.Equality(12.0 * 8.0, with_bits.public_random_bits.value());
  // Out-of-window or infeasible round counts are rejected.
  double rejected = 0.0;
  for (const PurificationParams& bad :
       {PurificationParams{eps, delta, n, 5},
        PurificationParams{eps, delta, n, 30000},
        PurificationParams{eps, 1e-2, n, 12}}) {
    try {
      purification_bounds(bad);
    } catch (const std::invalid_argument&) {
      rejected += 1.0;
    }
  }
  worst.Equality(3.0, rejected);
  return worst.Finish(
      "ldp.purification",
      "the repetition calculator reports pure level 10*eps, the closed-form "
      "variation bound n*((1/2+eps)^t + 6*t*delta*e^eps/(1-e^-eps)), log2(t) "
      "communication, optional public-coin totals, and rejects round counts "
      "outside the feasible window",
      {{"eps", eps}, {"delta", delta}, {"n", n}}, 1e-12);
}

// ---------------------------------------------------------------------------
// counterexample suite
// ---------------------------------------------------------------------------

CheckResult CheckCounterexampleInstance(uint64_t seed) {
  (void)seed;
  Worst worst;
  const double eps = 0.25;
  const double delta = 1.0 / 6.0;
  const Mechanism witness = build_counterexample(eps, delta);
  const Dist reference = Dist::uniform(3);
  // Deletion guarantee holds at (eps, delta) exactly.
  const double deletion = audit_deletion_ldp(witness, reference, eps);
  worst.Bound(delta, deletion);
  // Replacement at doubled eps needs exactly (e^eps + 1) * delta; the slack
  // is realized pointwise at the middle outcome.
  const double replacement = audit_replacement_ldp(witness, 2.0 * eps);
  worst.Equality((std::exp(eps) + 1.0) * delta, replacement);
  const std::size_t mid = witness.output_index("2").value();
  worst.Equality(witness.row(1)[mid] - std::exp(2.0 * eps) * witness.row(0)[mid],
                 (std::exp(eps) + 1.0) * delta);
  // That beats the naive 2*delta by a comfortable margin.
  worst.Floor(0.047, replacement - 2.0 * delta);
  return worst.Finish(
      "cx.instance",
      "at eps = 1/4, delta = 1/6 the witness satisfies the deletion "
      "guarantee yet needs (e^eps + 1)*delta at doubled eps, beating 2*delta "
      "by at least 0.047",
      {{"eps", eps},
       {"delta", delta},
       {"deletion_audit", deletion},
       {"replacement_audit", replacement}},
      1e-9);
}

CheckResult CheckCounterexampleGridIdentity(uint64_t seed) {
  (void)seed;
  Worst identity;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double eps = 0.5 * i / 20.0;
      const double delta = 0.2 * j / 20.0;
      const Mechanism witness = build_counterexample(eps, delta);
      const double replacement = audit_replacement_ldp(witness, 2.0 * eps);
      identity.Equality((std::exp(eps) + 1.0) * delta, replacement);
      const std::size_t mid = witness.output_index("2").value();
      identity.Equality(
          witness.row(1)[mid] - std::exp(2.0 * eps) * witness.row(0)[mid],
          (std::exp(eps) + 1.0) * delta);
    }
  }
  return identity.Finish(
      "cx.grid-identity",
      "across a 20x20 parameter grid the replacement audit at doubled eps "
      "equals (e^eps + 1)*delta exactly, realized pointwise at the middle "
      "outcome",
      {{"grid", "20x20"}, {"eps_max", 0.5}, {"delta_max", 0.2}}, 1e-9);
}

CheckResult CheckCounterexampleRefutation(uint64_t seed) {
  (void)seed;
  Worst refute;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double eps = 0.5 * i / 20.0;
      const double delta = 0.2 * j / 20.0;
      // (e^eps + 1) * delta > 2 * delta whenever eps, delta > 0.
      refute.Floor(0.0, (std::exp(eps) - 1.0) * delta);
    }
  }
  return refute.Finish(
      "cx.grid-refutation",
      "the required replacement delta exceeds the naive doubling 2*delta at "
      "every grid point, so no factor-2 conversion can be correct",
      {{"grid", "20x20"}}, 1e-15);
}

CheckResult CheckCounterexampleDeletionRange(uint64_t seed) {
  (void)seed;
  Worst del;
  int covered = 0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double eps = 0.5 * i / 20.0;
      const double delta = 0.2 * j / 20.0;
      // The deletion premise holds wherever the third outcome keeps enough
      // mass to absorb the shifted delta, i.e. 3*delta <= 2 - e^eps; beyond
      // that the witness trades the deletion slack for a larger gap.
      if (3.0 * delta > 2.0 - std::exp(eps)) continue;
      ++covered;
      const Mechanism witness = build_counterexample(eps, delta);
      del.Bound(delta, audit_deletion_ldp(witness, Dist::uniform(3), eps));
    }
  }
  return del.Finish(
      "cx.grid-deletion-audit",
      "on the subrange where the construction keeps a valid third-outcome "
      "floor (3*delta <= 2 - e^eps) the deletion audit never exceeds delta",
      {{"grid", "20x20"}, {"points_covered", covered}}, 1e-9);
}

// ---------------------------------------------------------------------------
// shuffle suite
// ---------------------------------------------------------------------------

CheckResult CheckShuffleToLocal(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "shuffle.to-local");
  Worst worst;
  for (int trial = 0; trial < 50; ++trial) {
    const Mechanism r = sample_mechanism(rng, 2, 3, 0.15);
    const double eps_s = rng.uniform(0.05, 1.0);
    for (int64_t n = 2; n <= 8; ++n) {
      const double delta_s = audit_shuffle(r, n, eps_s);
      const PrivacyBudget local = shuffle_to_ldp_budget(eps_s, delta_s, n);
      worst.Bound(local.delta, audit_replacement_ldp(r, local.eps));
    }
  }
  return worst.Finish(
      "shuffle.to-local",
      "if the shuffled protocol is (eps, delta)-private then each local "
      "randomizer is (eps + ln n, delta)-private",
      {{"randomizers", 50}, {"n_range", {2, 8}}}, 1e-9);
}

CheckResult CheckShufflePersistence(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "shuffle.persistence");
  Worst worst;
  for (int trial = 0; trial < 20; ++trial) {
    const Mechanism r = sample_mechanism(rng, 2, 3, 0.3);
    const double eps_l = audit_pure(r);
    if (!std::isfinite(eps_l)) continue;
    for (int64_t n : {2, 5, 9}) {
      worst.Bound(0.0, audit_shuffle(r, n, eps_l));
    }
  }
  for (double eps : {0.25, 0.5}) {
    const Mechanism rr = Mechanism::randomized_response(eps);
    for (int64_t n : {2, 5, 9, 20, 40, 60}) {
      worst.Bound(0.0, audit_shuffle(rr, n, eps));
    }
  }
  return worst.Finish(
      "shuffle.persistence",
      "shuffling never hurts: at the local pure level the shuffled audit is "
      "exactly zero for every n",
      {{"random_trials", 20}, {"rr_eps", {0.25, 0.5}}}, 1e-9);
}

CheckResult CheckShuffleMonotone(uint64_t seed) {
  (void)seed;
  Worst worst;
  for (double eps_l : {0.5, 1.0}) {
    const Mechanism rr = Mechanism::randomized_response(eps_l);
    for (double eps : {0.1, 0.25}) {
      double prev = audit_shuffle(rr, 1, eps);
      for (int64_t n = 2; n <= 12; ++n) {
        const double cur = audit_shuffle(rr, n, eps);
        worst.Bound(prev, cur);
        prev = cur;
      }
    }
  }
  return worst.Finish(
      "shuffle.monotone-in-n",
      "for randomized response the shuffled audit at fixed eps is "
      "nonincreasing as more users join",
      {{"rr_eps", {0.5, 1.0}}, {"eps", {0.1, 0.25}}, {"n_max", 12}}, 1e-12);
}

CheckResult CheckShuffleSufficiency(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "shuffle.sufficiency");
  Worst worst;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const Mechanism r = sample_mechanism(rng, 2, k, 0.1);
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    // Pick a dataset and a one-position substitution.
    std::vector<int> xs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = static_cast<int>(rng.uniform_int(0, 1));
    }
    std::vector<int> ys = xs;
    const int pos = static_cast<int>(rng.uniform_int(0, n - 1));
    ys[pos] = 1 - ys[pos];

    std::vector<Dist> rows_x, rows_y;
    CountVector cx{std::vector<int64_t>(2, 0)};
    CountVector cy{std::vector<int64_t>(2, 0)};
    for (int i = 0; i < n; ++i) {
      rows_x.push_back(r.row(static_cast<std::size_t>(xs[i])));
      rows_y.push_back(r.row(static_cast<std::size_t>(ys[i])));
      ++cx.counts[xs[i]];
      ++cy.counts[ys[i]];
    }
    const auto ord_x = OrderedShuffleOracle(rows_x);
    const auto ord_y = OrderedShuffleOracle(rows_y);
    const CountDist cnt_x = shuffled_distribution(r, cx);
    const CountDist cnt_y = shuffled_distribution(r, cy);
    for (double eps : {0.0, 0.2, 0.7}) {
      worst.Equality(MapHockeyStick(ord_x, ord_y, eps),
                     hockey_stick(cnt_x, cnt_y, eps));
      worst.Equality(MapHockeyStick(ord_y, ord_x, eps),
                     hockey_stick(cnt_y, cnt_x, eps));
    }
  }
  return worst.Finish(
      "shuffle.count-sufficiency",
      "auditing over output count vectors matches an oracle that enumerates "
      "ordered report tuples under a uniformly random permutation",
      {{"trials", 12}, {"eps_grid", {0.0, 0.2, 0.7}}}, 1e-12);
}

CheckResult CheckAmplificationFormula(uint64_t seed) {
  (void)seed;
  Worst worst;
  const double target_delta = 0.05;
  nlohmann::json instances = nlohmann::json::array();
  for (double eps_l : {0.25, 0.5}) {
    const Mechanism rr = Mechanism::randomized_response(eps_l);
    for (int64_t n : {40, 60}) {
      const double bound = amplification_formula(eps_l, target_delta, n);
      const double exact = audit_shuffle(rr, n, bound);
      worst.Bound(target_delta, exact);
      instances.push_back({{"eps_l", eps_l},
                           {"n", n},
                           {"bound_eps", bound},
                           {"exact_delta", exact}});
    }
  }
  return worst.Finish(
      "shuffle.amplification-formula",
      "the closed-form amplified eps for randomized response upper-bounds "
      "the exact shuffled audit at the target delta",
      {{"target_delta", target_delta}, {"instances", instances}}, 1e-9);
}

CheckResult CheckAmplificationRobust(uint64_t seed) {
  (void)seed;
  Worst worst;
  const double eps_l = 0.25;
  const double delta = 0.3;
  // Fewer honest participants -> weaker amplification -> larger eps.
  const double half = amplification_eps({eps_l, delta, 200, 0.5});
  const double full = amplification_eps({eps_l, delta, 200, 1.0});
  worst.Floor(0.0, half - full);
  worst.Bound(eps_l, full);  // amplification actually helps at this size
  // End-to-end report on a small feasible instance.
  const Mechanism rr = Mechanism::randomized_response(eps_l);
  const AmplificationReport report =
      check_amplification_vs_exact(rr, 60, delta, 1.0);
  worst.Bound(report.target_delta, report.exact_delta);
  worst.Floor(0.0, report.margin);
  worst.Equality(report.ok ? 1.0 : 0.0, 1.0);
  return worst.Finish(
      "shuffle.amplification-robust",
      "shrinking the honest fraction weakens the amplification bound, and "
      "the end-to-end report confirms the exact audit stays within the "
      "target delta",
      {{"eps_l", eps_l}, {"delta", delta}, {"n", 200}, {"report_n", 60}},
      1e-12);
}

// ---------------------------------------------------------------------------
// subsample suite
// ---------------------------------------------------------------------------

CheckResult CheckSubsampleTightness(uint64_t seed) {
  (void)seed;
  Worst worst;
  nlohmann::json instances = nlohmann::json::array();
  const std::vector<std::pair<int, int>> shapes = {
      {2, 1}, {3, 1}, {4, 1}, {4, 2}};
  for (const auto& [n, m] : shapes) {
    for (double eps : {0.5, 1.0}) {
      const SubsampleTightness t = verify_subsample_tightness(eps, n, m);
      worst.Equality(t.bound_eps, t.audited_eps);
      instances.push_back({{"n", n},
                           {"m", m},
                           {"eps", eps},
                           {"bound", t.bound_eps},
                           {"audited", t.audited_eps}});
    }
  }
  return worst.Finish(
      "subsample.tightness",
      "for the single-record randomized-response family the audited pure "
      "level of the subsampled mechanism equals ln(1 + (m/n)(e^eps - 1)) "
      "exactly",
      {{"instances", instances}}, 1e-9);
}

CheckResult CheckSubsampleSoundness(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "subsample.soundness");
  Worst worst;
  const std::vector<std::string> records = {"a", "b"};
  for (int trial = 0; trial < 200; ++trial) {
    const int64_t n = rng.uniform_int(2, 3);
    const int64_t m = rng.uniform_int(1, n - 1);
    const TupleSpace base_space = enumerate_tuples(records, m);
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
    const Mechanism shaped =
        sample_mechanism(rng, base_space.labels.size(), k, 0.1);
    const Mechanism base(base_space.labels, shaped.output_labels(),
                         shaped.rows());
    const double eps = rng.uniform(0.2, 1.0);
    // The subsample keeps record order, so after conditioning on the chosen
    // positions two n-tuple neighbors can hand the base m-tuples that agree
    // only as multisets.  Auditing the base over every ordered input pair
    // covers all of those couplings.
    const double delta = audit_replacement_ldp(base, eps);
    const PrivacyBudget sub = subsample_budget(
        eps, delta, static_cast<double>(m) / static_cast<double>(n));
    const Mechanism big = build_subsampled(base, records, n, m);
    const TupleSpace big_space = enumerate_tuples(records, n);
    worst.Bound(sub.delta, audit_central(big, big_space.neighbors, sub.eps));
  }
  return worst.Finish(
      "subsample.soundness",
      "sampling m of n records scales a base guarantee that holds across all "
      "input pairs to (ln(1 + p(e^eps - 1)), p*delta) with p = m/n",
      {{"trials", 200}}, 1e-9);
}

CheckResult CheckSubsampleBudgetShape(uint64_t seed) {
  auto rng = DeterministicRng::for_check(seed, "subsample.budget-shape");
  Worst worst;
  // Full-sample identity: p = 1 changes nothing.
  const PrivacyBudget full = subsample_budget(0.7, 0.01, 1.0);
  worst.Equality(0.7, full.eps);
  worst.Equality(0.01, full.delta);
  const std::vector<std::string> records = {"a", "b"};
  const TupleSpace space = enumerate_tuples(records, 2);
  const Mechanism shaped = sample_mechanism(rng, space.labels.size(), 3, 0.2);
  const Mechanism base(space.labels, shaped.output_labels(), shaped.rows());
  const Mechanism same = build_subsampled(base, records, 2, 2);
  for (std::size_t x = 0; x < space.labels.size(); ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      worst.Equality(base.row(x)[y], same.row(x)[y]);
    }
  }
  // Monotone in the sampling rate.
  double prev = 0.0;
  for (int step = 1; step <= 10; ++step) {
    const PrivacyBudget b = subsample_budget(1.0, 0.05, step / 10.0);
    worst.Floor(prev, b.eps);
    prev = b.eps;
  }
  return worst.Finish(
      "subsample.budget-shape",
      "subsampling at rate 1 is the identity and the scaled eps is monotone "
      "in the sampling rate",
      {{"rate_step", 0.1}}, 1e-12);
}

// ---------------------------------------------------------------------------
// appendix suite
// ---------------------------------------------------------------------------

CheckResult CheckExpRatioInequality(uint64_t seed) {
  (void)seed;
  int failures = 0;
  const int grid = 200;  // points per axis, endpoints included
  double min_slack = kInf;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = 5.0 * i / (grid - 1);
      const double y = 5.0 * j / (grid - 1);
      if (!appendix_inequality_check(x, y)) ++failures;
      const double lhs = (1.0 + std::exp(x + y)) / (std::exp(x) + std::exp(y));
      const double rhs = std::exp(x * y / 2.0);
      min_slack = std::min(min_slack, rhs - lhs);
    }
  }
  CheckResult r;
  r.id = "appendix.exp-ratio-bound";
  r.claim =
      "(1 + e^(x+y)) / (e^x + e^y) <= e^(xy/2) holds across a 200x200 grid "
      "over [0,5]x[0,5]";
  r.inputs = {{"grid_points_per_axis", grid}, {"min_slack", min_slack}};
  r.expected = 0.0;
  r.achieved = static_cast<double>(failures);
  r.margin = failures == 0 ? min_slack : -static_cast<double>(failures);
  r.tolerance = 0.0;
  r.pass = failures == 0;
  r.count = static_cast<int64_t>(grid) * grid;
  return r;
}

// ---------------------------------------------------------------------------

using CheckFn = std::function<CheckResult(uint64_t)>;

const std::vector<std::pair<std::string, std::vector<CheckFn>>>& Suites() {
  static const auto* suites =
      new std::vector<std::pair<std::string, std::vector<CheckFn>>>{
          {"dp",
           {CheckHockeyStickOracle, CheckHockeyStickMonotone,
            CheckPostprocessing, CheckPureBudgetSplit, CheckApproxToPure,
            CheckRRRoundTrip, CheckLeakyRRVerify}},
          {"ldp",
           {CheckReplacementToDeletion, CheckDeletionToReplacement, CheckTrim,
            CheckSymmetrize, CheckCouponRounds, CheckGroupositionExact,
            CheckComposeBoundShape, CheckComposeTightness,
            CheckPurification}},
          {"counterexample",
           {CheckCounterexampleInstance, CheckCounterexampleGridIdentity,
            CheckCounterexampleRefutation,
            CheckCounterexampleDeletionRange}},
          {"shuffle",
           {CheckShuffleToLocal, CheckShufflePersistence,
            CheckShuffleMonotone, CheckShuffleSufficiency,
            CheckAmplificationFormula, CheckAmplificationRobust}},
          {"subsample",
           {CheckSubsampleTightness, CheckSubsampleSoundness,
            CheckSubsampleBudgetShape}},
          {"appendix", {CheckExpRatioInequality}},
      };
  return *suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const auto* names = [] {
    auto* v = new std::vector<std::string>();
    for (const auto& [name, checks] : Suites()) v->push_back(name);
    v->push_back("all");
    return v;
  }();
  return *names;
}

std::vector<CheckResult> run_suite(const std::string& suite, uint64_t seed) {
  std::vector<CheckResult> results;
  bool found = false;
  for (const auto& [name, checks] : Suites()) {
    if (suite == "all" || suite == name) {
      found = true;
      for (const auto& check : checks) results.push_back(check(seed));
    }
  }
  if (!found) {
    throw std::invalid_argument("unknown suite '" + suite +
                                "'; expected one of dp, ldp, counterexample, "
                                "shuffle, subsample, appendix, all");
  }
  return results;
}

std::string to_json_line(const CheckResult& result) {
  nlohmann::json j;
  j["id"] = result.id;
  j["claim"] = result.claim;
  j["inputs"] = result.inputs;
  j["expected"] = result.expected;
  j["achieved"] = result.achieved;
  j["margin"] = result.margin;
  j["tolerance"] = result.tolerance;
  j["pass"] = result.pass;
  j["count"] = result.count;
  return j.dump();
}

}  // namespace dpcalc
