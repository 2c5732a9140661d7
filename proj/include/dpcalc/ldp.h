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

#ifndef DPCALC_LDP_H_
#define DPCALC_LDP_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

struct DeletionView {
  Dist reference;
  PrivacyBudget budget;
};

// A replacement guarantee transfers to the deletion model verbatim: fix any
// input x0 and use its row as the reference.  The returned budget is the
// caller's (eps, delta); audit_deletion_ldp(r, r.row(x0), eps) <= delta holds
// whenever r really audits at (eps, delta) under replacement.
DeletionView replacement_to_deletion(const Mechanism& r, std::size_t x0, double eps,
                                     double delta);

// The cheapest generic bound in the other direction: a deletion (eps, delta)
// guarantee implies replacement (2 eps, (e^eps + 1) delta).
PrivacyBudget deletion_to_replacement_budget(double eps, double delta);

// A two-input, three-output randomizer witnessing that deletion (eps, delta)
// does NOT imply replacement (2 eps, 2 delta): against the uniform reference
// it satisfies the deletion guarantee (for eps, delta in the range where all
// three outcome probabilities are proper, e.g. eps = 1/4, delta = 1/6), yet
// Pr[R(1) = 2] = e^{2 eps} Pr[R(0) = 2] + (1 + e^eps) delta exactly, beating
// the would-be 2 delta slack by (e^eps - 1) delta.  Requires eps in [0, 1/2]
// and delta in [0, 1/5] so that every row entry is a probability.
Mechanism build_counterexample(double eps, double delta);

// Rounds an approximate deletion guarantee down to a pure one: given
// audit_deletion_ldp(r, r0, eps) <= delta, returns a mechanism whose rows lie
// inside the pointwise band [e^-eps r0(y), e^eps r0(y)] (so it audits
// 0-deletion at eps) while moving each row by at most delta in total
// variation.  Rows already inside the band are returned unchanged.  Each row
// is clipped into the band and the leftover imbalance is redistributed in
// proportion to the remaining headroom, which lands exactly on the smallest
// possible move.  Throws std::invalid_argument when the precondition fails.
Mechanism trim_to_pure_deletion(const Mechanism& r, const Dist& r0, double eps,
                                double delta);

enum class CoinModel { kPrivate, kPublic };

struct SymmetricCompilation {
  CoinModel coin = CoinModel::kPrivate;
  // Private coins: one mechanism whose output (j, y) tags which member the
  // user privately sampled.  Output labels are "<j>:<y>" with 0-based j.
  std::optional<Mechanism> combined;
  // Public coins: member j is run when the shared seed says j.
  std::vector<Mechanism> seed_family;
  // Rounds needed so that n independent uniform seeds hit every member at
  // least once except with probability 1/6.
  int64_t n_prime = 0;
};

// Compiles a list of per-user randomizers (same alphabets) into a single
// symmetric one, either by privately sampling the member index uniformly and
// tagging the output with it, or by reading the member index off a public
// seed.  The private-coin combined mechanism audits pure at exactly
// max_j audit of member j.
SymmetricCompilation symmetrize(const std::vector<Mechanism>& randomizers,
                                CoinModel coin);

// Smallest number of uniform draws from [n] that collects all n values
// except with probability at most fail_prob (union bound):
// ceil(n * ln(n / fail_prob)).  Requires n >= 1 and fail_prob in (0, 1).
int64_t coupon_rounds(int64_t n, double fail_prob);

struct GroupositionParams {
  int64_t k = 1;        // number of eps-DP mechanisms composed
  double eps = 0.0;     // per-mechanism pure level
  double delta_prime = 0.0;  // composition slack, must be > 0
  double delta = 0.0;   // per-mechanism additive delta (variant with approx inputs)
};

// Advanced composition: k adaptive eps-DP mechanisms jointly satisfy
// (k eps^2 / 2 + eps sqrt(2 k ln(1/delta')), delta')-DP.
double grouposition_eps(const GroupositionParams& params);

// Same eps bound, with the additive term tracking approximate inputs:
// delta_total = delta + k * delta'.
PrivacyBudget grouposition_budget(const GroupositionParams& params);

// Exact pure level of two sequentially composed local randomizers:
//   eps = ln((e^{eps1+eps2} + 1) / (e^{eps1} + e^{eps2})),
// which is at most min(eps1, eps2) and at most eps1 * eps2 / 2.
double compose_eps(double eps1, double eps2);

// Independent check that compose_eps is achieved: grid search over binary
// first stages (p0, p1) obeying the eps1 ratio and complement-ratio
// constraints, composed with randomized response at eps2, auditing each
// candidate exactly.  One refinement pass zooms around the best coarse cell.
// Returns the largest audited pure level; it never exceeds compose_eps and
// reaches it within 1e-3 at grid >= 400.  Requires grid >= 2.
double compose_tightness_search(double eps1, double eps2, int grid);

struct PurificationParams {
  double eps = 0.0;   // target pure level parameter, in (0, 1/4]
  double delta = 0.0; // approximate slack of each input randomizer
  int64_t n = 1;      // number of users
  int64_t t = 1;      // repetition count, within [5 ln(1/eps), (1-e^-eps)/(4 delta n e^eps)]
};

struct PurificationBounds {
  double ldp_eps = 0.0;    // pure level after purification: 10 * eps
  double tv_bound = 0.0;   // closeness to the unpurified protocol's output
  double comm_bits = 0.0;  // extra per-user communication: log2(t)
  // t * sum(bits_i) when per-randomizer public-coin widths are supplied.
  std::optional<double> public_random_bits;
};

// Calculator for the cost of converting approximate local randomizers into
// pure ones by repetition against public randomness.  Pure bookkeeping: no
// protocol is constructed.  tv_bound =
//   n ((1/2 + eps)^t + 6 t delta e^eps / (1 - e^-eps)).
// Throws std::invalid_argument when the feasible t range is empty (the error
// names both endpoints) or t lies outside it.
PurificationBounds purification_bounds(const PurificationParams& params,
                                       const std::vector<int64_t>* bits_per_randomizer =
                                           nullptr);

// True when (1 + e^{x+y}) / (e^x + e^y) <= e^{x y / 2} within 1e-12 slack.
// The inequality holds for all x, y >= 0; inputs must be nonnegative.
bool appendix_inequality_check(double x, double y);

}  // namespace dpcalc

#endif  // DPCALC_LDP_H_
