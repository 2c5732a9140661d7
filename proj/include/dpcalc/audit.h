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

#ifndef DPCALC_AUDIT_H_
#define DPCALC_AUDIT_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dpcalc/dist.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// Hockey-stick divergence sum_y max(0, p(y) - e^eps * q(y)).  This is the
// smallest delta for which Pr[p in S] <= e^eps * Pr[q in S] + delta holds for
// every event S, so all exact audits below reduce to it.  Requires matching
// alphabet sizes and eps >= 0 (eps = +infinity is allowed and measures mass
// of p outside the support of q).
double hockey_stick(const Dist& p, const Dist& q, double eps);

// Total variation distance; equal to hockey_stick(p, q, 0) but computed
// independently as half the L1 distance.
double tv_distance(const Dist& p, const Dist& q);

// Largest log-likelihood ratio max_y ln(p(y)/q(y)) over symbols with
// p(y) > 0.  Returns +infinity when p puts mass outside q's support.
double max_log_ratio(const Dist& p, const Dist& q);

// Smallest eps at which the ordered pair (p, q) passes a pure audit in both
// directions: max(max_log_ratio(p, q), max_log_ratio(q, p)).
double pair_pure_eps(const Dist& p, const Dist& q);

// Exact smallest delta such that every ordered pair of inputs satisfies the
// eps-DP inequality (replacement/substitution neighbors: any input may be
// swapped for any other).  Requires at least two inputs.
double audit_replacement_ldp(const Mechanism& r, double eps);

// Exact smallest delta for the deletion guarantee against reference row r0:
//   Pr[R(x) in S] <= e^eps Pr[r0 in S] + delta  and
//   e^-eps (Pr[r0 in S] - delta) <= Pr[R(x) in S]
// for every input x and event S.  This is the max over inputs of the
// hockey-stick divergence in both orientations against r0.
double audit_deletion_ldp(const Mechanism& r, const Dist& r0, double eps);

// Smallest eps for a pure (delta = 0) guarantee over all ordered input
// pairs; +infinity when supports are not nested, 0 for constant mechanisms.
// Requires at least two inputs.
double audit_pure(const Mechanism& r);

// Pure audit restricted to a caller-supplied neighbor list (max of
// pair_pure_eps over the pairs).  An empty list audits to 0.
double audit_pure(const Mechanism& r, const std::vector<NeighborPair>& neighbors);

// Exact smallest delta over a caller-supplied neighbor relation, both
// orientations of each listed pair.  An empty list audits to 0.
double audit_central(const Mechanism& m, const std::vector<NeighborPair>& neighbors,
                     double eps);

// Applies a deterministic output map.  `target_labels[i]` names the new
// symbol that old output i is sent to; the new alphabet is the distinct
// targets in order of first appearance.  Audited delta never increases under
// such a map, at any eps.
Mechanism postprocess(const Mechanism& m, const std::vector<std::string>& target_labels);

// Convex combination of mechanisms over identical alphabets.  Weights must
// be nonnegative and sum to one within kSumTolerance.
Mechanism mix(const std::vector<std::pair<double, Mechanism>>& weighted);

// Candidate reference rows for a deletion audit when the caller has no
// distinguished default: uniform, the average row, then each row in order.
std::vector<Dist> deletion_reference_candidates(const Mechanism& r);

}  // namespace dpcalc

#endif  // DPCALC_AUDIT_H_
