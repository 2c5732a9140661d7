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

#ifndef DPCALC_SUBSAMPLE_H_
#define DPCALC_SUBSAMPLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// Running an (eps, delta)-DP mechanism on a uniform m-of-n record subsample
// yields (ln(1 + p (e^eps - 1)), p delta)-DP overall, p = m/n.
PrivacyBudget subsample_budget(double eps, double delta, double p);

// The space of ordered record tuples of a fixed length: canonical labels, the
// tuples as record indices, and the ordered substitution-distance-one
// neighbor pairs.  Tuple labels join record labels with commas; the last
// position varies fastest.
struct TupleSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<NeighborPair> neighbors;
};

// Enumerates all record tuples of length n over the given alphabet.
// Requires a nonempty alphabet of at most 3 records and 1 <= n <= 6 (the
// tuple count grows as |alphabet|^n).
TupleSpace enumerate_tuples(const std::vector<std::string>& record_alphabet, int64_t n);

// Lifts a mechanism over m-record tuples to one over n-record tuples by
// running it on a uniformly random m-subset of the positions (order
// preserved).  `base` must have exactly the canonical m-tuple input alphabet
// produced by enumerate_tuples(record_alphabet, m).
Mechanism build_subsampled(const Mechanism& base,
                           const std::vector<std::string>& record_alphabet, int64_t n,
                           int64_t m);

struct SubsampleTightness {
  double bound_eps = 0.0;    // ln(1 + (m/n)(e^eps - 1))
  double audited_eps = 0.0;  // exact pure level over neighboring n-tuples
  double gap = 0.0;          // bound_eps - audited_eps
};

// Exhibits tightness of subsample_budget: the base mechanism that applies
// randomized response at eps to the first record of its tuple (ignoring the
// rest) audits, after subsampling, to exactly the closed-form bound over
// neighboring datasets.
SubsampleTightness verify_subsample_tightness(double eps, int64_t n, int64_t m);

}  // namespace dpcalc

#endif  // DPCALC_SUBSAMPLE_H_
