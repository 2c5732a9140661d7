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

#ifndef DPCALC_CONVERTERS_H_
#define DPCALC_CONVERTERS_H_

#include <cstddef>
#include <optional>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// Splits a pure budget: an (eps_total, 0) guarantee implies an
// (eps_total - delta, delta) guarantee for any delta <= eps_total.
// Throws std::invalid_argument when delta > eps_total or inputs are invalid.
PrivacyBudget pure_to_approx(double eps_total, double delta);

struct ApproxToPureResult {
  Mechanism mechanism;
  double eps_prime;
};

// Converts an (eps, delta) mechanism into one with a finite pure guarantee by
// mixing weight eta of the uniform output row into every row:
//   a'(x) = (1 - eta) a(x) + eta * uniform.
// The result is within total variation eta of `a` on every input and audits
// pure at eps' = eps + ln(1 + delta * k * e^-eps / eta), k = |output
// alphabet|.  Requires eta in (0, 1]; the (eps, delta) pair is trusted (use
// the audits to produce one).
ApproxToPureResult approx_to_pure_finite(const Mechanism& a, double eps, double delta,
                                         double eta);

struct RRDecomposition {
  // Two-input mechanism q over r's output alphabet: inputs "0" and "1" hold
  // the two mixture components.
  Mechanism q;
  // The pure level the decomposition was computed at.
  double eps;
};

// Writes the rows of a pure pair (r(x), r(x')) as randomized response run at
// eps followed by postprocessing q:
//   r(x)  = e^eps/(e^eps+1) q(0) + 1/(e^eps+1) q(1)
//   r(x') = 1/(e^eps+1) q(0) + e^eps/(e^eps+1) q(1).
// By default eps is the audited pure level of the pair; a looser level may be
// supplied via eps_override (must be >= the audited level).  When the two
// rows are identical the 2x2 mixing system is singular and q(0) = q(1) = r(x)
// is returned with eps = 0.  Throws std::invalid_argument when the pair's
// pure level is infinite (supports differ) or the override is too small.
RRDecomposition rr_decompose_pure(const Mechanism& r, std::size_t x, std::size_t x_prime,
                                  std::optional<double> eps_override = std::nullopt);

// Mixture weights for writing an (eps, delta) pair as leaky randomized
// response: with probability delta the true input is announced outright, and
// otherwise randomized response at eps picks which component to release.
struct LeakyRRWeights {
  double w_main;   // (1 - delta) e^eps / (e^eps + 1), on q(own input)
  double w_cross;  // (1 - delta) / (e^eps + 1), on q(other input)
  double w_leak;   // delta, on the announcement row

  static LeakyRRWeights make(double eps, double delta);
};

struct LeakyRRCheck {
  bool ok = false;
  double max_residual = 0.0;
};

// Checks whether q witnesses the leaky decomposition of the pair
// (r(x), r(x')) at `budget`: q must have exactly four inputs, ordered
// (component 0, component 1, announce x, announce x'), over r's output
// alphabet, and both mixture identities must hold within kSumTolerance
// per symbol.  Synthesis of q is out of scope; this only verifies one.
LeakyRRCheck verify_leaky_rr(const Mechanism& r, std::size_t x, std::size_t x_prime,
                             const Mechanism& q, PrivacyBudget budget);

}  // namespace dpcalc

#endif  // DPCALC_CONVERTERS_H_
