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

#ifndef DPCALC_SHUFFLE_H_
#define DPCALC_SHUFFLE_H_

#include <cstdint>
#include <map>
#include <vector>

#include "dpcalc/audit.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// A multiset of symbols as per-symbol counts.  Used both for datasets (how
// many users hold each input) and for shuffled outputs (how many of each
// output symbol came back), since a uniformly shuffled batch of one-message
// reports carries no information beyond these counts.
struct CountVector {
  std::vector<int64_t> counts;

  int64_t total() const;
  bool operator==(const CountVector& other) const = default;
};

// True when the two datasets have equal totals and differ by substituting
// exactly one user's value.
bool are_neighbors(const CountVector& a, const CountVector& b);

// Exact distribution over output count vectors, keyed by counts.
using CountDist = std::map<std::vector<int64_t>, double>;

// Enumeration guard rails for the exact shuffle computations.  The defaults
// keep memory and time tame; DPCALC_MAX_ENUM ("<max_n>" or "<max_n>,<max_y>")
// raises them on larger machines.
struct EnumLimits {
  int64_t max_n = 60;
  std::size_t max_outputs = 6;

  static EnumLimits from_env();
};

// Exact distribution of the shuffled output: each user with input x draws
// independently from randomizer row x, and only the multiset of reports is
// released.  Computed by convolving one multinomial per input symbol.
// Throws std::invalid_argument when the dataset shape does not match the
// randomizer or the enumeration limits are exceeded.
CountDist shuffled_distribution(const Mechanism& randomizer, const CountVector& dataset);

// Hockey-stick divergence between two count-vector distributions (union of
// supports; missing keys carry zero mass).
double hockey_stick(const CountDist& p, const CountDist& q, double eps);

// Exact smallest delta such that every pair of neighboring n-user datasets
// (substitution distance one) has shuffled outputs within the eps-DP
// inequality, both orientations.  n = 1 coincides with the replacement
// audit of the randomizer itself.
double audit_shuffle(const Mechanism& randomizer, int64_t n, double eps);

// A shuffled protocol that is (eps_s, delta_s)-DP implies the local
// randomizer is (eps_s + ln n, delta_s)-DP.
PrivacyBudget shuffle_to_ldp_budget(double eps_s, double delta_s, int64_t n);

struct AmplificationParams {
  double eps_l = 0.0;  // pure level of the local randomizer
  double delta = 0.0;  // target additive slack, in (0, 1)
  int64_t n = 1;       // number of users
  double gamma = 1.0;  // honest fraction; only floor(gamma * n) users count
};

// The closed-form amplification bound at an effective user count n_eff:
//   ln(1 + 4 (e^eps_l - 1) (sqrt(2 ln(4/delta) / ((e^eps_l + 1) n_eff))
//                           + 1 / n_eff)).
// No feasibility gate; callers wanting the guarded version use
// amplification_eps.
double amplification_formula(double eps_l, double delta, int64_t n_eff);

// Guarded amplification bound: checks eps_l <= ln(n_eff / (8 ln(2/delta)) - 1)
// with n_eff = floor(gamma * n) and throws std::invalid_argument naming the
// cutoff when the randomizer is too loud for this population.
double amplification_eps(const AmplificationParams& params);

struct AmplificationReport {
  double eps_l = 0.0;       // audited pure level of the randomizer
  double bound_eps = 0.0;   // closed-form shuffle level
  double exact_delta = 0.0; // exact shuffle audit at bound_eps
  double target_delta = 0.0;
  double margin = 0.0;      // target_delta - exact_delta
  bool ok = false;
};

// Audits the randomizer's pure level, evaluates the amplification bound for
// (n, delta, gamma), then checks it against the exact shuffle audit.  Throws
// when the pure level is infinite or the parameters are infeasible.
AmplificationReport check_amplification_vs_exact(const Mechanism& randomizer, int64_t n,
                                                 double delta, double gamma = 1.0);

}  // namespace dpcalc

#endif  // DPCALC_SHUFFLE_H_
