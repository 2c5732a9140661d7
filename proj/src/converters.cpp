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

#include "dpcalc/converters.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpcalc {

PrivacyBudget pure_to_approx(double eps_total, double delta) {
  PrivacyBudget source{eps_total, 0.0};
  source.validate();
  if (std::isnan(delta) || delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("delta must lie in [0, 1]");
  }
  if (delta > eps_total) {
    throw std::invalid_argument("cannot carve delta = " + std::to_string(delta) +
                                " out of a pure budget of " + std::to_string(eps_total));
  }
  PrivacyBudget target{eps_total - delta, delta};
  target.validate();
  return target;
}

ApproxToPureResult approx_to_pure_finite(const Mechanism& a, double eps, double delta,
                                         double eta) {
  PrivacyBudget{eps, delta}.validate();
  if (!std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite");
  }
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("mixing weight eta must lie in (0, 1]");
  }
  const Mechanism uniform = Mechanism::constant(a.input_labels(), a.output_labels(),
                                                Dist::uniform(a.num_outputs()));
  Mechanism mixed = mix({{1.0 - eta, a}, {eta, uniform}});
  const double k = static_cast<double>(a.num_outputs());
  const double eps_prime = eps + std::log1p(delta * k * std::exp(-eps) / eta);
  return ApproxToPureResult{std::move(mixed), eps_prime};
}

RRDecomposition rr_decompose_pure(const Mechanism& r, std::size_t x, std::size_t x_prime,
                                  std::optional<double> eps_override) {
  const Dist& p = r.row(x);
  const Dist& p_prime = r.row(x_prime);
  const double tight = pair_pure_eps(p, p_prime);
  if (!std::isfinite(tight)) {
    throw std::invalid_argument(
        "rows have different supports: no finite pure level to decompose at");
  }
  double eps = tight;
  if (eps_override.has_value()) {
    if (!std::isfinite(*eps_override) || *eps_override < tight - kMassTolerance) {
      throw std::invalid_argument("eps override " + std::to_string(*eps_override) +
                                  " is below the audited pure level " +
                                  std::to_string(tight));
    }
    eps = std::max(*eps_override, tight);
  }

  std::vector<std::string> q_inputs = {"0", "1"};
  if (eps == 0.0) {
    // Identical rows: the mixing matrix is singular and any split works; use
    // the row itself for both components.
    return RRDecomposition{Mechanism(q_inputs, r.output_labels(), {p, p}), 0.0};
  }

  // Invert the 2x2 system p = w q0 + (1-w) q1, p' = (1-w) q0 + w q1 with
  // w = e^eps/(e^eps+1).  The pure level guarantees both solutions are
  // nonnegative; -0.0 dust is cleaned by Dist.
  const double w = std::exp(eps) / (std::exp(eps) + 1.0);
  const double det = 2.0 * w - 1.0;
  std::vector<double> q0(p.size()), q1(p.size());
  for (std::size_t y = 0; y < p.size(); ++y) {
    q0[y] = (w * p[y] - (1.0 - w) * p_prime[y]) / det;
    q1[y] = (w * p_prime[y] - (1.0 - w) * p[y]) / det;
  }
  return RRDecomposition{
      Mechanism(q_inputs, r.output_labels(), {Dist(std::move(q0)), Dist(std::move(q1))}),
      eps};
}

LeakyRRWeights LeakyRRWeights::make(double eps, double delta) {
  PrivacyBudget{eps, delta}.validate();
  if (!std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite");
  }
  const double w = std::exp(eps) / (std::exp(eps) + 1.0);
  return LeakyRRWeights{(1.0 - delta) * w, (1.0 - delta) * (1.0 - w), delta};
}

LeakyRRCheck verify_leaky_rr(const Mechanism& r, std::size_t x, std::size_t x_prime,
                             const Mechanism& q, PrivacyBudget budget) {
  const LeakyRRWeights weights = LeakyRRWeights::make(budget.eps, budget.delta);
  if (q.num_inputs() != 4) {
    throw std::invalid_argument(
        "witness must have exactly four inputs: component 0, component 1, "
        "announce-left, announce-right");
  }
  if (q.output_labels() != r.output_labels()) {
    throw std::invalid_argument("witness output alphabet does not match the mechanism");
  }
  const Dist& p = r.row(x);
  const Dist& p_prime = r.row(x_prime);

  double max_residual = 0.0;
  for (std::size_t y = 0; y < r.num_outputs(); ++y) {
    const double left = weights.w_main * q.row(0)[y] + weights.w_cross * q.row(1)[y] +
                        weights.w_leak * q.row(2)[y];
    const double right = weights.w_cross * q.row(0)[y] + weights.w_main * q.row(1)[y] +
                         weights.w_leak * q.row(3)[y];
    max_residual = std::max(max_residual, std::abs(p[y] - left));
    max_residual = std::max(max_residual, std::abs(p_prime[y] - right));
  }
  return LeakyRRCheck{max_residual <= kSumTolerance, max_residual};
}

}  // namespace dpcalc
