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

#include "dpcalc/ldp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpcalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_finite_budget(double eps, double delta) {
  PrivacyBudget{eps, delta}.validate();
  if (!std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite");
  }
}

// Exact audit of a two-input binary mechanism given the two probabilities of
// the first output symbol.  Used by the composition tightness search.
double pure_eps_of_binary_pair(double a0, double a1) {
  const Dist left({a0, 1.0 - a0});
  const Dist right({a1, 1.0 - a1});
  return pair_pure_eps(left, right);
}

}  // namespace

DeletionView replacement_to_deletion(const Mechanism& r, std::size_t x0, double eps,
                                     double delta) {
  PrivacyBudget budget{eps, delta};
  budget.validate();
  return DeletionView{r.row(x0), budget};
}

PrivacyBudget deletion_to_replacement_budget(double eps, double delta) {
  PrivacyBudget{eps, delta}.validate();
  const double delta_out =
      delta == 0.0 ? 0.0 : std::min(1.0, (std::exp(eps) + 1.0) * delta);
  return PrivacyBudget{2.0 * eps, delta_out};
}

Mechanism build_counterexample(double eps, double delta) {
  if (std::isnan(eps) || eps < 0.0 || eps > 0.5) {
    throw std::invalid_argument("counterexample needs eps in [0, 1/2]");
  }
  if (std::isnan(delta) || delta < 0.0 || delta > 0.2) {
    throw std::invalid_argument("counterexample needs delta in [0, 1/5]");
  }
  const double e = std::exp(eps);
  const double e_inv = std::exp(-eps);
  const std::vector<double> row0 = {
      e / 3.0, e_inv * (1.0 / 3.0 - delta), 1.0 - e / 3.0 - e_inv * (1.0 / 3.0 - delta)};
  const std::vector<double> row1 = {
      e_inv / 3.0, e / 3.0 + delta, 1.0 - e_inv / 3.0 - e / 3.0 - delta};
  return Mechanism({"0", "1"}, {"1", "2", "3"}, {Dist(row0), Dist(row1)});
}

Mechanism trim_to_pure_deletion(const Mechanism& r, const Dist& r0, double eps,
                                double delta) {
  check_finite_budget(eps, delta);
  const double audited = audit_deletion_ldp(r, r0, eps);
  if (audited > delta + kSumTolerance) {
    throw std::invalid_argument("mechanism audits deletion delta = " +
                                std::to_string(audited) + " at this eps, above " +
                                std::to_string(delta));
  }

  const double scale_hi = std::exp(eps);
  const double scale_lo = std::exp(-eps);
  const std::size_t k = r.num_outputs();
  std::vector<double> lo(k), hi(k);
  for (std::size_t y = 0; y < k; ++y) {
    lo[y] = scale_lo * r0[y];
    // No entry of a distribution ever needs to exceed 1, so capping the upper
    // band edge there keeps the arithmetic finite for very large eps.
    hi[y] = r0[y] > 0.0 ? std::min(scale_hi * r0[y], 1.0) : 0.0;
  }

  std::vector<Dist> rows;
  rows.reserve(r.num_inputs());
  for (std::size_t x = 0; x < r.num_inputs(); ++x) {
    const Dist& p = r.row(x);
    std::vector<double> clipped(k);
    double total = 0.0;
    for (std::size_t y = 0; y < k; ++y) {
      clipped[y] = std::clamp(p[y], lo[y], hi[y]);
      total += clipped[y];
    }
    // Clipping both ends moves at most max(excess, shortfall) <= delta of
    // mass; pushing the imbalance onto symbols with remaining band headroom
    // (never back onto the clipped ones) keeps the total move at that
    // optimum.
    if (total < 1.0 - kMassTolerance) {
      double headroom = 0.0;
      for (std::size_t y = 0; y < k; ++y) headroom += hi[y] - clipped[y];
      const double need = 1.0 - total;
      for (std::size_t y = 0; y < k; ++y) {
        clipped[y] += need * (hi[y] - clipped[y]) / headroom;
      }
    } else if (total > 1.0 + kMassTolerance) {
      double slack = 0.0;
      for (std::size_t y = 0; y < k; ++y) slack += clipped[y] - lo[y];
      const double drop = total - 1.0;
      for (std::size_t y = 0; y < k; ++y) {
        clipped[y] -= drop * (clipped[y] - lo[y]) / slack;
      }
    }
    Dist out(std::move(clipped));
    if (tv_distance(p, out) > delta + kSumTolerance) {
      throw std::logic_error("trim moved a row farther than the audited delta");
    }
    rows.push_back(std::move(out));
  }
  return Mechanism(r.input_labels(), r.output_labels(), std::move(rows));
}

SymmetricCompilation symmetrize(const std::vector<Mechanism>& randomizers,
                                CoinModel coin) {
  if (randomizers.empty()) {
    throw std::invalid_argument("symmetrize requires at least one randomizer");
  }
  const Mechanism& first = randomizers.front();
  for (const Mechanism& r : randomizers) {
    if (r.input_labels() != first.input_labels() ||
        r.output_labels() != first.output_labels()) {
      throw std::invalid_argument("all randomizers must share both alphabets");
    }
  }
  const std::size_t n = randomizers.size();

  SymmetricCompilation result;
  result.coin = coin;
  result.n_prime = coupon_rounds(static_cast<int64_t>(n), 1.0 / 6.0);
  if (coin == CoinModel::kPublic) {
    result.seed_family = randomizers;
    return result;
  }

  // Private coins: sample j uniformly, run member j, release (j, y).
  std::vector<std::string> outputs;
  outputs.reserve(n * first.num_outputs());
  for (std::size_t j = 0; j < n; ++j) {
    for (const std::string& y : first.output_labels()) {
      outputs.push_back(std::to_string(j) + ":" + y);
    }
  }
  std::vector<Dist> rows;
  rows.reserve(first.num_inputs());
  for (std::size_t x = 0; x < first.num_inputs(); ++x) {
    std::vector<double> mass;
    mass.reserve(outputs.size());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t y = 0; y < first.num_outputs(); ++y) {
        mass.push_back(randomizers[j].row(x)[y] / static_cast<double>(n));
      }
    }
    rows.emplace_back(std::move(mass));
  }
  result.combined = Mechanism(first.input_labels(), std::move(outputs), std::move(rows));
  return result;
}

int64_t coupon_rounds(int64_t n, double fail_prob) {
  if (n < 1) {
    throw std::invalid_argument("need at least one coupon");
  }
  if (std::isnan(fail_prob) || !(fail_prob > 0.0) || fail_prob >= 1.0) {
    throw std::invalid_argument("fail_prob must lie in (0, 1)");
  }
  const double rounds = static_cast<double>(n) * std::log(static_cast<double>(n) / fail_prob);
  return static_cast<int64_t>(std::ceil(rounds));
}

double grouposition_eps(const GroupositionParams& params) {
  if (params.k < 1) {
    throw std::invalid_argument("composition needs k >= 1");
  }
  check_finite_budget(params.eps, params.delta);
  if (!(params.delta_prime > 0.0) || params.delta_prime >= 1.0) {
    throw std::invalid_argument("delta' must lie in (0, 1)");
  }
  const double k = static_cast<double>(params.k);
  return k * params.eps * params.eps / 2.0 +
         params.eps * std::sqrt(2.0 * k * std::log(1.0 / params.delta_prime));
}

PrivacyBudget grouposition_budget(const GroupositionParams& params) {
  const double eps_prime = grouposition_eps(params);
  const double delta_total =
      std::min(1.0, params.delta + static_cast<double>(params.k) * params.delta_prime);
  return PrivacyBudget{eps_prime, delta_total};
}

double compose_eps(double eps1, double eps2) {
  if (std::isnan(eps1) || std::isnan(eps2) || eps1 < 0.0 || eps2 < 0.0) {
    throw std::invalid_argument("eps values must be >= 0");
  }
  if (!std::isfinite(eps1)) return eps2;
  if (!std::isfinite(eps2)) return eps1;
  // ln((e^{a+b} + 1) / (e^a + e^b)), arranged to stay stable for large eps.
  const double a = std::max(eps1, eps2);
  const double b = std::min(eps1, eps2);
  return b + std::log1p(std::exp(-a - b)) - std::log1p(std::exp(b - a));
}

double compose_tightness_search(double eps1, double eps2, int grid) {
  if (grid < 2) {
    throw std::invalid_argument("grid must be at least 2");
  }
  if (std::isnan(eps1) || std::isnan(eps2) || eps1 < 0.0 || eps2 < 0.0 ||
      !std::isfinite(eps1) || !std::isfinite(eps2)) {
    throw std::invalid_argument("eps values must be finite and >= 0");
  }
  const double e1 = std::exp(eps1);
  const double w2 = std::exp(eps2) / (std::exp(eps2) + 1.0);

  // First stage releases output 0 with probability p0 or p1; the second stage
  // is randomized response at eps2 on that bit.  The composed mechanism's
  // first-symbol probabilities:
  const auto composed_audit = [&](double p0, double p1) {
    const double a0 = p0 * w2 + (1.0 - p0) * (1.0 - w2);
    const double a1 = p1 * w2 + (1.0 - p1) * (1.0 - w2);
    return pure_eps_of_binary_pair(a0, a1);
  };
  // Largest p0 a given p1 admits under the eps1 ratio constraints
  // p0/p1 <= e^{eps1} and (1 - p1)/(1 - p0) <= e^{eps1}.
  const auto envelope = [&](double p1) {
    return std::min(e1 * p1, 1.0 - (1.0 - p1) / e1);
  };

  const auto scan = [&](double p1_lo, double p1_hi, int steps, double& best,
                        double& best_p1) {
    for (int i = 0; i <= steps; ++i) {
      const double p1 =
          p1_lo + (p1_hi - p1_lo) * static_cast<double>(i) / static_cast<double>(steps);
      if (!(p1 > 0.0) || p1 >= 1.0) continue;
      const double p0_max = std::min(envelope(p1), 1.0);
      if (p0_max <= p1) continue;
      // Interior grid points plus the exact envelope point.
      for (int j = 1; j <= steps; ++j) {
        const double p0 = static_cast<double>(j) / static_cast<double>(steps + 1);
        if (p0 <= p1 || p0 > p0_max) continue;
        const double value = composed_audit(p0, p1);
        if (value > best) {
          best = value;
          best_p1 = p1;
        }
      }
      const double value = composed_audit(p0_max, p1);
      if (value > best) {
        best = value;
        best_p1 = p1;
      }
    }
  };

  double best = 0.0;
  double best_p1 = 0.5;
  scan(0.0, 1.0, grid + 1, best, best_p1);
  // The two envelope constraints swap dominance at their crossing; the grid
  // rarely lands on it exactly, so probe it as well.
  const double crossing = 1.0 / (e1 + 1.0);
  if (crossing > 0.0 && crossing < 1.0 && envelope(crossing) > crossing) {
    const double value = composed_audit(envelope(crossing), crossing);
    if (value > best) {
      best = value;
      best_p1 = crossing;
    }
  }
  // One refinement pass around the best coarse cell.
  const double h = 1.0 / static_cast<double>(grid + 1);
  double refined_best = best;
  double refined_p1 = best_p1;
  scan(std::max(0.0, best_p1 - h), std::min(1.0, best_p1 + h), grid, refined_best,
       refined_p1);
  return refined_best;
}

PurificationBounds purification_bounds(const PurificationParams& params,
                                       const std::vector<int64_t>* bits_per_randomizer) {
  if (!(params.eps > 0.0) || params.eps > 0.25) {
    throw std::invalid_argument("eps must lie in (0, 1/4]");
  }
  if (std::isnan(params.delta) || params.delta < 0.0 || params.delta > 1.0) {
    throw std::invalid_argument("delta must lie in [0, 1]");
  }
  if (params.n < 1 || params.t < 1) {
    throw std::invalid_argument("n and t must be positive");
  }
  const double lower = 5.0 * std::log(1.0 / params.eps);
  const double upper =
      params.delta > 0.0
          ? (1.0 - std::exp(-params.eps)) /
                (4.0 * params.delta * static_cast<double>(params.n) * std::exp(params.eps))
          : kInf;
  if (lower > upper) {
    throw std::invalid_argument("feasible repetition range is empty: lower bound " +
                                std::to_string(lower) + " exceeds upper bound " +
                                std::to_string(upper));
  }
  const double t = static_cast<double>(params.t);
  if (t < lower || t > upper) {
    throw std::invalid_argument("t = " + std::to_string(params.t) +
                                " outside the feasible range [" + std::to_string(lower) +
                                ", " + std::to_string(upper) + "]");
  }

  PurificationBounds out;
  out.ldp_eps = 10.0 * params.eps;
  out.tv_bound = static_cast<double>(params.n) *
                 (std::pow(0.5 + params.eps, t) +
                  6.0 * t * params.delta * std::exp(params.eps) /
                      (1.0 - std::exp(-params.eps)));
  out.comm_bits = std::log2(t);
  if (bits_per_randomizer != nullptr) {
    double total = 0.0;
    for (int64_t bits : *bits_per_randomizer) {
      if (bits < 0) {
        throw std::invalid_argument("per-randomizer bit counts must be nonnegative");
      }
      total += static_cast<double>(bits);
    }
    out.public_random_bits = t * total;
  }
  return out;
}

bool appendix_inequality_check(double x, double y) {
  if (std::isnan(x) || std::isnan(y) || x < 0.0 || y < 0.0) {
    throw std::invalid_argument("inequality domain is x, y >= 0");
  }
  const double lhs = (1.0 + std::exp(x + y)) / (std::exp(x) + std::exp(y));
  return lhs <= std::exp(x * y / 2.0) + 1e-12;
}

}  // namespace dpcalc
