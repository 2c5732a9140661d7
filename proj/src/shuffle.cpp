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

#include "dpcalc/shuffle.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpcalc {
namespace {

void check_eps(double eps) {
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be >= 0");
  }
}

// All count vectors over `k` symbols summing to `n`, in lexicographic order.
void enumerate_counts(std::size_t k, int64_t n,
                      const std::function<void(const std::vector<int64_t>&)>& emit,
                      std::vector<int64_t>& scratch, std::size_t pos) {
  if (pos + 1 == k) {
    scratch[pos] = n;
    emit(scratch);
    return;
  }
  for (int64_t c = 0; c <= n; ++c) {
    scratch[pos] = c;
    enumerate_counts(k, n - c, emit, scratch, pos + 1);
  }
}

// Multinomial(c, row) over count vectors, via log-gamma for stability.
CountDist multinomial(const Dist& row, int64_t c) {
  CountDist out;
  std::vector<int64_t> scratch(row.size(), 0);
  const double log_c_factorial = std::lgamma(static_cast<double>(c) + 1.0);
  enumerate_counts(
      row.size(), c,
      [&](const std::vector<int64_t>& counts) {
        double log_p = log_c_factorial;
        for (std::size_t y = 0; y < counts.size(); ++y) {
          if (counts[y] == 0) continue;
          if (row[y] <= 0.0) return;  // impossible outcome
          log_p += static_cast<double>(counts[y]) * std::log(row[y]) -
                   std::lgamma(static_cast<double>(counts[y]) + 1.0);
        }
        out.emplace(counts, std::exp(log_p));
      },
      scratch, 0);
  return out;
}

CountDist convolve(const CountDist& a, const CountDist& b) {
  CountDist out;
  std::vector<int64_t> key;
  for (const auto& [ka, pa] : a) {
    for (const auto& [kb, pb] : b) {
      key = ka;
      for (std::size_t y = 0; y < key.size(); ++y) key[y] += kb[y];
      out[key] += pa * pb;
    }
  }
  return out;
}

}  // namespace

int64_t CountVector::total() const {
  int64_t sum = 0;
  for (int64_t c : counts) {
    if (c < 0) {
      throw std::invalid_argument("counts must be nonnegative");
    }
    sum += c;
  }
  return sum;
}

bool are_neighbors(const CountVector& a, const CountVector& b) {
  if (a.counts.size() != b.counts.size() || a.total() != b.total()) return false;
  int64_t l1 = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    l1 += std::abs(a.counts[i] - b.counts[i]);
  }
  return l1 == 2;
}

EnumLimits EnumLimits::from_env() {
  EnumLimits limits;
  const char* raw = std::getenv("DPCALC_MAX_ENUM");
  if (raw == nullptr || *raw == '\0') return limits;
  std::string value(raw);
  try {
    const auto comma = value.find(',');
    limits.max_n = std::stoll(value.substr(0, comma));
    if (comma != std::string::npos) {
      limits.max_outputs = static_cast<std::size_t>(std::stoull(value.substr(comma + 1)));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument(
        "DPCALC_MAX_ENUM must be '<max_n>' or '<max_n>,<max_outputs>', got '" + value +
        "'");
  }
  if (limits.max_n < 1 || limits.max_outputs < 1) {
    throw std::invalid_argument("DPCALC_MAX_ENUM limits must be positive");
  }
  return limits;
}

CountDist shuffled_distribution(const Mechanism& randomizer, const CountVector& dataset) {
  if (dataset.counts.size() != randomizer.num_inputs()) {
    throw std::invalid_argument("dataset has " + std::to_string(dataset.counts.size()) +
                                " input counts for a randomizer with " +
                                std::to_string(randomizer.num_inputs()) + " inputs");
  }
  const int64_t n = dataset.total();
  if (n < 1) {
    throw std::invalid_argument("dataset must contain at least one user");
  }
  const EnumLimits limits = EnumLimits::from_env();
  if (n > limits.max_n || randomizer.num_outputs() > limits.max_outputs) {
    throw std::invalid_argument(
        "exact shuffle enumeration limited to n <= " + std::to_string(limits.max_n) +
        " users and " + std::to_string(limits.max_outputs) +
        " output symbols (set DPCALC_MAX_ENUM to raise)");
  }

  // One multinomial block per input symbol, convolved together.  The running
  // distribution starts as the all-zero count vector with probability one.
  CountDist acc;
  acc.emplace(std::vector<int64_t>(randomizer.num_outputs(), 0), 1.0);
  for (std::size_t x = 0; x < dataset.counts.size(); ++x) {
    if (dataset.counts[x] == 0) continue;
    acc = convolve(acc, multinomial(randomizer.row(x), dataset.counts[x]));
  }
  return acc;
}

double hockey_stick(const CountDist& p, const CountDist& q, double eps) {
  check_eps(eps);
  const double scale = std::exp(eps);
  double delta = 0.0;
  for (const auto& [key, mass] : p) {
    const auto it = q.find(key);
    const double q_mass = it == q.end() ? 0.0 : it->second;
    const double gap = q_mass > 0.0 ? mass - scale * q_mass : mass;
    if (gap > 0.0) delta += gap;
  }
  return std::min(delta, 1.0);
}

double audit_shuffle(const Mechanism& randomizer, int64_t n, double eps) {
  check_eps(eps);
  if (randomizer.num_inputs() < 2) {
    throw std::invalid_argument("audit needs at least two inputs to compare");
  }
  if (n < 1) {
    throw std::invalid_argument("need at least one user");
  }

  // Enumerate datasets (count vectors over the input alphabet) and cache
  // each one's exact shuffled distribution.
  const std::size_t d = randomizer.num_inputs();
  std::vector<CountVector> datasets;
  {
    std::vector<int64_t> scratch(d, 0);
    enumerate_counts(
        d, n, [&](const std::vector<int64_t>& counts) { datasets.push_back({counts}); },
        scratch, 0);
  }
  std::map<std::vector<int64_t>, CountDist> cache;
  for (const CountVector& dataset : datasets) {
    cache.emplace(dataset.counts, shuffled_distribution(randomizer, dataset));
  }

  double worst = 0.0;
  for (const CountVector& dataset : datasets) {
    const CountDist& from = cache.at(dataset.counts);
    for (std::size_t i = 0; i < d; ++i) {
      if (dataset.counts[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        if (i == j) continue;
        CountVector moved = dataset;
        --moved.counts[i];
        ++moved.counts[j];
        worst = std::max(worst, hockey_stick(from, cache.at(moved.counts), eps));
      }
    }
  }
  return worst;
}

PrivacyBudget shuffle_to_ldp_budget(double eps_s, double delta_s, int64_t n) {
  PrivacyBudget{eps_s, delta_s}.validate();
  if (n < 1) {
    throw std::invalid_argument("need at least one user");
  }
  return PrivacyBudget{eps_s + std::log(static_cast<double>(n)), delta_s};
}

double amplification_formula(double eps_l, double delta, int64_t n_eff) {
  if (std::isnan(eps_l) || eps_l < 0.0 || !std::isfinite(eps_l)) {
    throw std::invalid_argument("eps_l must be finite and >= 0");
  }
  if (!(delta > 0.0) || delta >= 1.0) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (n_eff < 1) {
    throw std::invalid_argument("need at least one effective user");
  }
  const double n = static_cast<double>(n_eff);
  const double growth = std::expm1(eps_l);
  const double root = std::sqrt(2.0 * std::log(4.0 / delta) / ((std::exp(eps_l) + 1.0) * n));
  return std::log1p(4.0 * growth * (root + 1.0 / n));
}

double amplification_eps(const AmplificationParams& params) {
  if (!(params.gamma > 0.0) || params.gamma > 1.0) {
    throw std::invalid_argument("honest fraction gamma must lie in (0, 1]");
  }
  const int64_t n_eff =
      static_cast<int64_t>(std::floor(params.gamma * static_cast<double>(params.n)));
  if (n_eff < 1) {
    throw std::invalid_argument("no honest users: gamma * n is below 1");
  }
  if (!(params.delta > 0.0) || params.delta >= 1.0) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  const double cutoff_arg =
      static_cast<double>(n_eff) / (8.0 * std::log(2.0 / params.delta)) - 1.0;
  const double cutoff = cutoff_arg > 0.0 ? std::log(cutoff_arg)
                                         : -std::numeric_limits<double>::infinity();
  if (!(params.eps_l <= cutoff)) {
    throw std::invalid_argument(
        "amplification infeasible: eps_l = " + std::to_string(params.eps_l) +
        " exceeds the cutoff ln(n_eff / (8 ln(2/delta)) - 1) = " + std::to_string(cutoff) +
        " at n_eff = " + std::to_string(n_eff));
  }
  return amplification_formula(params.eps_l, params.delta, n_eff);
}

AmplificationReport check_amplification_vs_exact(const Mechanism& randomizer, int64_t n,
                                                 double delta, double gamma) {
  const double eps_l = audit_pure(randomizer);
  if (!std::isfinite(eps_l)) {
    throw std::invalid_argument(
        "randomizer has no finite pure level; nothing to amplify");
  }
  const double bound_eps = amplification_eps({eps_l, delta, n, gamma});
  const int64_t n_eff = static_cast<int64_t>(std::floor(gamma * static_cast<double>(n)));
  const double exact_delta = audit_shuffle(randomizer, n_eff, bound_eps);
  AmplificationReport report;
  report.eps_l = eps_l;
  report.bound_eps = bound_eps;
  report.exact_delta = exact_delta;
  report.target_delta = delta;
  report.margin = delta - exact_delta;
  report.ok = exact_delta <= delta + kSumTolerance;
  return report;
}

}  // namespace dpcalc
