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

#include "dpcalc/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace dpcalc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_same_size(const Dist& p, const Dist& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distributions live on different alphabets (" +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()) + " symbols)");
  }
}

void check_eps(double eps) {
  if (std::isnan(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be >= 0");
  }
}

void check_two_inputs(const Mechanism& r) {
  if (r.num_inputs() < 2) {
    throw std::invalid_argument("audit needs at least two inputs to compare");
  }
}

}  // namespace

double hockey_stick(const Dist& p, const Dist& q, double eps) {
  check_same_size(p, q);
  check_eps(eps);
  const double scale = std::exp(eps);  // +inf is fine; q-mass then never binds
  double delta = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) {
    // With q(y) == 0 the scaled term is exactly 0 regardless of eps; guard so
    // that exp(inf) * 0 does not poison the sum with NaN.
    const double gap = q[y] > 0.0 ? p[y] - scale * q[y] : p[y];
    if (gap > 0.0) delta += gap;
  }
  return std::min(delta, 1.0);
}

double tv_distance(const Dist& p, const Dist& q) {
  check_same_size(p, q);
  double l1 = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) l1 += std::abs(p[y] - q[y]);
  return 0.5 * l1;
}

double max_log_ratio(const Dist& p, const Dist& q) {
  check_same_size(p, q);
  double best = -kInf;
  for (std::size_t y = 0; y < p.size(); ++y) {
    if (p[y] <= 0.0) continue;
    if (q[y] <= 0.0) return kInf;
    best = std::max(best, std::log(p[y] / q[y]));
  }
  return best;
}

double pair_pure_eps(const Dist& p, const Dist& q) {
  return std::max(0.0, std::max(max_log_ratio(p, q), max_log_ratio(q, p)));
}

double audit_replacement_ldp(const Mechanism& r, double eps) {
  check_two_inputs(r);
  check_eps(eps);
  double worst = 0.0;
  for (std::size_t x = 0; x < r.num_inputs(); ++x) {
    for (std::size_t x2 = 0; x2 < r.num_inputs(); ++x2) {
      if (x == x2) continue;
      worst = std::max(worst, hockey_stick(r.row(x), r.row(x2), eps));
    }
  }
  return worst;
}

double audit_deletion_ldp(const Mechanism& r, const Dist& r0, double eps) {
  check_eps(eps);
  if (r0.size() != r.num_outputs()) {
    throw std::invalid_argument("reference row does not match the output alphabet");
  }
  double worst = 0.0;
  for (std::size_t x = 0; x < r.num_inputs(); ++x) {
    worst = std::max(worst, hockey_stick(r.row(x), r0, eps));
    worst = std::max(worst, hockey_stick(r0, r.row(x), eps));
  }
  return worst;
}

double audit_pure(const Mechanism& r) {
  check_two_inputs(r);
  double worst = 0.0;
  for (std::size_t x = 0; x < r.num_inputs(); ++x) {
    for (std::size_t x2 = x + 1; x2 < r.num_inputs(); ++x2) {
      worst = std::max(worst, pair_pure_eps(r.row(x), r.row(x2)));
      if (worst == kInf) return worst;
    }
  }
  return worst;
}

double audit_pure(const Mechanism& r, const std::vector<NeighborPair>& neighbors) {
  double worst = 0.0;
  for (const NeighborPair& pair : neighbors) {
    worst = std::max(worst, pair_pure_eps(r.row(pair.left), r.row(pair.right)));
    if (worst == kInf) return worst;
  }
  return worst;
}

double audit_central(const Mechanism& m, const std::vector<NeighborPair>& neighbors,
                     double eps) {
  check_eps(eps);
  double worst = 0.0;
  for (const NeighborPair& pair : neighbors) {
    const Dist& left = m.row(pair.left);
    const Dist& right = m.row(pair.right);
    worst = std::max(worst, hockey_stick(left, right, eps));
    worst = std::max(worst, hockey_stick(right, left, eps));
  }
  return worst;
}

Mechanism postprocess(const Mechanism& m, const std::vector<std::string>& target_labels) {
  if (target_labels.size() != m.num_outputs()) {
    throw std::invalid_argument("postprocessing map must cover every output symbol");
  }
  std::vector<std::string> new_outputs;
  std::unordered_map<std::string, std::size_t> index_of;
  for (const std::string& target : target_labels) {
    if (index_of.emplace(target, new_outputs.size()).second) {
      new_outputs.push_back(target);
    }
  }
  std::vector<Dist> rows;
  rows.reserve(m.num_inputs());
  for (std::size_t x = 0; x < m.num_inputs(); ++x) {
    std::vector<double> mass(new_outputs.size(), 0.0);
    for (std::size_t y = 0; y < m.num_outputs(); ++y) {
      mass[index_of.at(target_labels[y])] += m.row(x)[y];
    }
    rows.emplace_back(std::move(mass));
  }
  return Mechanism(m.input_labels(), std::move(new_outputs), std::move(rows));
}

Mechanism mix(const std::vector<std::pair<double, Mechanism>>& weighted) {
  if (weighted.empty()) {
    throw std::invalid_argument("mix requires at least one mechanism");
  }
  const Mechanism& first = weighted.front().second;
  double total_weight = 0.0;
  for (const auto& [weight, mech] : weighted) {
    if (std::isnan(weight) || weight < 0.0) {
      throw std::invalid_argument("mixture weights must be nonnegative");
    }
    total_weight += weight;
    if (mech.input_labels() != first.input_labels() ||
        mech.output_labels() != first.output_labels()) {
      throw std::invalid_argument("mixture components must share both alphabets");
    }
  }
  if (std::abs(total_weight - 1.0) > kSumTolerance) {
    throw std::invalid_argument("mixture weights sum to " + std::to_string(total_weight) +
                                ", expected 1 within 1e-9");
  }
  std::vector<Dist> rows;
  rows.reserve(first.num_inputs());
  for (std::size_t x = 0; x < first.num_inputs(); ++x) {
    std::vector<double> mass(first.num_outputs(), 0.0);
    for (const auto& [weight, mech] : weighted) {
      for (std::size_t y = 0; y < first.num_outputs(); ++y) {
        mass[y] += weight * mech.row(x)[y];
      }
    }
    rows.emplace_back(std::move(mass));
  }
  return Mechanism(first.input_labels(), first.output_labels(), std::move(rows));
}

std::vector<Dist> deletion_reference_candidates(const Mechanism& r) {
  std::vector<Dist> candidates;
  candidates.push_back(Dist::uniform(r.num_outputs()));
  std::vector<double> average(r.num_outputs(), 0.0);
  for (std::size_t x = 0; x < r.num_inputs(); ++x) {
    for (std::size_t y = 0; y < r.num_outputs(); ++y) {
      average[y] += r.row(x)[y] / static_cast<double>(r.num_inputs());
    }
  }
  candidates.emplace_back(std::move(average));
  for (std::size_t x = 0; x < r.num_inputs(); ++x) candidates.push_back(r.row(x));
  return candidates;
}

}  // namespace dpcalc
