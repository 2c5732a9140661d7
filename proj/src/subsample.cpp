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

#include "dpcalc/subsample.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace dpcalc {
namespace {

constexpr int64_t kMaxTupleLength = 6;
constexpr std::size_t kMaxRecords = 3;

// All m-element index subsets of {0, ..., n-1}, each sorted ascending.
std::vector<std::vector<std::size_t>> index_subsets(int64_t n, int64_t m) {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> current;
  const std::function<void(std::size_t)> recurse = [&](std::size_t next) {
    if (current.size() == static_cast<std::size_t>(m)) {
      subsets.push_back(current);
      return;
    }
    for (std::size_t i = next; i < static_cast<std::size_t>(n); ++i) {
      current.push_back(i);
      recurse(i + 1);
      current.pop_back();
    }
  };
  recurse(0);
  return subsets;
}

std::string join_labels(const std::vector<std::string>& record_alphabet,
                        const std::vector<std::size_t>& tuple) {
  std::string label;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) label += ",";
    label += record_alphabet[tuple[i]];
  }
  return label;
}

}  // namespace

PrivacyBudget subsample_budget(double eps, double delta, double p) {
  PrivacyBudget{eps, delta}.validate();
  if (!std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite");
  }
  if (std::isnan(p) || p <= 0.0 || p > 1.0) {
    throw std::invalid_argument("sampling rate p must lie in (0, 1]");
  }
  return PrivacyBudget{std::log1p(p * std::expm1(eps)), p * delta};
}

TupleSpace enumerate_tuples(const std::vector<std::string>& record_alphabet, int64_t n) {
  if (record_alphabet.empty() || record_alphabet.size() > kMaxRecords) {
    throw std::invalid_argument("record alphabet must have between 1 and 3 symbols");
  }
  if (n < 1 || n > kMaxTupleLength) {
    throw std::invalid_argument("tuple length must lie in [1, 6]");
  }
  const std::size_t r = record_alphabet.size();
  TupleSpace space;
  std::vector<std::size_t> tuple(static_cast<std::size_t>(n), 0);
  // Odometer enumeration: the last position varies fastest.
  while (true) {
    space.tuples.push_back(tuple);
    space.labels.push_back(join_labels(record_alphabet, tuple));
    std::size_t pos = tuple.size();
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < r) break;
      tuple[pos] = 0;
      if (pos == 0) {
        // Wrapped all the way around: every tuple has been visited.  Now list
        // the ordered pairs that differ in exactly one position.
        for (std::size_t a = 0; a < space.tuples.size(); ++a) {
          for (std::size_t b = 0; b < space.tuples.size(); ++b) {
            if (a == b) continue;
            std::size_t differing = 0;
            for (std::size_t i = 0; i < space.tuples[a].size(); ++i) {
              if (space.tuples[a][i] != space.tuples[b][i]) ++differing;
            }
            if (differing == 1) space.neighbors.push_back({a, b});
          }
        }
        return space;
      }
    }
  }
}

Mechanism build_subsampled(const Mechanism& base,
                           const std::vector<std::string>& record_alphabet, int64_t n,
                           int64_t m) {
  if (m < 1 || m > n) {
    throw std::invalid_argument("need 1 <= m <= n");
  }
  const TupleSpace domain = enumerate_tuples(record_alphabet, n);
  const TupleSpace base_domain = enumerate_tuples(record_alphabet, m);
  if (base.input_labels() != base_domain.labels) {
    throw std::invalid_argument(
        "base mechanism's input alphabet must be the canonical " + std::to_string(m) +
        "-record tuple enumeration");
  }

  // Index of an m-tuple in the canonical (odometer) order.
  const std::size_t r = record_alphabet.size();
  const auto tuple_index = [&](const std::vector<std::size_t>& tuple) {
    std::size_t index = 0;
    for (std::size_t record : tuple) index = index * r + record;
    return index;
  };

  const auto subsets = index_subsets(n, m);
  const double weight = 1.0 / static_cast<double>(subsets.size());
  std::vector<Dist> rows;
  rows.reserve(domain.tuples.size());
  std::vector<std::size_t> projected(static_cast<std::size_t>(m));
  for (const auto& tuple : domain.tuples) {
    std::vector<double> mass(base.num_outputs(), 0.0);
    for (const auto& subset : subsets) {
      for (std::size_t i = 0; i < subset.size(); ++i) projected[i] = tuple[subset[i]];
      const Dist& row = base.row(tuple_index(projected));
      for (std::size_t y = 0; y < mass.size(); ++y) mass[y] += weight * row[y];
    }
    rows.emplace_back(std::move(mass));
  }
  return Mechanism(domain.labels, base.output_labels(), std::move(rows));
}

SubsampleTightness verify_subsample_tightness(double eps, int64_t n, int64_t m) {
  if (std::isnan(eps) || eps < 0.0 || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and >= 0");
  }
  const std::vector<std::string> records = {"0", "1"};
  const TupleSpace base_domain = enumerate_tuples(records, m);

  // Worst-case base: randomized response at eps on the first record,
  // ignoring the others.
  const Mechanism rr = Mechanism::randomized_response(eps);
  std::vector<Dist> rows;
  rows.reserve(base_domain.tuples.size());
  for (const auto& tuple : base_domain.tuples) {
    rows.push_back(rr.row(tuple.front()));
  }
  const Mechanism base(base_domain.labels, rr.output_labels(), std::move(rows));

  const Mechanism subsampled = build_subsampled(base, records, n, m);
  const TupleSpace domain = enumerate_tuples(records, n);

  SubsampleTightness result;
  result.bound_eps = subsample_budget(eps, 0.0, static_cast<double>(m) / static_cast<double>(n)).eps;
  result.audited_eps = audit_pure(subsampled, domain.neighbors);
  result.gap = result.bound_eps - result.audited_eps;
  return result;
}

}  // namespace dpcalc
