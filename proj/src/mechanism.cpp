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

#include "dpcalc/mechanism.h"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dpcalc {
namespace {

void check_alphabet(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) {
    throw std::invalid_argument(std::string(what) + " alphabet is empty");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& label : labels) {
    if (!seen.insert(label).second) {
      throw std::invalid_argument(std::string(what) + " alphabet repeats label '" +
                                  label + "'");
    }
  }
}

}  // namespace

Mechanism::Mechanism(std::vector<std::string> inputs, std::vector<std::string> outputs,
                     std::vector<Dist> rows)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), rows_(std::move(rows)) {
  check_alphabet(inputs_, "input");
  check_alphabet(outputs_, "output");
  if (rows_.size() != inputs_.size()) {
    throw std::invalid_argument("mechanism has " + std::to_string(rows_.size()) +
                                " rows for " + std::to_string(inputs_.size()) +
                                " inputs");
  }
  for (const Dist& row : rows_) {
    if (row.size() != outputs_.size()) {
      throw std::invalid_argument("mechanism row length does not match output alphabet");
    }
  }
}

Mechanism Mechanism::randomized_response(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("randomized response requires finite eps >= 0");
  }
  const double keep = std::exp(eps) / (std::exp(eps) + 1.0);
  return Mechanism({"0", "1"}, {"0", "1"},
                   {Dist({keep, 1.0 - keep}), Dist({1.0 - keep, keep})});
}

Mechanism Mechanism::constant(std::vector<std::string> inputs,
                              std::vector<std::string> outputs, Dist row) {
  std::vector<Dist> rows(inputs.size(), row);
  return Mechanism(std::move(inputs), std::move(outputs), std::move(rows));
}

const Dist& Mechanism::row(std::size_t x) const {
  if (x >= rows_.size()) {
    throw std::invalid_argument("input index " + std::to_string(x) +
                                " out of range (mechanism has " +
                                std::to_string(rows_.size()) + " inputs)");
  }
  return rows_[x];
}

std::optional<std::size_t> Mechanism::input_index(const std::string& label) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    if (inputs_[i] == label) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Mechanism::output_index(const std::string& label) const {
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (outputs_[i] == label) return i;
  }
  return std::nullopt;
}

void PrivacyBudget::validate() const {
  if (std::isnan(eps) || std::isnan(delta) || eps < 0.0 || delta < 0.0 || delta > 1.0) {
    throw std::invalid_argument("privacy budget requires eps >= 0 and delta in [0, 1]");
  }
}

TradeoffCurve::TradeoffCurve(std::vector<Point> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].delta < 0.0 || points_[i].delta > 1.0) {
      throw std::invalid_argument("tradeoff delta outside [0, 1]");
    }
    if (i > 0 && !(points_[i].eps > points_[i - 1].eps)) {
      throw std::invalid_argument("tradeoff eps values must be strictly increasing");
    }
    if (i > 0 && points_[i].delta > points_[i - 1].delta + kMassTolerance) {
      throw std::invalid_argument("tradeoff delta values must be nonincreasing");
    }
  }
}

}  // namespace dpcalc
