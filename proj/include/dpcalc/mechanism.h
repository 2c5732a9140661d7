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

#ifndef DPCALC_MECHANISM_H_
#define DPCALC_MECHANISM_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpcalc/dist.h"

namespace dpcalc {

// A finite mechanism (randomizer): one output distribution per input symbol.
// Input and output alphabets carry string labels; all numeric code works with
// indices into those alphabets.
class Mechanism {
 public:
  // Throws std::invalid_argument if alphabets are empty or contain duplicate
  // labels, or if the number/length of rows does not match the alphabets.
  Mechanism(std::vector<std::string> inputs, std::vector<std::string> outputs,
            std::vector<Dist> rows);

  // Binary randomized response: inputs/outputs {"0","1"}, where the true
  // value is reported with probability e^eps / (e^eps + 1).
  static Mechanism randomized_response(double eps);

  // Same output row for every input (zero privacy loss).
  static Mechanism constant(std::vector<std::string> inputs, std::vector<std::string> outputs,
                            Dist row);

  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  const std::vector<std::string>& input_labels() const { return inputs_; }
  const std::vector<std::string>& output_labels() const { return outputs_; }
  const Dist& row(std::size_t x) const;
  const std::vector<Dist>& rows() const { return rows_; }

  std::optional<std::size_t> input_index(const std::string& label) const;
  std::optional<std::size_t> output_index(const std::string& label) const;

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<Dist> rows_;
};

// An ordered pair of input indices treated as neighboring datasets when
// auditing a mechanism against a caller-supplied neighbor relation.
struct NeighborPair {
  std::size_t left = 0;
  std::size_t right = 0;
};

// A privacy budget: eps >= 0 (may be +infinity), delta in [0, 1].
// Construction-side validation lives in validate().
struct PrivacyBudget {
  double eps = 0.0;
  double delta = 0.0;

  // Throws std::invalid_argument when eps < 0, delta outside [0, 1], or
  // either is NaN.
  void validate() const;
};

// A discretized (eps, delta) tradeoff: eps strictly increasing, delta
// nonincreasing, all deltas in [0, 1].
class TradeoffCurve {
 public:
  struct Point {
    double eps;
    double delta;
  };

  // Throws std::invalid_argument when the monotonicity or range invariants
  // fail.
  explicit TradeoffCurve(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }

 private:
  std::vector<Point> points_;
};

}  // namespace dpcalc

#endif  // DPCALC_MECHANISM_H_
