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

#ifndef DPCALC_DIST_H_
#define DPCALC_DIST_H_

#include <cstddef>
#include <vector>

namespace dpcalc {

// Probability mass tolerances used across the library.  A vector is accepted
// as a distribution when its entries are nonnegative (tiny negative dust from
// float arithmetic, above -kMassTolerance, is clamped to zero) and its total
// mass is within kSumTolerance of one; it is then renormalized exactly.
inline constexpr double kSumTolerance = 1e-9;
inline constexpr double kMassTolerance = 1e-12;

// A finite probability distribution: a dense vector of nonnegative masses
// summing to one.  Symbol identity (labels) lives in Mechanism; Dist is just
// the numeric row.
class Dist {
 public:
  // Validates and normalizes `mass`.  Throws std::invalid_argument if any
  // entry is negative beyond tolerance, the vector is empty, or the total is
  // not within kSumTolerance of one.
  explicit Dist(std::vector<double> mass);

  static Dist uniform(std::size_t size);
  static Dist point_mass(std::size_t size, std::size_t at);

  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  const std::vector<double>& mass() const { return mass_; }

  bool operator==(const Dist& other) const = default;

 private:
  std::vector<double> mass_;
};

}  // namespace dpcalc

#endif  // DPCALC_DIST_H_
