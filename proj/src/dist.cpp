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

#include "dpcalc/dist.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpcalc {

Dist::Dist(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) {
    throw std::invalid_argument("distribution must have at least one symbol");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < mass_.size(); ++i) {
    double& m = mass_[i];
    if (!std::isfinite(m)) {
      throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                  " is not finite");
    }
    if (m < 0.0) {
      if (m < -kMassTolerance) {
        throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                    " is negative: " + std::to_string(m));
      }
      m = 0.0;
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("distribution mass sums to " + std::to_string(total) +
                                ", expected 1 within 1e-9");
  }
  for (double& m : mass_) m /= total;
}

Dist Dist::uniform(std::size_t size) {
  return Dist(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Dist Dist::point_mass(std::size_t size, std::size_t at) {
  std::vector<double> mass(size, 0.0);
  mass.at(at) = 1.0;
  return Dist(std::move(mass));
}

}  // namespace dpcalc
