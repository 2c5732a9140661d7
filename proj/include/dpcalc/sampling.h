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

#ifndef DPCALC_SAMPLING_H_
#define DPCALC_SAMPLING_H_

#include <cstdint>
#include <random>
#include <string>

#include "dpcalc/dist.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// Deterministic random source for the property suites.  Uniform doubles are
// derived from raw mt19937_64 output (53 mantissa bits) rather than
// std::uniform_real_distribution, so a seed reproduces the same stream on
// every platform and standard library.
class DeterministicRng {
 public:
  explicit DeterministicRng(uint64_t seed) : engine_(seed) {}

  // Stable way to give each named consumer its own independent stream.
  static DeterministicRng for_check(uint64_t seed, const std::string& check_id);

  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  // Uniform in {lo, ..., hi} inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// Random distribution over `size` symbols: a flat Dirichlet draw, optionally
// blended with the uniform distribution (`uniform_blend` of the mass) to keep
// likelihood ratios bounded.
Dist sample_dist(DeterministicRng& rng, std::size_t size, double uniform_blend = 0.0);

// Random mechanism with the given shape; row i gets labels "0", "1", ....
Mechanism sample_mechanism(DeterministicRng& rng, std::size_t num_inputs,
                           std::size_t num_outputs, double uniform_blend = 0.0);

}  // namespace dpcalc

#endif  // DPCALC_SAMPLING_H_
