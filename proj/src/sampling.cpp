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

#include "dpcalc/sampling.h"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dpcalc {

DeterministicRng DeterministicRng::for_check(uint64_t seed, const std::string& check_id) {
  // FNV-1a over the check id, folded into the seed.  Any stable mixing works;
  // the goal is just distinct, reproducible streams per check.
  uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : check_id) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return DeterministicRng(seed ^ hash);
}

double DeterministicRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double DeterministicRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int64_t DeterministicRng::uniform_int(int64_t lo, int64_t hi) {
  if (lo > hi) {
    throw std::invalid_argument("empty integer range");
  }
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  // Rejection sampling to stay unbiased and platform-stable.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<int64_t>(draw % span);
}

Dist sample_dist(DeterministicRng& rng, std::size_t size, double uniform_blend) {
  if (size == 0) {
    throw std::invalid_argument("distribution must have at least one symbol");
  }
  if (uniform_blend < 0.0 || uniform_blend > 1.0) {
    throw std::invalid_argument("uniform_blend must lie in [0, 1]");
  }
  // Flat Dirichlet via normalized exponentials.
  std::vector<double> mass(size);
  double total = 0.0;
  for (double& m : mass) {
    m = -std::log(1.0 - rng.uniform());
    total += m;
  }
  const double u = uniform_blend / static_cast<double>(size);
  for (double& m : mass) {
    m = (1.0 - uniform_blend) * (m / total) + u;
  }
  return Dist(std::move(mass));
}

Mechanism sample_mechanism(DeterministicRng& rng, std::size_t num_inputs,
                           std::size_t num_outputs, double uniform_blend) {
  std::vector<std::string> inputs, outputs;
  for (std::size_t i = 0; i < num_inputs; ++i) inputs.push_back(std::to_string(i));
  for (std::size_t i = 0; i < num_outputs; ++i) outputs.push_back(std::to_string(i));
  std::vector<Dist> rows;
  rows.reserve(num_inputs);
  for (std::size_t i = 0; i < num_inputs; ++i) {
    rows.push_back(sample_dist(rng, num_outputs, uniform_blend));
  }
  return Mechanism(std::move(inputs), std::move(outputs), std::move(rows));
}

}  // namespace dpcalc
