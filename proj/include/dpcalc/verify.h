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

#ifndef DPCALC_VERIFY_H_
#define DPCALC_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace dpcalc {

// Outcome of one named verification check.  A check usually folds many
// elementary comparisons (grid points, random instances); `count` says how
// many, and expected/achieved describe the single worst one.  `margin` is
// the worst slack observed, oriented so that pass == (margin >= -tolerance):
// bound checks use bound - value, equality checks use -|difference|.
struct CheckResult {
  std::string id;
  std::string claim;
  nlohmann::json inputs;
  double expected = 0.0;
  double achieved = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  int64_t count = 0;
};

// Suite names accepted by run_suite: "dp", "ldp", "counterexample",
// "shuffle", "subsample", "appendix", and "all" (their concatenation).
const std::vector<std::string>& suite_names();

// Runs every check in the suite.  All randomness is drawn from deterministic
// per-check streams derived from `seed`, so the results (including every
// float) are reproducible.  Throws std::invalid_argument for unknown names.
std::vector<CheckResult> run_suite(const std::string& suite, uint64_t seed);

// Serializes a result as a single-line JSON record (no trailing newline).
std::string to_json_line(const CheckResult& result);

}  // namespace dpcalc

#endif  // DPCALC_VERIFY_H_
