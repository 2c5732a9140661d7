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

#ifndef DPCALC_MECHANISM_IO_H_
#define DPCALC_MECHANISM_IO_H_

#include <string>

#include "dpcalc/dist.h"
#include "dpcalc/mechanism.h"

namespace dpcalc {

// Mechanism file format (UTF-8 JSON):
//   {
//     "inputs":  ["0", "1"],
//     "outputs": ["0", "1"],
//     "rows":    [[0.7310586, 0.2689414], [0.2689414, 0.7310586]]
//   }
// rows[i][j] = Pr[output j | input i]; each row must sum to 1 within 1e-9.
// Errors name the offending field (e.g. "rows[1][2]").
Mechanism load_mechanism(const std::string& path);
void save_mechanism(const Mechanism& mechanism, const std::string& path);

// Reference-row file format: {"outputs": [...], "mass": [...]}.
Dist load_dist(const std::string& path);

// Parse from an in-memory JSON string (same format/errors as the file
// variants; `where` names the source in error messages).
Mechanism parse_mechanism(const std::string& text, const std::string& where);

}  // namespace dpcalc

#endif  // DPCALC_MECHANISM_IO_H_
