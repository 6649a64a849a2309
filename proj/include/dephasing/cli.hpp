// Copyright 2026 The dephasing Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dephasing/analysis.hpp"

namespace dephasing::cli {

enum ExitCode : int {
  kOk = 0,
  kNumericalFailure = 1,
  kUsageError = 2,
  kNoBracket = 3,
};

/// Entry point of the `dephasing` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// CSV with header t,distance,abs_A1,abs_A2,r,s,phi and 17 significant digits.
void write_series_csv(std::ostream& out, const DistanceSeries& series);

/// JSON object with keys plane, axes, labels, gain_ratio (and boundary when refined).
void write_region_json(std::ostream& out, const RegionMap& map, bool with_boundary);

/// Shortest "%.17g" rendering used in every numeric output.
std::string format_real(double value);

struct ValidationOptions {
  int samples = 100;
  double tol = 1e-6;
  std::uint64_t seed = 42;
  /// Use the full-weight constant in s(t); the overlap suite must then fail.
  bool corrupt_s_constant = false;
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  double worst_abs_error = 0.0;
  double worst_rel_error = 0.0;

  bool ok() const { return passed == total; }
};

/// Oracle-equivalence, consistency, physicality and distance suites over
/// seeded random samples. Deterministic for fixed options.
std::vector<SuiteResult> run_validation(const ValidationOptions& options);

}  // namespace dephasing::cli
