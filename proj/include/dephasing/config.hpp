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

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dephasing/analysis.hpp"
#include "dephasing/errors.hpp"

namespace dephasing {

/// Malformed or out-of-domain scenario configuration.
class ConfigError : public DomainError {
 public:
  explicit ConfigError(const std::string& what) : DomainError(what) {}
};

/// Everything a run needs: the two-state scenario, its time grid and where
/// to write results (empty: standard output).
///
/// Text format, one `key = value` per line, `#` starts a comment. Keys:
///   epsilon omega_c alpha mu gamma nu lambda1 lambda2
///   b_plus b_minus b_plus_imag b_minus_imag          (state 1)
///   b2_plus b2_minus b2_plus_imag b2_minus_imag      (state 2, default: state 1)
///   grid (linear|log) t_min t_max points backend (closed|quad) normalized (true|false)
///   abs_tol rel_tol max_subdivisions tail_cut_multiplier out
/// A missing b_minus is completed to sqrt(1 - |b_plus|^2) (and vice versa).
struct ScenarioConfig {
  Scenario scenario;
  TimeGrid grid = TimeGrid::default_for(1.0);
  std::string out;

  void validate() const;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Strict decimal parse of the whole string into an IEEE-754 double.
double parse_real(const std::string& text);

}  // namespace dephasing
