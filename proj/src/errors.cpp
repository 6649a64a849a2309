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

#include "dephasing/errors.hpp"

#include <cstdio>

namespace dephasing {

namespace {

std::string with_estimate(const std::string& what, double value, double error_estimate) {
  char buf[160];
  std::snprintf(buf, sizeof buf, " (value %.17g, error estimate %.3g)", value, error_estimate);
  return what + buf;
}

}  // namespace

NonConvergenceError::NonConvergenceError(const std::string& what, double value,
                                         double error_estimate)
    : std::runtime_error(with_estimate(what, value, error_estimate)),
      value_(value),
      error_estimate_(error_estimate) {}

}  // namespace dephasing
