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

#include <stdexcept>
#include <string>

namespace dephasing {

/// Argument outside the mathematical or physical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Adaptive quadrature could not reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, double value, double error_estimate);

  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double value_;
  double error_estimate_;
};

/// A decoherence factor or density matrix violates |A| <= 1 / positivity.
class PhysicalityError : public std::runtime_error {
 public:
  explicit PhysicalityError(const std::string& what) : std::runtime_error(what) {}
};

/// A bisection bracket does not straddle the requested sign change.
class NoBracketError : public std::runtime_error {
 public:
  NoBracketError(const std::string& what, double ratio_lo, double ratio_hi)
      : std::runtime_error(what), ratio_lo_(ratio_lo), ratio_hi_(ratio_hi) {}

  double ratio_lo() const noexcept { return ratio_lo_; }
  double ratio_hi() const noexcept { return ratio_hi_; }

 private:
  double ratio_lo_;
  double ratio_hi_;
};

}  // namespace dephasing
