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

#include "dephasing/numerics.hpp"

#include <cmath>
#include <string>

#include "dephasing/errors.hpp"

namespace dephasing {

void QuadratureSettings::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw DomainError("quadrature abs_tol must be positive");
  }
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw DomainError("quadrature rel_tol must be positive");
  }
  if (max_subdivisions < 1) {
    throw DomainError("quadrature max_subdivisions must be at least 1");
  }
  if (!(tail_cut_multiplier >= 10.0) || !std::isfinite(tail_cut_multiplier)) {
    throw DomainError("quadrature tail_cut_multiplier must be at least 10");
  }
}

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma: argument must be finite and positive, got " + std::to_string(x));
  }
  return std::tgamma(x);
}

namespace {

void check_kernel_common(double c, double omega_c, double t) {
  if (!std::isfinite(c) || c < 0.0) throw DomainError("decay kernel: prefactor must be >= 0");
  if (!std::isfinite(omega_c) || omega_c <= 0.0) {
    throw DomainError("decay kernel: cutoff frequency must be > 0");
  }
  if (std::isnan(t) || t < 0.0) throw DomainError("decay kernel: time must be >= 0");
}

}  // namespace

double decay_kernel_log_limit(double c, double omega_c, double t) {
  check_kernel_common(c, omega_c, t);
  if (std::isinf(t)) return c == 0.0 ? 0.0 : INFINITY;
  const double x = omega_c * t;
  return 0.5 * c * std::log1p(x * x);
}

double decay_kernel_asymptote(double c, double p, double omega_c) {
  check_kernel_common(c, omega_c, 0.0);
  if (!(p > 0.0)) throw DomainError("decay kernel: asymptote requires p > 0");
  return c * gamma(p) * std::pow(omega_c, p);
}

double decay_kernel(const KernelArgs& args) {
  const auto [c, p, omega_c, t] = args;
  check_kernel_common(c, omega_c, t);
  if (std::isnan(p) || p <= -1.0) {
    throw DomainError("decay kernel: exponent must exceed -1");
  }
  if (p <= 0.0) {
    throw DomainError("decay kernel: closed form needs p > 0; use the quadrature backend");
  }
  if (p < kSmallExponentSwitch) return decay_kernel_log_limit(c, omega_c, t);
  if (std::isinf(t)) return decay_kernel_asymptote(c, p, omega_c);

  // 1 - cos(p theta) (1+x^2)^(-p/2) written as (1 - e^-L) + e^-L (1 - cos p theta)
  // so small exponents and short times do not cancel.
  const double x = omega_c * t;
  const double theta = std::atan(x);
  const double decay = 0.5 * p * std::log1p(x * x);
  const double half = std::sin(0.5 * p * theta);
  const double bracket = -std::expm1(-decay) + std::exp(-decay) * 2.0 * half * half;
  return c * gamma(p) * std::pow(omega_c, p) * bracket;
}

double kernel_by_quadrature(const KernelArgs& args, const QuadratureSettings& settings) {
  const auto [c, p, omega_c, t] = args;
  check_kernel_common(c, omega_c, t);
  if (std::isnan(p) || p <= -1.0) {
    throw DomainError("decay kernel: exponent must exceed -1");
  }
  if (c == 0.0 || t == 0.0) return 0.0;
  const double inv_cut = 1.0 / omega_c;
  const Envelope envelope = [inv_cut](double w) { return std::exp(-w * inv_cut); };
  return c * integrate_fourier(envelope, p, t, Oscillation::one_minus_cos, settings, omega_c);
}

}  // namespace dephasing
