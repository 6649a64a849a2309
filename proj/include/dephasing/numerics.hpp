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

#include <functional>

namespace dephasing {

/// Tolerances and limits for the adaptive quadrature oracle.
struct QuadratureSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  /// Upper integration limit, in units of the cutoff frequency.
  double tail_cut_multiplier = 200.0;

  /// Throws DomainError unless every field is inside its documented range.
  void validate() const;
};

/// Arguments of the decay kernel
///   c * Integral_0^inf w^(p-1) exp(-w/omega_c) (1 - cos w t) dw.
struct KernelArgs {
  double c = 1.0;
  double p = 1.0;
  double omega_c = 1.0;
  double t = 0.0;
};

/// Euler gamma function for real x > 0. Relative error below 1e-13 on (0, 50].
double gamma(double x);

/// Exponents below this use the logarithmic p -> 0 continuation of the kernel.
inline constexpr double kSmallExponentSwitch = 1e-8;

/// Closed form of the decay kernel:
///   c Gamma(p) omega_c^p { 1 - cos[p atan(omega_c t)] / (1 + omega_c^2 t^2)^(p/2) }.
/// Non-negative, zero at t = 0, saturating at c Gamma(p) omega_c^p.
/// Exponents p <= 0 are refused (DomainError); use kernel_by_quadrature there.
double decay_kernel(const KernelArgs& args);

/// The p -> 0 limit of decay_kernel: (c/2) ln(1 + omega_c^2 t^2).
double decay_kernel_log_limit(double c, double omega_c, double t);

/// t -> infinity limit of decay_kernel for p > 0: c Gamma(p) omega_c^p.
double decay_kernel_asymptote(double c, double p, double omega_c);

/// Regular (non-singular, non-oscillating) factor h of an integrand w^(q-1) h(w).
using Envelope = std::function<double(double)>;

/// Integral_0^inf w^(exponent-1) envelope(w) dw for exponent > 0.
///
/// `scale` is the characteristic decay length of the envelope (the cutoff
/// frequency for the bath envelopes). The domain is truncated at
/// tail_cut_multiplier * scale. For exponent < 1 the endpoint singularity is
/// removed with the substitution w = scale * u^(1/exponent).
///
/// Throws NonConvergenceError when the tolerance is not met within
/// settings.max_subdivisions.
double integrate_semi_infinite(const Envelope& envelope, double exponent,
                               const QuadratureSettings& settings, double scale = 1.0);

enum class Oscillation {
  one_minus_cos,  ///< 1 - cos(w t)
  sine,           ///< sin(w t)
};

/// Integral_0^inf w^(exponent-1) envelope(w) osc(w t) dw for exponent > -1.
///
/// Few oscillations over the truncated domain are integrated directly. Otherwise
/// the integral is split at the first zeros of the oscillating factor and the
/// remaining half-period panels are summed with Wynn epsilon extrapolation; the
/// non-oscillating part of 1 - cos(w t) is integrated separately.
double integrate_fourier(const Envelope& envelope, double exponent, double t, Oscillation osc,
                         const QuadratureSettings& settings, double scale = 1.0);

/// The decay kernel evaluated from its defining integral. Valid for p > -1.
double kernel_by_quadrature(const KernelArgs& args, const QuadratureSettings& settings);

}  // namespace dephasing
