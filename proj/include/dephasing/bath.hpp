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

#include <cmath>

#include "dephasing/numerics.hpp"

namespace dephasing {

/// Coupling spectral density g_h^2(w) = alpha w^(mu-1) exp(-w/omega_c).
struct BathSpec {
  double alpha = 0.01;
  double mu = 0.01;  ///< 0 is ohmic, > 0 super-ohmic; must exceed -1
  double omega_c = 1.0;

  void validate() const;
};

/// Coherent displacement profile f^2(w) = gamma w^(nu-1) exp(-w/omega_c).
struct DisplacementSpec {
  double gamma_coef = 0.05;
  double nu = 0.05;

  void validate() const;
};

struct ModelSpec {
  double epsilon = 1.0;  ///< qubit splitting, in units of omega_c
  BathSpec bath;
  DisplacementSpec displacement;

  /// Exponent of the cross term g_h f: (mu + nu) / 2.
  double kappa() const { return 0.5 * (bath.mu + displacement.nu); }

  void validate() const;
};

enum class Backend { closed_form, quadrature };

const char* to_string(Backend backend);

/// r(t), s(t), Phi(t) at one instant. An infinite t marks the long-time limit.
struct DecoherenceProfile {
  double t = 0.0;
  double r = 0.0;
  double s = 0.0;
  double phi = 0.0;
  Backend backend = Backend::closed_form;

  bool is_limit() const { return std::isinf(t); }
};

/// Weight of the constant term of s(t). Only `half` satisfies
/// exp(s(0)) == <Omega_0|Omega_f>; `full` is kept so the self-validation can
/// demonstrate that it breaks the identity.
enum class DisplacementConstant { half, full };

/// Integral of f^2 over [0, inf): gamma Gamma(nu) omega_c^nu.
double displacement_norm(const DisplacementSpec& d, double omega_c);

/// Re <Omega_0|Omega_f> = exp(-displacement_norm / 2), in (0, 1].
double ground_coherent_overlap(const DisplacementSpec& d, double omega_c);

/// Decoherence functions at time t >= 0.
///
/// The closed-form backend needs mu >= 0 (mu == 0 uses the logarithmic
/// limit); the quadrature backend accepts the full range mu > -1.
DecoherenceProfile profile_at(const ModelSpec& m, double t, Backend backend = Backend::closed_form,
                              const QuadratureSettings& settings = {},
                              DisplacementConstant constant = DisplacementConstant::half);

/// t -> infinity limit: r = 4 alpha Gamma(mu) omega_c^mu,
/// s = 2 sqrt(alpha gamma) Gamma(kappa) omega_c^kappa - gamma Gamma(nu) omega_c^nu / 2, Phi = 0.
///
/// The quadrature backend integrates the non-oscillating parts of the defining
/// integrals, which is where the cosine and sine terms go as t grows.
/// Throws DomainError for mu <= 0, where r grows without bound and every
/// coherence (hence every distance between the evolving states) decays to zero.
DecoherenceProfile profile_limit(const ModelSpec& m, Backend backend = Backend::closed_form,
                                 const QuadratureSettings& settings = {});

}  // namespace dephasing
