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

#include "dephasing/bath.hpp"

#include <cmath>

#include "dephasing/errors.hpp"

namespace dephasing {

void BathSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be > 0");
  if (!(mu > -1.0) || !std::isfinite(mu)) throw DomainError("mu must be > -1");
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw DomainError("omega_c must be > 0");
}

void DisplacementSpec::validate() const {
  if (!(gamma_coef >= 0.0) || !std::isfinite(gamma_coef)) {
    throw DomainError("gamma must be >= 0");
  }
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be > 0");
}

void ModelSpec::validate() const {
  if (!std::isfinite(epsilon)) throw DomainError("epsilon must be finite");
  bath.validate();
  displacement.validate();
}

const char* to_string(Backend backend) {
  return backend == Backend::closed_form ? "closed" : "quad";
}

double displacement_norm(const DisplacementSpec& d, double omega_c) {
  d.validate();
  if (!(omega_c > 0.0)) throw DomainError("omega_c must be > 0");
  if (d.gamma_coef == 0.0) return 0.0;
  return d.gamma_coef * gamma(d.nu) * std::pow(omega_c, d.nu);
}

double ground_coherent_overlap(const DisplacementSpec& d, double omega_c) {
  return std::exp(-0.5 * displacement_norm(d, omega_c));
}

namespace {

double closed_kernel(double c, double p, double omega_c, double t) {
  if (c == 0.0) return 0.0;
  if (p == 0.0) return decay_kernel_log_limit(c, omega_c, t);
  return decay_kernel({c, p, omega_c, t});
}

double constant_weight(DisplacementConstant constant) {
  return constant == DisplacementConstant::half ? 0.5 : 1.0;
}

DecoherenceProfile closed_profile(const ModelSpec& m, double t, DisplacementConstant constant) {
  const auto& [alpha, mu, omega_c] = m.bath;
  if (mu < 0.0) {
    throw DomainError("closed-form profile needs mu >= 0; use the quadrature backend");
  }
  const double gamma_coef = m.displacement.gamma_coef;
  const double cross = std::sqrt(alpha * gamma_coef);
  const double kappa = m.kappa();

  DecoherenceProfile out{t, 0.0, 0.0, 0.0, Backend::closed_form};
  out.r = 4.0 * closed_kernel(alpha, mu, omega_c, t);
  if (gamma_coef == 0.0) return out;
  out.s = 2.0 * closed_kernel(cross, kappa, omega_c, t) -
          constant_weight(constant) * displacement_norm(m.displacement, omega_c);
  const double x = omega_c * t;
  out.phi = cross * gamma(kappa) * std::pow(omega_c, kappa) * std::sin(kappa * std::atan(x)) *
            std::exp(-0.5 * kappa * std::log1p(x * x));
  return out;
}

DecoherenceProfile quadrature_profile(const ModelSpec& m, double t,
                                      const QuadratureSettings& settings,
                                      DisplacementConstant constant) {
  const auto& [alpha, mu, omega_c] = m.bath;
  const auto& [gamma_coef, nu] = m.displacement;
  const double inv_cut = 1.0 / omega_c;
  const Envelope envelope = [inv_cut](double w) { return std::exp(-w * inv_cut); };
  const double cross = std::sqrt(alpha * gamma_coef);
  const double kappa = m.kappa();

  DecoherenceProfile out{t, 0.0, 0.0, 0.0, Backend::quadrature};
  out.r = 4.0 * alpha *
          integrate_fourier(envelope, mu, t, Oscillation::one_minus_cos, settings, omega_c);
  if (gamma_coef == 0.0) return out;
  const double norm = gamma_coef * integrate_semi_infinite(envelope, nu, settings, omega_c);
  out.s = 2.0 * cross *
              integrate_fourier(envelope, kappa, t, Oscillation::one_minus_cos, settings,
                                omega_c) -
          constant_weight(constant) * norm;
  out.phi = cross * integrate_fourier(envelope, kappa, t, Oscillation::sine, settings, omega_c);
  return out;
}

}  // namespace

DecoherenceProfile profile_at(const ModelSpec& m, double t, Backend backend,
                              const QuadratureSettings& settings,
                              DisplacementConstant constant) {
  m.validate();
  if (std::isnan(t) || t < 0.0) throw DomainError("profile time must be >= 0");
  if (std::isinf(t)) return profile_limit(m, backend, settings);
  if (backend == Backend::closed_form) return closed_profile(m, t, constant);
  return quadrature_profile(m, t, settings, constant);
}

DecoherenceProfile profile_limit(const ModelSpec& m, Backend backend,
                                 const QuadratureSettings& settings) {
  m.validate();
  const auto& [alpha, mu, omega_c] = m.bath;
  if (!(mu > 0.0)) {
    throw DomainError("long-time limit needs mu > 0: r diverges and the distance limit is 0");
  }
  const auto& [gamma_coef, nu] = m.displacement;
  const double cross = std::sqrt(alpha * gamma_coef);
  const double kappa = m.kappa();

  DecoherenceProfile out{INFINITY, 0.0, 0.0, 0.0, backend};
  if (backend == Backend::closed_form) {
    out.r = 4.0 * decay_kernel_asymptote(alpha, mu, omega_c);
    if (gamma_coef > 0.0) {
      out.s = 2.0 * decay_kernel_asymptote(cross, kappa, omega_c) -
              0.5 * displacement_norm(m.displacement, omega_c);
    }
    return out;
  }
  const double inv_cut = 1.0 / omega_c;
  const Envelope envelope = [inv_cut](double w) { return std::exp(-w * inv_cut); };
  out.r = 4.0 * alpha * integrate_semi_infinite(envelope, mu, settings, omega_c);
  if (gamma_coef > 0.0) {
    out.s = 2.0 * cross * integrate_semi_infinite(envelope, kappa, settings, omega_c) -
            0.5 * gamma_coef * integrate_semi_infinite(envelope, nu, settings, omega_c);
  }
  return out;
}

}  // namespace dephasing
