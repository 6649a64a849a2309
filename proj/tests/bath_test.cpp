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

#include <gtest/gtest.h>

#include <cmath>

#include "dephasing/errors.hpp"
#include "oracles.hpp"

namespace dephasing {
namespace {

using testing::gamma_oracle;
using testing::Rng;

ModelSpec make_model(double alpha, double mu, double gamma_coef, double nu, double omega_c = 1.0) {
  ModelSpec m;
  m.bath = {alpha, mu, omega_c};
  m.displacement = {gamma_coef, nu};
  return m;
}

ModelSpec growth_model() { return make_model(0.0025, 0.01, 0.05, 0.05); }

ModelSpec random_model(Rng& rng) {
  return make_model(rng.uniform(1e-4, 1.0), rng.positive(2.0), rng.uniform(1e-4, 1.0),
                    rng.positive(2.0), rng.uniform(0.5, 2.0));
}

void expect_close(double value, double reference, const char* what) {
  EXPECT_LE(std::abs(value - reference), std::max(1e-8, 1e-6 * std::abs(reference)))
      << what << ": " << value << " vs " << reference;
}

TEST(Overlap, Examples) {
  EXPECT_EQ(ground_coherent_overlap({0.0, 0.7}, 1.0), 1.0);
  EXPECT_EQ(ground_coherent_overlap({0.0, 0.7}, 1.8), 1.0);
  // exp(-0.05 Gamma(0.05) / 2).
  const double expected = std::exp(-0.025 * gamma_oracle(0.05));
  EXPECT_NEAR(ground_coherent_overlap({0.05, 0.05}, 1.0), expected, 1e-14);
  EXPECT_NEAR(ground_coherent_overlap({0.05, 0.05}, 1.0), 0.61461935805643665, 1e-14);
  EXPECT_NEAR(ground_coherent_overlap({1.0, 1.0}, 1.0), std::exp(-0.5), 1e-15);
}

TEST(Overlap, MatchesQuadratureOfDisplacementNorm) {
  const QuadratureSettings settings;
  for (double nu : {0.05, 0.5, 1.7}) {
    for (double wc : {0.5, 1.0, 2.0}) {
      const Envelope e = [wc](double w) { return std::exp(-w / wc); };
      const double norm = 0.3 * integrate_semi_infinite(e, nu, settings, wc);
      EXPECT_NEAR(ground_coherent_overlap({0.3, nu}, wc), std::exp(-0.5 * norm), 1e-8);
    }
  }
}

TEST(Specs, Validation) {
  EXPECT_THROW((BathSpec{0.0, 0.5, 1.0}.validate()), DomainError);
  EXPECT_THROW((BathSpec{0.1, -1.0, 1.0}.validate()), DomainError);
  EXPECT_THROW((BathSpec{0.1, 0.5, 0.0}.validate()), DomainError);
  EXPECT_NO_THROW((BathSpec{0.1, -0.5, 1.0}.validate()));
  EXPECT_THROW((DisplacementSpec{-0.1, 0.5}.validate()), DomainError);
  EXPECT_THROW((DisplacementSpec{0.1, 0.0}.validate()), DomainError);
  EXPECT_NO_THROW((DisplacementSpec{0.0, 0.5}.validate()));
  ModelSpec m = growth_model();
  m.epsilon = NAN;
  EXPECT_THROW(m.validate(), DomainError);
  EXPECT_DOUBLE_EQ(growth_model().kappa(), 0.03);
}

TEST(Profile, InitialValues) {
  for (Backend backend : {Backend::closed_form, Backend::quadrature}) {
    const ModelSpec m = make_model(0.3, 0.4, 0.2, 0.9, 1.5);
    const DecoherenceProfile p = profile_at(m, 0.0, backend);
    EXPECT_EQ(p.r, 0.0);
    EXPECT_EQ(p.phi, 0.0);
    EXPECT_NEAR(p.s, -0.5 * 0.2 * gamma_oracle(0.9) * std::pow(1.5, 0.9), 1e-9);
    EXPECT_EQ(p.backend, backend);
  }
}

TEST(Profile, PhaseAtUnitExponents) {
  // Phi = Gamma(1) sin(atan 1) / sqrt 2 = 1/2 = Integral e^-w sin w.
  const ModelSpec m = make_model(1.0, 1.0, 1.0, 1.0);
  EXPECT_NEAR(profile_at(m, 1.0).phi, 0.5, 1e-15);
  EXPECT_NEAR(profile_at(m, 1.0, Backend::quadrature).phi, 0.5, 1e-10);
}

TEST(Profile, LongTimeLimitExamples) {
  const ModelSpec strong = make_model(0.01, 0.01, 0.05, 0.05);
  const DecoherenceProfile limit = profile_limit(strong);
  EXPECT_TRUE(limit.is_limit());
  EXPECT_NEAR(limit.r, 4.0 * 0.01 * gamma_oracle(0.01), 1e-12);
  EXPECT_NEAR(limit.r, 3.9773034047660241, 1e-12);
  EXPECT_EQ(limit.phi, 0.0);

  const DecoherenceProfile growth = profile_limit(growth_model());
  EXPECT_NEAR(growth.s, 0.24634271678691465, 1e-13);
  EXPECT_NEAR(growth.r, 0.99432585119150604, 1e-13);
  const double s_oracle = 2.0 * std::sqrt(0.0025 * 0.05) * gamma_oracle(0.03) -
                          0.5 * 0.05 * gamma_oracle(0.05);
  EXPECT_NEAR(growth.s, s_oracle, 1e-13);

  // Independent route: non-oscillating parts of the defining integrals.
  const DecoherenceProfile quad = profile_limit(growth_model(), Backend::quadrature);
  expect_close(quad.r, growth.r, "r_inf");
  expect_close(quad.s, growth.s, "s_inf");
  expect_close(profile_limit(strong, Backend::quadrature).r, limit.r, "r_inf strong");

  const DecoherenceProfile no_displacement = profile_limit(make_model(0.1, 0.5, 0.0, 0.3));
  EXPECT_EQ(no_displacement.s, 0.0);
  EXPECT_EQ(no_displacement.phi, 0.0);

  // Kernels scale with their prefactors: alpha -> 0 leaves s at s(0), r at 0.
  const ModelSpec weak = make_model(1e-14, 0.3, 0.2, 0.4);
  EXPECT_NEAR(profile_limit(weak).s, profile_at(weak, 0.0).s, 1e-6);
  EXPECT_NEAR(profile_limit(weak).r, 0.0, 1e-12);
}

TEST(Profile, InfiniteTimeDelegatesToLimit) {
  const DecoherenceProfile p = profile_at(growth_model(), INFINITY);
  EXPECT_TRUE(p.is_limit());
  EXPECT_EQ(p.r, profile_limit(growth_model()).r);
}

TEST(Profile, DomainErrors) {
  EXPECT_THROW(profile_limit(make_model(0.1, 0.0, 0.1, 0.5)), DomainError);
  EXPECT_THROW(profile_limit(make_model(0.1, -0.5, 0.1, 0.5)), DomainError);
  EXPECT_THROW(profile_at(make_model(0.1, -0.5, 0.1, 0.5), 1.0), DomainError);
  EXPECT_THROW(profile_at(growth_model(), -1.0), DomainError);
  EXPECT_THROW(profile_at(make_model(0.0, 0.5, 0.1, 0.5), 1.0), DomainError);
}

TEST(Profile, OhmicAndSubOhmicUseQuadrature) {
  // mu == 0: the closed form reduces to 2 alpha ln(1 + wc^2 t^2).
  const ModelSpec ohmic = make_model(0.2, 0.0, 0.1, 0.5, 1.3);
  for (double t : {0.5, 3.0, 60.0}) {
    const DecoherenceProfile closed = profile_at(ohmic, t);
    const DecoherenceProfile quad = profile_at(ohmic, t, Backend::quadrature);
    EXPECT_NEAR(closed.r, 0.4 * std::log1p(1.69 * t * t), 1e-14);
    expect_close(quad.r, closed.r, "ohmic r");
    expect_close(quad.s, closed.s, "ohmic s");
    expect_close(quad.phi, closed.phi, "ohmic phi");
  }
  // mu < 0: only quadrature; r keeps growing (as t^-mu) and stays finite.
  const ModelSpec sub = make_model(0.2, -0.4, 0.1, 0.9);
  const double r1 = profile_at(sub, 10.0, Backend::quadrature).r;
  const double r2 = profile_at(sub, 100.0, Backend::quadrature).r;
  EXPECT_GT(r2, r1);
  EXPECT_TRUE(std::isfinite(r2));
}

TEST(Profile, BackendsAgreeOnRandomTuples) {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const ModelSpec m = random_model(rng);
    const double t = rng.uniform(0.0, 100.0);
    const DecoherenceProfile closed = profile_at(m, t);
    const DecoherenceProfile quad = profile_at(m, t, Backend::quadrature);
    expect_close(quad.r, closed.r, "r");
    expect_close(quad.s, closed.s, "s");
    expect_close(quad.phi, closed.phi, "phi");
  }
}

TEST(Profile, OverlapIsExpOfInitialS) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const ModelSpec m = random_model(rng);
    const double overlap = ground_coherent_overlap(m.displacement, m.bath.omega_c);
    EXPECT_NEAR(std::exp(profile_at(m, 0.0).s), overlap, 1e-12 * overlap);
  }
}

TEST(Profile, FullWeightConstantBreaksOverlapIdentity) {
  const ModelSpec m = growth_model();
  const double overlap = ground_coherent_overlap(m.displacement, 1.0);
  const double s0 = profile_at(m, 0.0, Backend::closed_form, {}, DisplacementConstant::full).s;
  EXPECT_GT(std::abs(std::exp(s0) - overlap), 0.1);
  EXPECT_NEAR(std::exp(s0), overlap * overlap, 1e-14);
}

TEST(Profile, RMonotoneForSuperOhmicUpToOne) {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const ModelSpec m = make_model(rng.uniform(1e-4, 1.0), rng.positive(1.0), 0.1, 0.5,
                                   rng.uniform(0.5, 2.0));
    double previous = 0.0;
    for (double t = 0.0; t < 500.0; t = 1.3 * t + 0.01) {
      const double r = profile_at(m, t).r;
      EXPECT_GE(r, previous);
      previous = r;
    }
  }
}

TEST(Profile, CoherenceFactorBound) {
  // s - r <= 0 keeps |A_1| <= 1 (Cauchy-Schwarz on g_h f).
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const ModelSpec m = random_model(rng);
    for (double t : {0.0, rng.uniform(0.0, 10.0), rng.uniform(10.0, 1e4)}) {
      const DecoherenceProfile p = profile_at(m, t);
      EXPECT_LE(p.s - p.r, 1e-12);
    }
    const DecoherenceProfile limit = profile_limit(m);
    EXPECT_LE(limit.s - limit.r, 1e-12);
  }
}

TEST(Profile, ConvergesToLimit) {
  // Deficits decay as T^-p, so 1e-3 at T = 1e4 needs exponents of order 3/4.
  for (const ModelSpec& m : {make_model(0.2, 0.8, 0.3, 0.9), make_model(0.05, 1.5, 0.1, 0.75),
                             make_model(0.01, 0.75, 0.5, 2.0, 2.0)}) {
    const DecoherenceProfile at = profile_at(m, 1e4 / m.bath.omega_c);
    const DecoherenceProfile limit = profile_limit(m);
    EXPECT_LE(std::abs(at.r - limit.r), 1e-3 * std::abs(limit.r));
    EXPECT_LE(std::abs(at.s - limit.s), 1e-3 * std::abs(limit.s));
    EXPECT_LE(std::abs(at.phi), 1e-3 * std::abs(profile_at(m, 1.0).phi));
  }
  // For mu = 0.01 the deficit at T is cos(mu atan T) (1 + T^2)^(-mu/2) of r_inf.
  const ModelSpec slow = growth_model();
  const double t = 1e4;
  const double deficit = std::cos(0.01 * std::atan(t)) * std::pow(1.0 + t * t, -0.005);
  const double r_inf = profile_limit(slow).r;
  EXPECT_NEAR(r_inf - profile_at(slow, t).r, r_inf * deficit, 1e-12);
  EXPECT_GT(deficit, 0.9);
}

TEST(Profile, CutoffScaling) {
  // r depends on (alpha, omega_c, t) through alpha omega_c^mu and omega_c t.
  const ModelSpec scaled = make_model(0.3, 0.6, 0.2, 0.4, 1.7);
  ModelSpec unit = make_model(0.3 * std::pow(1.7, 0.6), 0.6, 0.2 * std::pow(1.7, 0.4), 0.4, 1.0);
  for (double t : {0.2, 2.0, 20.0}) {
    const DecoherenceProfile a = profile_at(scaled, t);
    const DecoherenceProfile b = profile_at(unit, 1.7 * t);
    EXPECT_NEAR(a.r, b.r, 1e-13);
    EXPECT_NEAR(a.s, b.s, 1e-13);
    EXPECT_NEAR(a.phi, b.phi, 1e-13);
    const DecoherenceProfile q = profile_at(scaled, t, Backend::quadrature);
    expect_close(q.r, b.r, "scaled r");
  }
}

}  // namespace
}  // namespace dephasing
