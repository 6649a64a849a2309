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

#include "dephasing/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "dephasing/errors.hpp"

namespace dephasing {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
}

void check_overlap(double overlap) {
  if (!(overlap > 0.0 && overlap <= 1.0)) throw DomainError("overlap must lie in (0, 1]");
}

}  // namespace

void QubitAmplitudes::validate(bool require_nonzero) const {
  const double norm = std::norm(b_plus) + std::norm(b_minus);
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    throw DomainError("qubit amplitudes must satisfy |b+|^2 + |b-|^2 = 1");
  }
  if (require_nonzero && (b_plus == 0.0 || b_minus == 0.0)) {
    throw DomainError("correlated initial states need non-zero b+ and b-");
  }
}

void InitialStateSpec::validate() const {
  amplitudes.validate();
  check_lambda(lambda);
}

void QubitDensityMatrix::validate(double tol) const {
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PhysicalityError("density matrix has non-finite entries");
    }
  }
  if (std::abs(entries_[0].imag()) > tol || std::abs(entries_[3].imag()) > tol ||
      std::abs(entries_[1] - std::conj(entries_[2])) > tol) {
    throw PhysicalityError("density matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > tol) throw PhysicalityError("density matrix trace is not 1");
  if (entries_[0].real() < -tol || entries_[3].real() < -tol || determinant().real() < -tol) {
    throw PhysicalityError("density matrix is not positive semidefinite");
  }
}

double normalization_c(double lambda, double overlap) {
  check_lambda(lambda);
  check_overlap(overlap);
  const double mixed = 1.0 - lambda;
  return std::sqrt(mixed * mixed + lambda * lambda + 2.0 * lambda * mixed * overlap);
}

Complex coherence_factor(double lambda, const DecoherenceProfile& p, double epsilon,
                         double overlap) {
  const double c = normalization_c(lambda, overlap);
  const Complex displaced = std::polar(std::exp(p.s), -2.0 * p.phi);
  const Complex bracket = (1.0 - lambda) + lambda * displaced;
  const Complex phase = p.is_limit() ? Complex(1.0) : std::polar(1.0, -2.0 * epsilon * p.t);
  return phase * std::exp(-p.r) * bracket / c;
}

Complex coherence_factor(const InitialStateSpec& s, const DecoherenceProfile& p, double epsilon,
                         double overlap) {
  return coherence_factor(s.lambda, p, epsilon, overlap);
}

QubitDensityMatrix reduced_state(const QubitAmplitudes& b, Complex coherence) {
  b.validate();
  if (!(std::abs(coherence) <= 1.0 + kCoherenceSlack)) {
    throw PhysicalityError("decoherence factor exceeds 1 in modulus");
  }
  const Complex off = b.b_plus * std::conj(b.b_minus) * coherence;
  return QubitDensityMatrix({Complex(std::norm(b.b_plus)), off, std::conj(off),
                             Complex(std::norm(b.b_minus))});
}

QubitDensityMatrix reduced_state(const InitialStateSpec& s, Complex coherence) {
  check_lambda(s.lambda);
  return reduced_state(s.amplitudes, coherence);
}

double trace_distance(const QubitDensityMatrix& rho1, const QubitDensityMatrix& rho2) {
  rho1.validate();
  rho2.validate();
  Eigen::Matrix2cd diff;
  diff << rho1(0, 0) - rho2(0, 0), rho1(0, 1) - rho2(0, 1), rho1(1, 0) - rho2(1, 0),
      rho1(1, 1) - rho2(1, 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double distance_general(const QubitAmplitudes& b1, Complex a1, const QubitAmplitudes& b2,
                        Complex a2) {
  const double diagonal = std::norm(b1.b_plus) - std::norm(b2.b_plus);
  const Complex off =
      b1.b_plus * std::conj(b1.b_minus) * a1 - b2.b_plus * std::conj(b2.b_minus) * a2;
  return std::hypot(diagonal, std::abs(off));
}

double distance_same_environment(const QubitAmplitudes& b1, const QubitAmplitudes& b2,
                                 Complex coherence) {
  const double diagonal = std::norm(b1.b_plus) - std::norm(b2.b_plus);
  const double off =
      std::abs(b1.b_plus * std::conj(b1.b_minus) - b2.b_plus * std::conj(b2.b_minus));
  return std::hypot(diagonal, off * std::abs(coherence));
}

PairWeights pair_weights(double lambda1, double lambda2, double overlap) {
  const double c1 = normalization_c(lambda1, overlap);
  const double c2 = normalization_c(lambda2, overlap);
  if (lambda1 == lambda2) return {};
  return {(1.0 - lambda1) / c1 - (1.0 - lambda2) / c2, lambda1 / c1 - lambda2 / c2};
}

double distance_same_amplitudes(const PairWeights& w, const DecoherenceProfile& p,
                                double bscale) {
  if (!(bscale >= 0.0 && bscale <= 0.5 + 1e-15)) {
    throw DomainError("|b+ b-*| must lie in [0, 1/2]");
  }
  // a^2 + b^2 e^2s + 2ab e^s cos 2Phi == (a + b e^s)^2 - 4ab e^s sin^2 Phi,
  // which stays accurate where a + b e^s passes through zero.
  const double es = std::exp(p.s);
  const double sum = w.a + w.b * es;
  const double sine = std::sin(p.phi);
  const double radicand = sum * sum - 4.0 * w.a * w.b * es * sine * sine;
  return bscale * std::exp(-p.r) * std::sqrt(std::max(0.0, radicand));
}

}  // namespace dephasing
