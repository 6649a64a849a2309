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

#include <array>
#include <complex>

#include "dephasing/bath.hpp"

namespace dephasing {

using Complex = std::complex<double>;

/// Qubit amplitudes b_+ (on |1>) and b_- (on |-1>) of the initial state.
struct QubitAmplitudes {
  Complex b_plus{M_SQRT1_2, 0.0};
  Complex b_minus{M_SQRT1_2, 0.0};

  /// Checks |b_+|^2 + |b_-|^2 == 1 to 1e-12. With `require_nonzero` both
  /// amplitudes must also be non-zero, as the correlated preparations need.
  void validate(bool require_nonzero = false) const;

  /// |b_+ b_-^*|, the common scale of the off-diagonal elements.
  double coherence_scale() const { return std::abs(b_plus * std::conj(b_minus)); }

  bool operator==(const QubitAmplitudes&) const = default;
};

struct InitialStateSpec {
  QubitAmplitudes amplitudes;
  double lambda = 0.0;  ///< 0: product state; 1: fully displaced branch

  void validate() const;
};

/// 2x2 density matrix in the basis {|1>, |-1>}, stored row-major.
class QubitDensityMatrix {
 public:
  QubitDensityMatrix() = default;
  explicit QubitDensityMatrix(const std::array<Complex, 4>& entries) : entries_(entries) {}

  const Complex& operator()(int row, int col) const { return entries_[2 * row + col]; }
  const std::array<Complex, 4>& entries() const { return entries_; }

  Complex trace() const { return entries_[0] + entries_[3]; }
  Complex determinant() const { return entries_[0] * entries_[3] - entries_[1] * entries_[2]; }

  /// Throws PhysicalityError unless the matrix is Hermitian, has unit trace and
  /// is positive semidefinite, each within `tol`.
  void validate(double tol = 1e-12) const;

 private:
  std::array<Complex, 4> entries_{};
};

/// Coefficients of the two-correlation distance formula.
struct PairWeights {
  double a = 0.0;
  double b = 0.0;
};

/// Physicality slack allowed on |A| before reduced_state refuses it.
inline constexpr double kCoherenceSlack = 1e-9;

/// C_lambda = sqrt((1-lambda)^2 + lambda^2 + 2 lambda (1-lambda) x), x the overlap.
double normalization_c(double lambda, double overlap);

/// A_lambda(t) = C^-1 e^(-2 i eps t) e^(-r) [1 - lambda + lambda e^(-2 i Phi) e^s].
/// For the long-time profile the global phase e^(-2 i eps t) is dropped.
Complex coherence_factor(double lambda, const DecoherenceProfile& p, double epsilon,
                         double overlap);
Complex coherence_factor(const InitialStateSpec& s, const DecoherenceProfile& p, double epsilon,
                         double overlap);

/// Reduced qubit state with coherence b_+ b_-^* A.
QubitDensityMatrix reduced_state(const QubitAmplitudes& b, Complex coherence);
QubitDensityMatrix reduced_state(const InitialStateSpec& s, Complex coherence);

/// Trace distance (1/2) Tr|rho1 - rho2| from the eigenvalues of the difference.
double trace_distance(const QubitDensityMatrix& rho1, const QubitDensityMatrix& rho2);

/// Distance between two states with arbitrary amplitudes and factors A1, A2.
double distance_general(const QubitAmplitudes& b1, Complex a1, const QubitAmplitudes& b2,
                        Complex a2);

/// Distance between two states sharing the environment state (same A).
double distance_same_environment(const QubitAmplitudes& b1, const QubitAmplitudes& b2,
                                 Complex coherence);

PairWeights pair_weights(double lambda1, double lambda2, double overlap);

/// Distance for shared amplitudes and correlations lambda1, lambda2:
///   bscale e^(-r) sqrt(a^2 + b^2 e^(2s) + 2 a b e^s cos 2 Phi).
double distance_same_amplitudes(const PairWeights& w, const DecoherenceProfile& p, double bscale);

}  // namespace dephasing
