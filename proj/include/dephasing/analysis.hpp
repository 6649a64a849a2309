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

#include <optional>
#include <string>
#include <vector>

#include "dephasing/bath.hpp"
#include "dephasing/dynamics.hpp"

namespace dephasing {

struct TimeGrid {
  enum class Kind { linear, log };

  Kind kind = Kind::log;
  double t_min = 1e-3;
  double t_max = 1e4;
  int points = 400;

  void validate() const;
  /// Strictly increasing sample times; the end points are exact.
  std::vector<double> times() const;

  /// Log grid over [1e-3, 1e4] / omega_c with 400 points.
  static TimeGrid default_for(double omega_c);
};

/// Whether distances are reported raw or divided by |b+ b-*|.
enum class Convention { raw, normalized };

/// Two qubit states evolving in the same model: state k has correlation
/// lambda_k and amplitudes amplitudes_k.
struct Scenario {
  ModelSpec model;
  double lambda1 = 0.25;
  double lambda2 = 0.0;
  QubitAmplitudes amplitudes1;
  QubitAmplitudes amplitudes2;
  Backend backend = Backend::closed_form;
  QuadratureSettings quadrature;
  Convention convention = Convention::raw;

  void validate() const;
};

struct SeriesPoint {
  double t = 0.0;
  double distance = 0.0;
  double abs_a1 = 0.0;
  double abs_a2 = 0.0;
  double r = 0.0;
  double s = 0.0;
  double phi = 0.0;
};

struct DistanceSeries {
  TimeGrid grid;
  Scenario scenario;
  std::vector<SeriesPoint> values;
};

/// Distance and decoherence data of a scenario at one time (t may be +inf).
SeriesPoint evaluate(const Scenario& scenario, double t);

DistanceSeries distance_series(const Scenario& scenario, const TimeGrid& grid);

/// D(t -> inf) / D(0) for shared amplitudes, from the analytic long-time
/// profile. Empty when D(0) vanishes (lambda1 == lambda2, or no displacement).
std::optional<double> gain_ratio(const ModelSpec& m, double lambda1, double lambda2,
                                 Backend backend = Backend::closed_form,
                                 const QuadratureSettings& settings = {});

/// Same ratio computed from full distances of the scenario (amplitudes included).
std::optional<double> gain_ratio(const Scenario& scenario);

enum class Label { gain, loss, boundary };

/// gain iff ratio > 1 + tie_tol, loss iff ratio < 1 - tie_tol, else boundary.
Label classify(std::optional<double> ratio, double tie_tol = 1e-9);

/// Which correlation parameter the critical search varies.
enum class VaryLambda { lambda1, lambda2 };

struct CriticalLambda {
  double lambda_c = 0.0;
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
};

/// Bisects for the correlation where gain_ratio crosses 1. The other
/// correlation is held at `fixed`. Requires gain at `lo` and loss at `hi`,
/// otherwise throws NoBracketError.
CriticalLambda find_lambda_c(const ModelSpec& m, double fixed, double lo, double hi, double tol,
                             VaryLambda vary = VaryLambda::lambda1);

enum class PlaneAxis { alpha, gamma, mu, nu, lambda1, lambda2 };

const char* to_string(PlaneAxis axis);
std::optional<PlaneAxis> parse_plane_axis(const std::string& name);

/// n points evenly spaced over [lo, hi]; a single point when lo == hi.
struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;

  std::vector<double> values() const;
};

struct RegionRequest {
  ModelSpec model;
  double lambda1 = 0.25;
  double lambda2 = 0.0;
  PlaneAxis x_axis = PlaneAxis::alpha;
  PlaneAxis y_axis = PlaneAxis::lambda1;
  AxisRange x_range;
  AxisRange y_range;
  bool refine_boundary = false;
  double refine_tol = 1e-4;
  double tie_tol = 1e-9;
};

struct BoundaryPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Gain/loss classification over a parameter plane. Matrices are indexed
/// [y][x].
struct RegionMap {
  PlaneAxis x_axis = PlaneAxis::alpha;
  PlaneAxis y_axis = PlaneAxis::lambda1;
  std::vector<double> x_values;
  std::vector<double> y_values;
  std::vector<std::vector<Label>> labels;
  std::vector<std::vector<std::optional<double>>> gain_ratio;
  /// Points where the ratio crosses 1 on grid edges between gain and loss
  /// cells; filled only when refinement was requested.
  std::vector<BoundaryPoint> boundary;
};

RegionMap region_map(const RegionRequest& request);

enum class ExtremumKind { none, minimum, maximum };

struct Extremum {
  double t = 0.0;
  double distance = 0.0;
  ExtremumKind kind = ExtremumKind::none;
};

/// Most prominent interior extremum of the series, refined by golden-section
/// search between the neighbouring grid points to 1e-6 in t.
Extremum find_extremum(const DistanceSeries& series);

}  // namespace dephasing
