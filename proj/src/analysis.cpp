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

#include "dephasing/analysis.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "dephasing/errors.hpp"

namespace dephasing {

void TimeGrid::validate() const {
  if (points < 2) throw DomainError("time grid needs at least 2 points");
  if (!(t_min >= 0.0) || !std::isfinite(t_max) || !(t_max > t_min)) {
    throw DomainError("time grid needs 0 <= t_min < t_max < inf");
  }
  if (kind == Kind::log && !(t_min > 0.0)) throw DomainError("log time grid needs t_min > 0");
}

std::vector<double> TimeGrid::times() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  const double last = points - 1;
  if (kind == Kind::linear) {
    for (int i = 0; i < points; ++i) out[i] = t_min + (t_max - t_min) * (i / last);
  } else {
    const double lo = std::log(t_min);
    const double hi = std::log(t_max);
    for (int i = 0; i < points; ++i) out[i] = std::exp(lo + (hi - lo) * (i / last));
  }
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

TimeGrid TimeGrid::default_for(double omega_c) {
  return {Kind::log, 1e-3 / omega_c, 1e4 / omega_c, 400};
}

void Scenario::validate() const {
  model.validate();
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0) || !(lambda2 >= 0.0 && lambda2 <= 1.0)) {
    throw DomainError("lambda1 and lambda2 must lie in [0, 1]");
  }
  amplitudes1.validate(true);
  amplitudes2.validate(true);
  quadrature.validate();
  if (convention == Convention::normalized && !(amplitudes1 == amplitudes2)) {
    throw DomainError("normalized distances need both states to share b+ and b-");
  }
}

namespace {

double overlap_for(const ModelSpec& m, Backend backend, const QuadratureSettings& settings) {
  if (backend == Backend::closed_form) {
    return ground_coherent_overlap(m.displacement, m.bath.omega_c);
  }
  return std::exp(profile_at(m, 0.0, backend, settings).s);
}

// D0 == |a + b x| is treated as zero when it is at the rounding level of its terms.
bool vanishes(double value, double scale) {
  return value <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

SeriesPoint evaluate(const Scenario& scenario, double t) {
  const ModelSpec& m = scenario.model;
  const DecoherenceProfile p = profile_at(m, t, scenario.backend, scenario.quadrature);
  const double overlap = overlap_for(m, scenario.backend, scenario.quadrature);
  const Complex a1 = coherence_factor(scenario.lambda1, p, m.epsilon, overlap);
  const Complex a2 = coherence_factor(scenario.lambda2, p, m.epsilon, overlap);
  const QubitAmplitudes& b1 = scenario.amplitudes1;
  const QubitAmplitudes& b2 = scenario.amplitudes2;

  double distance = 0.0;
  if (b1 == b2) {
    const PairWeights w = pair_weights(scenario.lambda1, scenario.lambda2, overlap);
    distance = distance_same_amplitudes(w, p, b1.coherence_scale());
    if (scenario.convention == Convention::normalized) distance /= b1.coherence_scale();
  } else if (scenario.lambda1 == scenario.lambda2) {
    distance = distance_same_environment(b1, b2, a1);
  } else {
    distance = distance_general(b1, a1, b2, a2);
  }
  return {t, distance, std::abs(a1), std::abs(a2), p.r, p.s, p.phi};
}

DistanceSeries distance_series(const Scenario& scenario, const TimeGrid& grid) {
  scenario.validate();
  DistanceSeries out{grid, scenario, {}};
  const std::vector<double> times = grid.times();
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back(evaluate(scenario, t));
  return out;
}

std::optional<double> gain_ratio(const ModelSpec& m, double lambda1, double lambda2,
                                 Backend backend, const QuadratureSettings& settings) {
  m.validate();
  const double overlap = overlap_for(m, backend, settings);
  const PairWeights w = pair_weights(lambda1, lambda2, overlap);
  const double initial = std::abs(w.a + w.b * overlap);
  if (vanishes(initial, std::abs(w.a) + std::abs(w.b) * overlap)) return std::nullopt;
  const DecoherenceProfile limit = profile_limit(m, backend, settings);
  return distance_same_amplitudes(w, limit, 0.5) / (0.5 * initial);
}

std::optional<double> gain_ratio(const Scenario& scenario) {
  scenario.validate();
  const double initial = evaluate(scenario, 0.0).distance;
  if (vanishes(initial, 1.0)) return std::nullopt;
  return evaluate(scenario, INFINITY).distance / initial;
}

Label classify(std::optional<double> ratio, double tie_tol) {
  if (!ratio) return Label::boundary;
  if (*ratio > 1.0 + tie_tol) return Label::gain;
  if (*ratio < 1.0 - tie_tol) return Label::loss;
  return Label::boundary;
}

CriticalLambda find_lambda_c(const ModelSpec& m, double fixed, double lo, double hi, double tol,
                             VaryLambda vary) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    throw DomainError("critical search needs a bracket 0 <= lo < hi <= 1");
  }
  if (!(tol > 0.0)) throw DomainError("critical search tolerance must be > 0");
  if (!(fixed >= 0.0 && fixed <= 1.0)) throw DomainError("fixed lambda must lie in [0, 1]");

  auto ratio = [&](double lambda) {
    return vary == VaryLambda::lambda1 ? gain_ratio(m, lambda, fixed)
                                       : gain_ratio(m, fixed, lambda);
  };
  const std::optional<double> at_lo = ratio(lo);
  const std::optional<double> at_hi = ratio(hi);
  const double ratio_lo = at_lo.value_or(NAN);
  const double ratio_hi = at_hi.value_or(NAN);
  if (!at_lo || !at_hi || !(*at_lo > 1.0) || !(*at_hi < 1.0)) {
    throw NoBracketError("no gain-to-loss sign change inside the bracket", ratio_lo, ratio_hi);
  }

  double gain_side = lo;
  double loss_side = hi;
  while (loss_side - gain_side > 2.0 * tol) {
    const double mid = 0.5 * (gain_side + loss_side);
    const std::optional<double> r = ratio(mid);
    if (!r) throw DomainError("gain ratio undefined inside the bracket");
    (*r > 1.0 ? gain_side : loss_side) = mid;
  }
  return {0.5 * (gain_side + loss_side), ratio_lo, ratio_hi};
}

const char* to_string(PlaneAxis axis) {
  switch (axis) {
    case PlaneAxis::alpha:
      return "alpha";
    case PlaneAxis::gamma:
      return "gamma";
    case PlaneAxis::mu:
      return "mu";
    case PlaneAxis::nu:
      return "nu";
    case PlaneAxis::lambda1:
      return "lambda1";
    case PlaneAxis::lambda2:
      return "lambda2";
  }
  return "?";
}

std::optional<PlaneAxis> parse_plane_axis(const std::string& name) {
  for (PlaneAxis axis : {PlaneAxis::alpha, PlaneAxis::gamma, PlaneAxis::mu, PlaneAxis::nu,
                         PlaneAxis::lambda1, PlaneAxis::lambda2}) {
    if (name == to_string(axis)) return axis;
  }
  return std::nullopt;
}

std::vector<double> AxisRange::values() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw DomainError("axis range needs finite lo <= hi");
  }
  if (n < 1) throw DomainError("axis range needs at least one point");
  if (lo == hi || n == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  out.back() = hi;
  return out;
}

namespace {

struct Cell {
  ModelSpec model;
  double lambda1;
  double lambda2;
};

void assign(Cell& cell, PlaneAxis axis, double value) {
  switch (axis) {
    case PlaneAxis::alpha:
      cell.model.bath.alpha = value;
      break;
    case PlaneAxis::gamma:
      cell.model.displacement.gamma_coef = value;
      break;
    case PlaneAxis::mu:
      cell.model.bath.mu = value;
      break;
    case PlaneAxis::nu:
      cell.model.displacement.nu = value;
      break;
    case PlaneAxis::lambda1:
      cell.lambda1 = value;
      break;
    case PlaneAxis::lambda2:
      cell.lambda2 = value;
      break;
  }
}

std::optional<double> cell_ratio(const RegionRequest& request, double x, double y) {
  Cell cell{request.model, request.lambda1, request.lambda2};
  assign(cell, request.x_axis, x);
  assign(cell, request.y_axis, y);
  return gain_ratio(cell.model, cell.lambda1, cell.lambda2);
}

// Bisects the segment from p (gain side) to q (loss side) for ratio == 1.
std::optional<BoundaryPoint> refine_edge(const RegionRequest& request, BoundaryPoint gain,
                                         BoundaryPoint loss) {
  while (std::max(std::abs(gain.x - loss.x), std::abs(gain.y - loss.y)) > request.refine_tol) {
    const BoundaryPoint mid{0.5 * (gain.x + loss.x), 0.5 * (gain.y + loss.y)};
    const std::optional<double> r = cell_ratio(request, mid.x, mid.y);
    if (!r) return std::nullopt;
    (*r > 1.0 ? gain : loss) = mid;
  }
  return BoundaryPoint{0.5 * (gain.x + loss.x), 0.5 * (gain.y + loss.y)};
}

}  // namespace

RegionMap region_map(const RegionRequest& request) {
  if (request.x_axis == request.y_axis) throw DomainError("plane axes must differ");
  if (!(request.tie_tol >= 0.0)) throw DomainError("tie tolerance must be >= 0");
  if (request.refine_boundary && !(request.refine_tol > 0.0)) {
    throw DomainError("boundary refinement tolerance must be > 0");
  }
  RegionMap out;
  out.x_axis = request.x_axis;
  out.y_axis = request.y_axis;
  out.x_values = request.x_range.values();
  out.y_values = request.y_range.values();
  const std::size_t nx = out.x_values.size();
  const std::size_t ny = out.y_values.size();
  out.labels.assign(ny, std::vector<Label>(nx, Label::boundary));
  out.gain_ratio.assign(ny, std::vector<std::optional<double>>(nx));

  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::optional<double> r = cell_ratio(request, out.x_values[ix], out.y_values[iy]);
      out.gain_ratio[iy][ix] = r;
      out.labels[iy][ix] = classify(r, request.tie_tol);
    }
  }
  if (!request.refine_boundary) return out;

  auto try_edge = [&](std::size_t iy0, std::size_t ix0, std::size_t iy1, std::size_t ix1) {
    const Label l0 = out.labels[iy0][ix0];
    const Label l1 = out.labels[iy1][ix1];
    const BoundaryPoint p0{out.x_values[ix0], out.y_values[iy0]};
    const BoundaryPoint p1{out.x_values[ix1], out.y_values[iy1]};
    std::optional<BoundaryPoint> point;
    if (l0 == Label::gain && l1 == Label::loss) point = refine_edge(request, p0, p1);
    if (l0 == Label::loss && l1 == Label::gain) point = refine_edge(request, p1, p0);
    if (point) out.boundary.push_back(*point);
  };
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix + 1 < nx; ++ix) try_edge(iy, ix, iy, ix + 1);
  }
  for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) try_edge(iy, ix, iy + 1, ix);
  }
  return out;
}

namespace {

// Golden-section search for the minimum of f on [a, b].
double golden_minimum(const std::function<double(double)>& f, double a, double b, double tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 500 && b - a > tol; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Extremum find_extremum(const DistanceSeries& series) {
  const auto& v = series.values;
  if (v.size() < 3) return {};
  const std::size_t last = v.size() - 1;
  std::size_t lowest = 0;
  std::size_t highest = 0;
  for (std::size_t i = 1; i <= last; ++i) {
    if (v[i].distance < v[lowest].distance) lowest = i;
    if (v[i].distance > v[highest].distance) highest = i;
  }
  const double first = v.front().distance;
  const double final = v.back().distance;
  double dip = 0.0;
  double peak = 0.0;
  if (lowest > 0 && lowest < last) dip = std::min(first, final) - v[lowest].distance;
  if (highest > 0 && highest < last) peak = v[highest].distance - std::max(first, final);
  if (!(dip > 0.0) && !(peak > 0.0)) return {};

  const bool minimum = dip >= peak;
  const std::size_t i = minimum ? lowest : highest;
  const double sign = minimum ? 1.0 : -1.0;
  auto objective = [&](double t) { return sign * evaluate(series.scenario, t).distance; };
  const double t_star = golden_minimum(objective, v[i - 1].t, v[i + 1].t, 1e-6);
  double d_star = evaluate(series.scenario, t_star).distance;
  double t_best = t_star;
  // Keep the grid point if refinement landed on a worse value.
  if (sign * v[i].distance < sign * d_star) {
    d_star = v[i].distance;
    t_best = v[i].t;
  }
  return {t_best, d_star, minimum ? ExtremumKind::minimum : ExtremumKind::maximum};
}

}  // namespace dephasing
