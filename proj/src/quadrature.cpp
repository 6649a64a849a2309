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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "dephasing/errors.hpp"
#include "dephasing/numerics.hpp"

namespace dephasing {

namespace {

using Integrand = std::function<double(double)>;

// 21-point Gauss-Kronrod rule on [-1, 1]. Odd indices of kNodes are the
// 10-point Gauss nodes; the last entry is the centre.
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980297881, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

Estimate gauss_kronrod(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double scale = std::abs(half);
  asc *= scale;
  abs_sum *= scale;

  Estimate out{kronrod * half, std::abs((kronrod - gauss) * half)};
  if (asc != 0.0 && out.error != 0.0) {
    out.error = asc * std::min(1.0, std::pow(200.0 * out.error / asc, 1.5));
  }
  if (abs_sum > kTiny / (50.0 * kEps)) out.error = std::max(50.0 * kEps * abs_sum, out.error);
  if (!std::isfinite(out.value)) out.error = INFINITY;
  return out;
}

struct Piece {
  Integrand f;
  double a;
  double b;
};

struct Tolerance {
  double abs;
  double rel;
  int max_subdivisions;
};

// Globally adaptive bisection over a set of pieces (each with its own
// integrand, so that substituted and plain segments share one error budget).
Estimate adaptive(const std::vector<Piece>& pieces, const Tolerance& tol) {
  struct Segment {
    std::size_t piece;
    double a;
    double b;
    Estimate est;
  };
  auto by_error = [](const Segment& x, const Segment& y) { return x.est.error < y.est.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(by_error)> queue(by_error);

  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].b > pieces[i].a)) continue;
    const Estimate e = gauss_kronrod(pieces[i].f, pieces[i].a, pieces[i].b);
    value += e.value;
    error += e.error;
    queue.push({i, pieces[i].a, pieces[i].b, e});
  }

  int subdivisions = 0;
  while (!queue.empty() && error > std::max(tol.abs, tol.rel * std::abs(value))) {
    if (!std::isfinite(value)) {
      throw NonConvergenceError("quadrature: integrand is not finite", value, error);
    }
    if (subdivisions >= tol.max_subdivisions) {
      throw NonConvergenceError("quadrature: subdivision limit reached", value, error);
    }
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NonConvergenceError("quadrature: interval below resolution", value, error);
    }
    queue.pop();
    const Integrand& f = pieces[worst.piece].f;
    const Estimate left = gauss_kronrod(f, worst.a, mid);
    const Estimate right = gauss_kronrod(f, mid, worst.b);
    value += left.value + right.value - worst.est.value;
    error += left.error + right.error - worst.est.error;
    queue.push({worst.piece, worst.a, mid, left});
    queue.push({worst.piece, mid, worst.b, right});
    ++subdivisions;
  }

  // Re-sum to remove drift from the running totals.
  Estimate total;
  while (!queue.empty()) {
    total.value += queue.top().est.value;
    total.error += queue.top().est.error;
    queue.pop();
  }
  return total;
}

// Appends pieces for Integral_a^b w^(q-1) h(w) dw, a >= 0.
void append_power_pieces(std::vector<Piece>& out, const Envelope& h, double q, double a,
                         double b, double scale) {
  if (!(b > a)) return;
  if (a == 0.0) {
    if (q < 1.0) {
      // w = s u^(1/q) turns w^(q-1) dw into (s^q / q) du.
      const double s = std::min(b, scale);
      const double front = std::pow(s, q) / q;
      const double inv_q = 1.0 / q;
      out.push_back({[=](double u) { return front * h(s * std::pow(u, inv_q)); }, 0.0, 1.0});
      append_power_pieces(out, h, q, s, b, scale);
      return;
    }
    const double s = std::min(b, scale);
    out.push_back({[=](double w) { return std::pow(w, q - 1.0) * h(w); }, 0.0, s});
    append_power_pieces(out, h, q, s, b, scale);
    return;
  }
  if (a < scale && b / a > 16.0) {
    // Graded region a << scale: w = e^v flattens the power law.
    const double s = std::min(b, scale);
    out.push_back({[=](double v) {
                     const double w = std::exp(v);
                     return std::exp(q * v) * h(w);
                   },
                   std::log(a), std::log(s)});
    append_power_pieces(out, h, q, s, b, scale);
    return;
  }
  // Plain pieces, geometrically graded by factors of four.
  double lo = a;
  while (lo < b) {
    const double hi = std::min(b, std::max(lo, scale) * 4.0);
    out.push_back({[=](double w) { return std::pow(w, q - 1.0) * h(w); }, lo, hi});
    lo = hi;
  }
}

Estimate integrate_power(const Envelope& h, double q, double a, double b, double scale,
                         const Tolerance& tol) {
  std::vector<Piece> pieces;
  append_power_pieces(pieces, h, q, a, b, scale);
  return adaptive(pieces, tol);
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& sums) {
  const std::size_t n = sums.size();
  std::vector<double> previous(n + 1, 0.0);
  std::vector<double> current(sums);
  double best = sums.back();
  for (std::size_t k = 1; current.size() >= 2; ++k) {
    std::vector<double> next(current.size() - 1);
    for (std::size_t i = 0; i + 1 < current.size(); ++i) {
      const double diff = current[i + 1] - current[i];
      if (diff == 0.0 || !std::isfinite(1.0 / diff)) return best;
      next[i] = previous[i + 1] + 1.0 / diff;
    }
    previous = std::move(current);
    current = std::move(next);
    if (k % 2 == 0) {
      if (!std::isfinite(current.back())) return best;
      best = current.back();
    }
  }
  return best;
}

// Sum of Integral over [start + k*half_period, start + (k+1)*half_period] of
// w^(q-1) h(w) trig(w t), extrapolated with the epsilon algorithm.
double alternating_panels(const Envelope& h, double q, double t, bool cosine, double start,
                          double cut, const Tolerance& tol) {
  const double half_period = M_PI / t;
  const Integrand f = [=](double w) {
    const double trig = cosine ? std::cos(w * t) : std::sin(w * t);
    return std::pow(w, q - 1.0) * h(w) * trig;
  };
  const Tolerance panel_tol{tol.abs / 16.0, tol.rel / 16.0, tol.max_subdivisions};
  constexpr std::size_t kWindow = 40;
  constexpr int kMinPanels = 10;
  constexpr int kMaxPanels = 200000;

  std::vector<double> sums;
  double sum = 0.0;
  double last = NAN;
  double before_last = NAN;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double a = start + k * half_period;
    if (a >= cut) return sum;
    const double b = a + half_period;
    sum += adaptive({{f, a, b}}, panel_tol).value;
    sums.push_back(sum);
    if (sums.size() > kWindow) sums.erase(sums.begin());
    if (k + 1 < kMinPanels) continue;
    const double estimate = wynn_epsilon(sums);
    const double target = std::max(tol.abs, tol.rel * std::abs(estimate));
    if (std::abs(estimate - last) + std::abs(estimate - before_last) <= target) {
      return estimate;
    }
    before_last = last;
    last = estimate;
  }
  throw NonConvergenceError("quadrature: oscillatory panel sum did not converge", last,
                            std::abs(last - before_last));
}

void check_settings(const QuadratureSettings& settings, double scale) {
  settings.validate();
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("quadrature: scale must be positive and finite");
  }
}

// sin(x)/x-style helpers that stay finite when w underflows to zero.
double sin_over(double w, double t) {
  const double x = w * t;
  return std::abs(x) < 1e-8 ? t : std::sin(x) / w;
}

double one_minus_cos_over_square(double w, double t) {
  const double x = w * t;
  if (std::abs(x) < 1e-8) return 0.5 * t * t;
  const double s = std::sin(0.5 * x) / w;
  return 2.0 * s * s;
}

}  // namespace

double integrate_semi_infinite(const Envelope& envelope, double exponent,
                               const QuadratureSettings& settings, double scale) {
  check_settings(settings, scale);
  if (!(exponent > 0.0)) {
    throw DomainError("integrate_semi_infinite: w^(exponent-1) is not integrable at 0");
  }
  const Tolerance tol{settings.abs_tol, settings.rel_tol, settings.max_subdivisions};
  return integrate_power(envelope, exponent, 0.0, settings.tail_cut_multiplier * scale, scale,
                         tol)
      .value;
}

double integrate_fourier(const Envelope& envelope, double exponent, double t, Oscillation osc,
                         const QuadratureSettings& settings, double scale) {
  check_settings(settings, scale);
  if (!(exponent > -1.0)) throw DomainError("integrate_fourier: exponent must exceed -1");
  if (std::isnan(t) || t < 0.0 || std::isinf(t)) {
    throw DomainError("integrate_fourier: time must be finite and >= 0");
  }
  if (t == 0.0) return 0.0;

  const double cut = settings.tail_cut_multiplier * scale;
  const double half_period = M_PI / t;
  const Tolerance tol{settings.abs_tol, settings.rel_tol, settings.max_subdivisions};
  const Tolerance part_tol{settings.abs_tol / 4.0, settings.rel_tol / 4.0,
                           settings.max_subdivisions};

  // Near w = 0 the oscillating factor contributes w^2 t^2 / 2 or w t, which
  // raises the effective exponent and keeps the head integrable for q > -1.
  const Envelope head_cos = [=](double w) { return envelope(w) * one_minus_cos_over_square(w, t); };
  const Envelope head_sin = [=](double w) { return envelope(w) * sin_over(w, t); };

  constexpr double kDirectHalfPeriods = 128.0;
  if (cut / half_period <= kDirectHalfPeriods) {
    if (osc == Oscillation::one_minus_cos) {
      return integrate_power(head_cos, exponent + 2.0, 0.0, cut, scale, tol).value;
    }
    return integrate_power(head_sin, exponent + 1.0, 0.0, cut, scale, tol).value;
  }

  if (osc == Oscillation::one_minus_cos) {
    const double split = 0.5 * half_period;
    const double head =
        integrate_power(head_cos, exponent + 2.0, 0.0, split, scale, part_tol).value;
    const double smooth = integrate_power(envelope, exponent, split, cut, scale, part_tol).value;
    const double oscillating =
        alternating_panels(envelope, exponent, t, true, split, cut, part_tol);
    return head + smooth - oscillating;
  }
  const double head =
      integrate_power(head_sin, exponent + 1.0, 0.0, half_period, scale, part_tol).value;
  return head + alternating_panels(envelope, exponent, t, false, half_period, cut, part_tol);
}

}  // namespace dephasing
