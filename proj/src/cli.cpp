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

#include "dephasing/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "dephasing/config.hpp"
#include "dephasing/errors.hpp"

namespace dephasing::cli {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string json_real(std::optional<double> value) {
  if (!value || !std::isfinite(*value)) return "null";
  return format_real(*value);
}

const char* label_text(Label label) {
  switch (label) {
    case Label::gain:
      return "+";
    case Label::loss:
      return "-";
    case Label::boundary:
      return "0";
  }
  return "0";
}

void write_array(std::ostream& out, const std::vector<double>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << (i ? "," : "") << json_real(values[i]);
  }
  out << ']';
}

}  // namespace

void write_series_csv(std::ostream& out, const DistanceSeries& series) {
  out << "t,distance,abs_A1,abs_A2,r,s,phi\n";
  for (const SeriesPoint& p : series.values) {
    out << format_real(p.t) << ',' << format_real(p.distance) << ',' << format_real(p.abs_a1)
        << ',' << format_real(p.abs_a2) << ',' << format_real(p.r) << ',' << format_real(p.s)
        << ',' << format_real(p.phi) << '\n';
  }
}

void write_region_json(std::ostream& out, const RegionMap& map, bool with_boundary) {
  const char* x = to_string(map.x_axis);
  const char* y = to_string(map.y_axis);
  out << "{\"plane\":[\"" << x << "\",\"" << y << "\"],\"axes\":{\"" << x << "\":";
  write_array(out, map.x_values);
  out << ",\"" << y << "\":";
  write_array(out, map.y_values);
  out << "},\"labels\":[";
  for (std::size_t iy = 0; iy < map.labels.size(); ++iy) {
    out << (iy ? "," : "") << '[';
    for (std::size_t ix = 0; ix < map.labels[iy].size(); ++ix) {
      out << (ix ? "," : "") << '"' << label_text(map.labels[iy][ix]) << '"';
    }
    out << ']';
  }
  out << "],\"gain_ratio\":[";
  for (std::size_t iy = 0; iy < map.gain_ratio.size(); ++iy) {
    out << (iy ? "," : "") << '[';
    for (std::size_t ix = 0; ix < map.gain_ratio[iy].size(); ++ix) {
      out << (ix ? "," : "") << json_real(map.gain_ratio[iy][ix]);
    }
    out << ']';
  }
  out << ']';
  if (with_boundary) {
    out << ",\"boundary\":[";
    for (std::size_t i = 0; i < map.boundary.size(); ++i) {
      out << (i ? "," : "") << '[' << format_real(map.boundary[i].x) << ','
          << format_real(map.boundary[i].y) << ']';
    }
    out << ']';
  }
  out << "}\n";
}

// ---------------------------------------------------------------------------
// Validation suites

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  /// Uniform on (0, hi].
  double positive(double hi) { return hi - uniform(0.0, hi); }

  ModelSpec model() {
    ModelSpec m;
    m.epsilon = uniform(0.0, 10.0);
    m.bath.alpha = uniform(1e-4, 1.0);
    m.bath.mu = positive(2.0);
    m.bath.omega_c = uniform(0.5, 2.0);
    m.displacement.gamma_coef = uniform(1e-4, 1.0);
    m.displacement.nu = positive(2.0);
    return m;
  }

  QubitAmplitudes amplitudes() {
    const double theta = uniform(0.05, 0.5 * M_PI - 0.05);
    return {std::polar(std::cos(theta), uniform(-M_PI, M_PI)),
            std::polar(std::sin(theta), uniform(-M_PI, M_PI))};
  }

 private:
  std::mt19937_64 engine_;
};

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  void check(double value, double reference, double allowed) {
    const double abs_error = std::abs(value - reference);
    const double rel_error = reference != 0.0 ? abs_error / std::abs(reference) : abs_error;
    result_.worst_abs_error = std::max(result_.worst_abs_error, abs_error);
    result_.worst_rel_error = std::max(result_.worst_rel_error, rel_error);
    ok_ = ok_ && abs_error <= allowed;
  }
  void require(bool condition) { ok_ = ok_ && condition; }

  void next() {
    ++result_.total;
    if (ok_) ++result_.passed;
    ok_ = true;
  }

  SuiteResult result() const { return result_; }

 private:
  SuiteResult result_;
  bool ok_ = true;
};

double oracle_allowance(double reference, double tol) {
  return std::max(1e-8, tol * std::abs(reference));
}

SuiteResult kernel_suite(const ValidationOptions& o, Sampler& rng) {
  Tally tally("kernel_oracle");
  const QuadratureSettings settings;
  for (int i = 0; i < o.samples; ++i) {
    const KernelArgs args{rng.uniform(1e-4, 1.0), rng.positive(2.0), rng.uniform(0.5, 2.0),
                          rng.uniform(0.0, 100.0)};
    const double closed = decay_kernel(args);
    tally.check(kernel_by_quadrature(args, settings), closed, oracle_allowance(closed, o.tol));
    tally.next();
  }
  return tally.result();
}

SuiteResult backend_suite(const ValidationOptions& o, Sampler& rng) {
  Tally tally("backend_agreement");
  for (int i = 0; i < o.samples; ++i) {
    const ModelSpec m = rng.model();
    const double t = rng.uniform(0.0, 100.0);
    const DecoherenceProfile closed = profile_at(m, t, Backend::closed_form);
    const DecoherenceProfile quad = profile_at(m, t, Backend::quadrature);
    tally.check(quad.r, closed.r, oracle_allowance(closed.r, o.tol));
    tally.check(quad.s, closed.s, oracle_allowance(closed.s, o.tol));
    tally.check(quad.phi, closed.phi, oracle_allowance(closed.phi, o.tol));
    tally.next();
  }
  return tally.result();
}

SuiteResult overlap_suite(const ValidationOptions& o, Sampler& rng) {
  Tally tally("overlap_consistency");
  const DisplacementConstant constant =
      o.corrupt_s_constant ? DisplacementConstant::full : DisplacementConstant::half;
  for (int i = 0; i < o.samples; ++i) {
    ModelSpec m = rng.model();
    const double overlap = ground_coherent_overlap(m.displacement, m.bath.omega_c);
    const DecoherenceProfile p = profile_at(m, 0.0, Backend::closed_form, {}, constant);
    tally.check(std::exp(p.s), overlap, 1e-12 * overlap);
    tally.next();
  }
  return tally.result();
}

SuiteResult physicality_suite(const ValidationOptions& o, Sampler& rng) {
  Tally tally("physicality");
  const int closed_samples = 10 * o.samples;
  for (int i = 0; i < closed_samples + o.samples; ++i) {
    const ModelSpec m = rng.model();
    const Backend backend = i < closed_samples ? Backend::closed_form : Backend::quadrature;
    const double t = rng.uniform(0.0, 100.0);
    const double lambda = rng.uniform(0.0, 1.0);
    const QubitAmplitudes b = rng.amplitudes();
    const DecoherenceProfile p = profile_at(m, t, backend);
    const double overlap = ground_coherent_overlap(m.displacement, m.bath.omega_c);
    const Complex a = coherence_factor(lambda, p, m.epsilon, overlap);
    tally.require(std::abs(a) <= 1.0 + kCoherenceSlack);
    tally.require(p.s - p.r <= 1e-12);
    try {
      reduced_state(b, a).validate();
    } catch (const PhysicalityError&) {
      tally.require(false);
    }
    tally.next();
  }
  return tally.result();
}

SuiteResult distance_suite(const ValidationOptions& o, Sampler& rng) {
  Tally tally("distance_equivalence");
  for (int i = 0; i < o.samples; ++i) {
    const ModelSpec m = rng.model();
    const DecoherenceProfile p = profile_at(m, rng.uniform(0.0, 100.0));
    const double overlap = ground_coherent_overlap(m.displacement, m.bath.omega_c);
    const double l1 = rng.uniform(0.0, 1.0);
    const double l2 = rng.uniform(0.0, 1.0);
    const QubitAmplitudes b1 = rng.amplitudes();
    const QubitAmplitudes b2 = rng.amplitudes();
    const Complex a1 = coherence_factor(l1, p, m.epsilon, overlap);
    const Complex a2 = coherence_factor(l2, p, m.epsilon, overlap);

    const double shared = distance_same_amplitudes(pair_weights(l1, l2, overlap), p,
                                                   b1.coherence_scale());
    tally.check(shared, trace_distance(reduced_state(b1, a1), reduced_state(b1, a2)), 1e-12);
    tally.check(distance_same_environment(b1, b2, a1),
                trace_distance(reduced_state(b1, a1), reduced_state(b2, a1)), 1e-12);
    tally.check(distance_general(b1, a1, b2, a2),
                trace_distance(reduced_state(b1, a1), reduced_state(b2, a2)), 1e-12);
    tally.next();
  }
  return tally.result();
}

}  // namespace

std::vector<SuiteResult> run_validation(const ValidationOptions& options) {
  if (options.samples < 1) throw DomainError("validate needs --samples >= 1");
  if (!(options.tol > 0.0)) throw DomainError("validate needs --tol > 0");
  // Each suite draws from its own stream so results do not depend on suite order.
  std::vector<SuiteResult> out;
  std::uint64_t stream = 0;
  auto seeded = [&] { return Sampler(options.seed * 0x9E3779B97F4A7C15ULL + ++stream); };
  Sampler s1 = seeded();
  out.push_back(kernel_suite(options, s1));
  Sampler s2 = seeded();
  out.push_back(backend_suite(options, s2));
  Sampler s3 = seeded();
  out.push_back(overlap_suite(options, s3));
  Sampler s4 = seeded();
  out.push_back(physicality_suite(options, s4));
  Sampler s5 = seeded();
  out.push_back(distance_suite(options, s5));
  return out;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

/// Output target: the file named by --out / `out`, else the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw ConfigError("cannot open output file " + path);
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<double> split_reals(const std::string& text, char sep, std::size_t count,
                                const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(parse_real(part));
  if (out.size() != count) throw ConfigError(what + " is malformed: '" + text + "'");
  return out;
}

AxisRange parse_range(const std::string& text, const std::string& what) {
  const auto pos = text.rfind(':');
  if (pos == std::string::npos) throw ConfigError(what + " must be lo:hi:n");
  const std::vector<double> bounds = split_reals(text.substr(0, pos), ':', 2, what);
  AxisRange range{bounds[0], bounds[1], 0};
  try {
    std::size_t used = 0;
    const std::string n = text.substr(pos + 1);
    range.n = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::exception&) {
    throw ConfigError(what + " point count must be an integer");
  }
  if (range.hi < range.lo || range.n < 1) {
    throw ConfigError(what + " needs lo <= hi and n >= 1");
  }
  return range;
}

struct Options {
  std::string config;
  // evolve
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> points;
  std::optional<std::string> grid;
  std::optional<std::string> backend;
  bool normalized = false;
  std::string out;
  // region
  std::string plane;
  std::string x_range;
  std::string y_range;
  bool refine = false;
  double refine_tol = 1e-4;
  // critical
  std::string vary = "lambda1";
  std::string bracket = "0.05:0.95";
  double tol = 1e-6;
  // validate
  int samples = 100;
  double validate_tol = 1e-6;
  std::uint64_t seed = 42;
  bool corrupt = false;
};

ScenarioConfig base_config(const Options& o) {
  if (o.config.empty()) {
    ScenarioConfig cfg;
    cfg.validate();
    return cfg;
  }
  return load_config(o.config);
}

std::string output_path(const Options& o, const ScenarioConfig& cfg) {
  return o.out.empty() ? cfg.out : o.out;
}

int cmd_evolve(const Options& o, std::ostream& out) {
  ScenarioConfig cfg = base_config(o);
  Scenario& sc = cfg.scenario;
  if (o.grid) {
    cfg.grid.kind = *o.grid == "linear" ? TimeGrid::Kind::linear : TimeGrid::Kind::log;
    if (!o.t_min) {
      cfg.grid.t_min =
          cfg.grid.kind == TimeGrid::Kind::linear ? 0.0 : 1e-3 / sc.model.bath.omega_c;
    }
  }
  if (o.t_min) cfg.grid.t_min = *o.t_min;
  if (o.t_max) cfg.grid.t_max = *o.t_max;
  if (o.points) cfg.grid.points = *o.points;
  if (o.backend) sc.backend = *o.backend == "quad" ? Backend::quadrature : Backend::closed_form;
  if (o.normalized) sc.convention = Convention::normalized;
  cfg.validate();

  const DistanceSeries series = distance_series(sc, cfg.grid);
  Sink sink(output_path(o, cfg), out);
  write_series_csv(sink.stream(), series);
  return kOk;
}

int cmd_region(const Options& o, std::ostream& out) {
  const ScenarioConfig cfg = base_config(o);
  const auto comma = o.plane.find(',');
  if (comma == std::string::npos) throw ConfigError("--plane must be X,Y");
  const auto x = parse_plane_axis(o.plane.substr(0, comma));
  const auto y = parse_plane_axis(o.plane.substr(comma + 1));
  if (!x || !y) {
    throw ConfigError("--plane axes must be among alpha, gamma, mu, nu, lambda1, lambda2");
  }
  RegionRequest request;
  request.model = cfg.scenario.model;
  request.lambda1 = cfg.scenario.lambda1;
  request.lambda2 = cfg.scenario.lambda2;
  request.x_axis = *x;
  request.y_axis = *y;
  request.x_range = parse_range(o.x_range, "--x-range");
  request.y_range = parse_range(o.y_range, "--y-range");
  request.refine_boundary = o.refine;
  request.refine_tol = o.refine_tol;

  const RegionMap map = region_map(request);
  Sink sink(output_path(o, cfg), out);
  write_region_json(sink.stream(), map, o.refine);
  return kOk;
}

int cmd_critical(const Options& o, std::ostream& out, std::ostream& err) {
  const ScenarioConfig cfg = base_config(o);
  const std::vector<double> bracket = split_reals(o.bracket, ':', 2, "--bracket");
  if (!(bracket[0] >= 0.0 && bracket[1] <= 1.0 && bracket[0] < bracket[1])) {
    throw ConfigError("--bracket needs 0 <= lo < hi <= 1");
  }
  if (!(o.tol > 0.0)) throw ConfigError("--tol must be > 0");
  const bool vary_first = o.vary == "lambda1";
  const double fixed = vary_first ? cfg.scenario.lambda2 : cfg.scenario.lambda1;
  Sink sink(output_path(o, cfg), out);
  try {
    const CriticalLambda c =
        find_lambda_c(cfg.scenario.model, fixed, bracket[0], bracket[1], o.tol,
                      vary_first ? VaryLambda::lambda1 : VaryLambda::lambda2);
    sink.stream() << "{\"status\":\"ok\",\"vary\":\"" << o.vary
                  << "\",\"lambda_c\":" << format_real(c.lambda_c)
                  << ",\"ratio_lo\":" << json_real(c.ratio_lo)
                  << ",\"ratio_hi\":" << json_real(c.ratio_hi) << "}\n";
    return kOk;
  } catch (const NoBracketError& e) {
    sink.stream() << "{\"status\":\"no-bracket\",\"vary\":\"" << o.vary
                  << "\",\"lambda_c\":null,\"ratio_lo\":" << json_real(e.ratio_lo())
                  << ",\"ratio_hi\":" << json_real(e.ratio_hi()) << "}\n";
    err << "no-bracket: " << e.what() << '\n';
    return kNoBracket;
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  if (o.samples < 1) throw ConfigError("--samples must be >= 1");
  if (!(o.validate_tol > 0.0)) throw ConfigError("--tol must be > 0");
  const ValidationOptions options{o.samples, o.validate_tol, o.seed, o.corrupt};
  bool all = true;
  for (const SuiteResult& r : run_validation(options)) {
    all = all && r.ok();
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %s %d/%d  worst abs %.3e  worst rel %.3e\n",
                  r.name.c_str(), r.ok() ? "PASS" : "FAIL", r.passed, r.total,
                  r.worst_abs_error, r.worst_rel_error);
    out << line;
  }
  out << (all ? "validation passed\n" : "validation FAILED\n");
  return all ? kOk : kNumericalFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dephasing qubit trace-distance simulator", "dephasing"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "Scenario file (key = value lines)");

  CLI::App* evolve = app.add_subcommand("evolve", "Trace distance time series as CSV");
  evolve->add_option("--t-min", o.t_min, "First grid time");
  evolve->add_option("--t-max", o.t_max, "Last grid time");
  evolve->add_option("--points", o.points, "Number of grid points");
  evolve->add_option("--grid", o.grid, "linear or log")
      ->check(CLI::IsMember({"linear", "log"}));
  evolve->add_option("--backend", o.backend, "closed or quad")
      ->check(CLI::IsMember({"closed", "quad"}));
  evolve->add_flag("--normalized", o.normalized, "Report D / |b+ b-*|");
  evolve->add_option("--out", o.out, "Output file (default: stdout)");

  CLI::App* region = app.add_subcommand("region", "Gain/loss map over a parameter plane");
  region->add_option("--plane", o.plane, "Axis names X,Y")->required();
  region->add_option("--x-range", o.x_range, "lo:hi:n")->required();
  region->add_option("--y-range", o.y_range, "lo:hi:n")->required();
  region->add_flag("--refine-boundary", o.refine, "Bisect gain/loss edges");
  region->add_option("--refine-tol", o.refine_tol, "Boundary resolution");
  region->add_option("--out", o.out, "Output file (default: stdout)");

  CLI::App* critical = app.add_subcommand("critical", "Critical correlation search");
  critical->add_option("--vary", o.vary, "lambda1 or lambda2")
      ->check(CLI::IsMember({"lambda1", "lambda2"}));
  critical->add_option("--bracket", o.bracket, "lo:hi");
  critical->add_option("--tol", o.tol, "Bisection tolerance");
  critical->add_option("--out", o.out, "Output file (default: stdout)");

  CLI::App* validate = app.add_subcommand("validate", "Run the self-validation suites");
  validate->add_option("--samples", o.samples, "Samples per suite");
  validate->add_option("--tol", o.validate_tol, "Relative tolerance of the oracle suites");
  validate->add_option("--seed", o.seed, "Random seed");
  validate->add_flag("--corrupt-s-constant", o.corrupt, "Debug: full-weight constant in s(t)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "dephasing: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*evolve) return cmd_evolve(o, out);
    if (*region) return cmd_region(o, out);
    if (*critical) return cmd_critical(o, out, err);
    return cmd_validate(o, out);
  } catch (const DomainError& e) {
    err << "dephasing: " << e.what() << '\n';
    return kUsageError;
  } catch (const NonConvergenceError& e) {
    err << "dephasing: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const PhysicalityError& e) {
    err << "dephasing: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "dephasing: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace dephasing::cli
