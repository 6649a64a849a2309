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

#include "dephasing/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>

namespace dephasing {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("not an integer: '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("not a boolean: '" + text + "'");
}

// Fills in a missing partner amplitude from the normalization constraint.
QubitAmplitudes complete_amplitudes(std::optional<Complex> plus, std::optional<Complex> minus,
                                    const QubitAmplitudes& fallback) {
  if (!plus && !minus) return fallback;
  auto partner = [](Complex known) {
    const double rest = 1.0 - std::norm(known);
    if (rest < -1e-12) throw ConfigError("qubit amplitude exceeds 1 in modulus");
    return Complex(std::sqrt(std::max(0.0, rest)));
  };
  if (!minus) return {*plus, partner(*plus)};
  if (!plus) return {partner(*minus), *minus};
  return {*plus, *minus};
}

}  // namespace

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw ConfigError("not a finite decimal number: '" + text + "'");
  }
  return value;
}

void ScenarioConfig::validate() const {
  try {
    scenario.validate();
    grid.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig parse_config(std::istream& in) {
  ScenarioConfig cfg;
  Scenario& sc = cfg.scenario;
  std::optional<double> b1[4];  // plus re, minus re, plus im, minus im
  std::optional<double> b2[4];

  using Setter = std::function<void(const std::string&)>;
  auto real_into = [](double& target) -> Setter {
    return [&target](const std::string& v) { target = parse_real(v); };
  };
  auto opt_into = [](std::optional<double>& target) -> Setter {
    return [&target](const std::string& v) { target = parse_real(v); };
  };
  const std::map<std::string, Setter> setters = {
      {"epsilon", real_into(sc.model.epsilon)},
      {"omega_c", real_into(sc.model.bath.omega_c)},
      {"alpha", real_into(sc.model.bath.alpha)},
      {"mu", real_into(sc.model.bath.mu)},
      {"gamma", real_into(sc.model.displacement.gamma_coef)},
      {"nu", real_into(sc.model.displacement.nu)},
      {"lambda1", real_into(sc.lambda1)},
      {"lambda2", real_into(sc.lambda2)},
      {"b_plus", opt_into(b1[0])},
      {"b_minus", opt_into(b1[1])},
      {"b_plus_imag", opt_into(b1[2])},
      {"b_minus_imag", opt_into(b1[3])},
      {"b2_plus", opt_into(b2[0])},
      {"b2_minus", opt_into(b2[1])},
      {"b2_plus_imag", opt_into(b2[2])},
      {"b2_minus_imag", opt_into(b2[3])},
      {"grid",
       [&](const std::string& v) {
         if (v == "linear") {
           cfg.grid.kind = TimeGrid::Kind::linear;
         } else if (v == "log") {
           cfg.grid.kind = TimeGrid::Kind::log;
         } else {
           throw ConfigError("grid must be linear or log");
         }
       }},
      {"t_min", real_into(cfg.grid.t_min)},
      {"t_max", real_into(cfg.grid.t_max)},
      {"points", [&](const std::string& v) { cfg.grid.points = parse_int(v); }},
      {"backend",
       [&](const std::string& v) {
         if (v == "closed") {
           sc.backend = Backend::closed_form;
         } else if (v == "quad") {
           sc.backend = Backend::quadrature;
         } else {
           throw ConfigError("backend must be closed or quad");
         }
       }},
      {"normalized",
       [&](const std::string& v) {
         sc.convention = parse_bool(v) ? Convention::normalized : Convention::raw;
       }},
      {"abs_tol", real_into(sc.quadrature.abs_tol)},
      {"rel_tol", real_into(sc.quadrature.rel_tol)},
      {"max_subdivisions",
       [&](const std::string& v) { sc.quadrature.max_subdivisions = parse_int(v); }},
      {"tail_cut_multiplier", real_into(sc.quadrature.tail_cut_multiplier)},
      {"out", [&](const std::string& v) { cfg.out = v; }},
  };

  std::set<std::string> seen;
  bool grid_times_given = false;
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    if (key == "t_min" || key == "t_max") grid_times_given = true;
    try {
      it->second(value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }

  if (!grid_times_given) {
    cfg.grid = TimeGrid{cfg.grid.kind, 1e-3 / sc.model.bath.omega_c,
                        1e4 / sc.model.bath.omega_c, cfg.grid.points};
    if (cfg.grid.kind == TimeGrid::Kind::linear) cfg.grid.t_min = 0.0;
  }

  auto amplitude = [](const std::optional<double>& re, const std::optional<double>& im)
      -> std::optional<Complex> {
    if (!re && !im) return std::nullopt;
    return Complex(re.value_or(0.0), im.value_or(0.0));
  };
  sc.amplitudes1 =
      complete_amplitudes(amplitude(b1[0], b1[2]), amplitude(b1[1], b1[3]), QubitAmplitudes{});
  sc.amplitudes2 =
      complete_amplitudes(amplitude(b2[0], b2[2]), amplitude(b2[1], b2[3]), sc.amplitudes1);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

}  // namespace dephasing
