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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dephasing/cli.hpp"
#include "dephasing/config.hpp"
#include "json.hpp"

namespace dephasing {
namespace {

using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dephasing");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, ParsesKeysAndDefaults) {
  const ScenarioConfig cfg = parse(
      "# growth scenario\n"
      "alpha = 0.0025   # small coupling\n"
      "mu = 0.01\n"
      "gamma = 0.05\n"
      "nu = 0.05\n"
      "lambda1 = 0.25\n"
      "\n"
      "omega_c = 2\n");
  EXPECT_EQ(cfg.scenario.model.bath.alpha, 0.0025);
  EXPECT_EQ(cfg.scenario.model.bath.omega_c, 2.0);
  EXPECT_EQ(cfg.scenario.lambda1, 0.25);
  EXPECT_EQ(cfg.scenario.lambda2, 0.0);
  EXPECT_EQ(cfg.scenario.backend, Backend::closed_form);
  EXPECT_NEAR(cfg.grid.t_min, 5e-4, 1e-18);
  EXPECT_NEAR(cfg.grid.t_max, 5e3, 1e-9);
  EXPECT_EQ(cfg.grid.points, 400);
  EXPECT_TRUE(cfg.scenario.amplitudes1 == cfg.scenario.amplitudes2);
}

TEST(Config, CompletesAmplitudeFromNormalization) {
  const ScenarioConfig cfg = parse("b_plus = 0.6\nb2_minus = 0.6\n");
  EXPECT_NEAR(cfg.scenario.amplitudes1.b_minus.real(), 0.8, 1e-15);
  EXPECT_NEAR(cfg.scenario.amplitudes2.b_plus.real(), 0.8, 1e-15);
}

TEST(Config, LinearGridStartsAtZero) {
  const ScenarioConfig cfg = parse("grid = linear\npoints = 11\nbackend = quad\n");
  EXPECT_EQ(cfg.grid.kind, TimeGrid::Kind::linear);
  EXPECT_EQ(cfg.grid.t_min, 0.0);
  EXPECT_EQ(cfg.scenario.backend, Backend::quadrature);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse("alpha = 0.1\nalpha = 0.2\n"), ConfigError);
  EXPECT_THROW(parse("alpha 0.1\n"), ConfigError);
  EXPECT_THROW(parse("alpha = 0.1x\n"), ConfigError);
  EXPECT_THROW(parse("alpha = -1\n"), ConfigError);
  EXPECT_THROW(parse("lambda1 = 2\n"), ConfigError);
  EXPECT_THROW(parse("backend = spline\n"), ConfigError);
  EXPECT_THROW(parse("b_plus = 1.5\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/scenario.cfg"), ConfigError);
  EXPECT_THROW(parse_real("nan"), ConfigError);
  EXPECT_EQ(parse_real("1e-3"), 1e-3);
}

TEST(Cli, FormatRealRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.5208465499334672, 1e-300, -7.0})
    EXPECT_EQ(std::stod(cli::format_real(v)), v);
}

TEST(Cli, EvolveCsvIsStableAndWellFormed) {
  const Outcome a = invoke({"evolve"});
  const Outcome b = invoke({"evolve"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> lines = lines_of(a.out);
  ASSERT_EQ(lines.size(), 401u);
  EXPECT_EQ(lines[0], "t,distance,abs_A1,abs_A2,r,s,phi");
  EXPECT_EQ(lines[1].rfind("0.001,", 0), 0u);
}

TEST(Cli, EvolveWritesFileAndReadsConfig) {
  const auto cfg = write_temp("dephasing_cli_same.cfg", "lambda1 = 0.4\nlambda2 = 0.4\n");
  const auto out = std::filesystem::temp_directory_path() / "dephasing_cli_same.csv";
  const Outcome o =
      invoke({"--config", cfg.string(), "evolve", "--points", "20", "--out", out.string()});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.find(',') + 1, 2), "0,");
  }
  EXPECT_EQ(rows, 20);
}

TEST(Cli, QuadratureBackendMatchesClosedForm) {
  const Outcome closed = invoke({"evolve", "--points", "30"});
  const Outcome quad = invoke({"evolve", "--points", "30", "--backend", "quad"});
  ASSERT_EQ(quad.code, cli::kOk) << quad.err;
  const auto a = lines_of(closed.out);
  const auto b = lines_of(quad.out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double da = std::stod(a[i].substr(a[i].find(',') + 1));
    const double db = std::stod(b[i].substr(b[i].find(',') + 1));
    EXPECT_NEAR(da, db, 1e-6);
  }
}

TEST(Cli, RegionJson) {
  const auto cfg = write_temp("dephasing_cli_growth.cfg", "mu = 0.01\nlambda1 = 0.25\n");
  const Outcome o = invoke({"--config", cfg.string(), "region", "--plane", "alpha,lambda1",
                            "--x-range", "0.0025:0.01:4", "--y-range", "0.25:0.75:3",
                            "--refine-boundary"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["plane"], json({"alpha", "lambda1"}));
  ASSERT_EQ(j["labels"].size(), 3u);
  ASSERT_EQ(j["labels"][0].size(), 4u);
  EXPECT_EQ(j["labels"][0][0], "+");
  EXPECT_EQ(j["labels"][0][3], "-");
  EXPECT_NEAR(j["gain_ratio"][0][0].get<double>(), 2.5208465499334672, 1e-9);
  EXPECT_FALSE(j["boundary"].empty());

  const Outcome point = invoke({"--config", cfg.string(), "region", "--plane", "alpha,lambda1",
                                "--x-range", "0.0025:0.0025:1", "--y-range", "0.25:0.25:1"});
  ASSERT_EQ(point.code, cli::kOk) << point.err;
  EXPECT_EQ(json::parse(point.out)["labels"], json::parse(R"([["+"]])"));
}

TEST(Cli, RegionWithoutDisplacementHasNoGain) {
  const auto cfg = write_temp("dephasing_cli_flat.cfg", "gamma = 0\n");
  const Outcome o = invoke({"--config", cfg.string(), "region", "--plane", "alpha,lambda1",
                            "--x-range", "0.001:0.1:4", "--y-range", "0.1:0.9:4"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  for (const json& row : json::parse(o.out)["labels"])
    for (const json& label : row) EXPECT_NE(label, "+");
}

TEST(Cli, CriticalJson) {
  const auto cfg = write_temp("dephasing_cli_critical.cfg", "alpha = 0.0025\nmu = 0.01\n");
  const Outcome o = invoke({"--config", cfg.string(), "critical"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["vary"], "lambda1");
  EXPECT_NEAR(j["lambda_c"].get<double>(), 0.492910178718617, 2e-6);
  EXPECT_GT(j["ratio_lo"].get<double>(), 1.0);
  EXPECT_LT(j["ratio_hi"].get<double>(), 1.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"evolve", "--points", "1"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"evolve", "--backend", "spline"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"--config", "/nonexistent.cfg", "evolve"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"region", "--plane", "alpha", "--x-range", "0:1:2", "--y-range", "0:1:2"})
                .code,
            cli::kUsageError);
  EXPECT_EQ(invoke({"critical", "--bracket", "0.9:0.1"}).code, cli::kUsageError);

  const auto strong = write_temp("dephasing_cli_strong.cfg", "alpha = 0.05\nmu = 0.01\n");
  const Outcome none = invoke({"--config", strong.string(), "critical"});
  EXPECT_EQ(none.code, cli::kNoBracket);
  EXPECT_EQ(json::parse(none.out)["status"], "no-bracket");

  EXPECT_EQ(invoke({"validate", "--samples", "0"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"validate", "--samples", "10", "--corrupt-s-constant"}).code,
            cli::kNumericalFailure);
}

TEST(Cli, ValidatePasses) {
  const Outcome o = invoke({"validate", "--samples", "100", "--tol", "1e-6", "--seed", "42"});
  EXPECT_EQ(o.code, cli::kOk) << o.out << o.err;
}

TEST(Cli, ValidationSuitesReportEachCheck) {
  const auto suites = cli::run_validation({20, 1e-6, 7, false});
  ASSERT_EQ(suites.size(), 5u);
  for (const cli::SuiteResult& s : suites) {
    EXPECT_TRUE(s.ok()) << s.name;
    EXPECT_GT(s.total, 0) << s.name;
  }
  const auto corrupt = cli::run_validation({20, 1e-6, 7, true});
  bool overlap_failed = false;
  for (const cli::SuiteResult& s : corrupt)
    if (s.name == "overlap_consistency") overlap_failed = !s.ok();
  EXPECT_TRUE(overlap_failed);
}

}  // namespace
}  // namespace dephasing
