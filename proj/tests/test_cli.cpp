// Copyright 2026 the chebfit project
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

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "chebfit/active.hpp"
#include "chebfit/report_io.hpp"

namespace {

namespace fs = std::filesystem;

/// Scratch directory for one test case, wiped before use.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "chebfit_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// Runs the CLI through the shell with stdout+stderr captured to a file.
/// `env_prefix` lets a test pin or clear CHEBFIT_SEED.
int run_cli(const std::string& args, const fs::path& log,
            const std::string& env_prefix = "env -u CHEBFIT_SEED") {
  const std::string cmd = env_prefix + " " + CHEBFIT_BIN_PATH + " " + args +
                          " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("fit writes a report whose error estimate survives the round trip") {
  const fs::path dir = scratch("fit_roundtrip");
  const fs::path out1 = dir / "run1";
  const int rc = run_cli(
      "fit --oracle runge --d 6 --p 2 --n 120 --seed 5 --out " + out1.string(),
      dir / "log1.txt");
  CHECK(rc == 0);
  const std::string log = slurp(dir / "log1.txt");
  CHECK(contains(log, "seed: 5"));
  CHECK(contains(log, "queries: 120"));

  const chebfit::FitReport report =
      chebfit::report_io::load_fit_report(out1 / "fit.json");
  CHECK(report.seed == 5);
  CHECK(report.p == 2.0);
  const chebfit::FunctionOracle oracle =
      chebfit::FunctionOracle::builtin("runge");
  const double replayed = chebfit::residual_pnorm(
      oracle, report.poly, report.p, report.error_quad_nodes);
  CHECK(std::abs(replayed - report.est_error) <= 1e-9);

  const std::string samples = slurp(out1 / "samples.csv");
  CHECK(samples.rfind("t,b,prob,rescale\n", 0) == 0);
  CHECK(count_lines(samples) == 121);

  // Reruns with the same seed are byte-identical.
  const fs::path out2 = dir / "run2";
  CHECK(run_cli("fit --oracle runge --d 6 --p 2 --n 120 --seed 5 --out " +
                    out2.string(),
                dir / "log2.txt") == 0);
  CHECK(slurp(out1 / "fit.json") == slurp(out2 / "fit.json"));
  CHECK(slurp(out1 / "samples.csv") == slurp(out2 / "samples.csv"));
}

TEST_CASE("seed resolution prefers the flag, then CHEBFIT_SEED, then 42") {
  const fs::path dir = scratch("fit_seed");
  CHECK(run_cli("fit --oracle exp --d 3 --n 20 --out " + (dir / "a").string(),
                dir / "log_default.txt") == 0);
  CHECK(contains(slurp(dir / "log_default.txt"), "seed: 42"));

  CHECK(run_cli("fit --oracle exp --d 3 --n 20 --out " + (dir / "b").string(),
                dir / "log_env.txt", "env CHEBFIT_SEED=9") == 0);
  CHECK(contains(slurp(dir / "log_env.txt"), "seed: 9"));

  CHECK(run_cli("fit --oracle exp --d 3 --n 20 --seed 3 --out " +
                    (dir / "c").string(),
                dir / "log_flag.txt", "env CHEBFIT_SEED=9") == 0);
  CHECK(contains(slurp(dir / "log_flag.txt"), "seed: 3"));
}

TEST_CASE("fit recovers a polynomial oracle given as a JSON file") {
  const fs::path dir = scratch("fit_poly");
  nlohmann::json poly;
  poly["degree"] = 5;
  poly["basis"] = "chebyshev_t";
  poly["coeffs"] = {0.4, -0.9, 0.3, 0.0, 0.2, -0.55};
  nlohmann::json doc;
  doc["poly"] = poly;
  {
    std::ofstream out(dir / "poly.json");
    out << doc.dump(2) << "\n";
  }
  const int rc = run_cli("fit --oracle poly:" + (dir / "poly.json").string() +
                             " --d 5 --p 3/2 --n 48 --seed 2 --out " +
                             (dir / "out").string(),
                         dir / "log.txt");
  CHECK(rc == 0);
  const chebfit::FitReport report =
      chebfit::report_io::load_fit_report(dir / "out" / "fit.json");
  CHECK(report.p == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(report.est_error <= 1e-6);
  REQUIRE(report.poly.coeffs.size() == 6);
  CHECK(report.poly.coeffs[1] == doctest::Approx(-0.9).epsilon(1e-6));
}

TEST_CASE("a CSV oracle with p=inf routes to the minimax fit") {
  const fs::path dir = scratch("fit_csv");
  {
    std::ofstream out(dir / "table.csv");
    out << "t,value\n";
    for (int i = 0; i <= 40; ++i) {
      const double t = -1.0 + 0.05 * i;
      out << t << "," << (1.0 - std::abs(t)) << "\n";
    }
  }
  const int rc = run_cli("fit --oracle " + (dir / "table.csv").string() +
                             " --p inf --d 4 --n 60 --seed 3 --out " +
                             (dir / "out").string(),
                         dir / "log.txt");
  CHECK(rc == 0);

  const std::string raw = slurp(dir / "out" / "fit.json");
  CHECK(contains(raw, "\"p\": \"inf\""));
  const chebfit::FitReport report =
      chebfit::report_io::load_fit_report(dir / "out" / "fit.json");
  CHECK(std::isinf(report.p));
  CHECK(report.error_quad_nodes == 20000);
  CHECK(report.est_error > 0.0);
  CHECK(report.est_error < 0.5);
}

TEST_CASE("weights emits the documented header and curve relations") {
  const fs::path dir = scratch("weights");
  const int rc = run_cli(
      "weights --d 6 --p 1 --C 1 --grid 60 --out " + dir.string(),
      dir / "log.txt");
  CHECK(rc == 0);
  const std::string csv = slurp(dir / "weights.csv");
  CHECK(csv.rfind("t,v,w,tau_v,tau_w\n", 0) == 0);
  CHECK(count_lines(csv) == 75);  // header + 60 midpoints + 14 endcap points

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  double last_t = -2.0;
  double tail_ratio = 1.0;
  while (std::getline(in, line)) {
    double t = 0.0, v = 0.0, w = 0.0, tau_v = 0.0, tau_w = 0.0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &v, &w, &tau_v,
                        &tau_w) == 5);
    CHECK(t > last_t);
    last_t = t;
    CHECK(v >= w);          // clipping can only lower the density
    CHECK(w <= 49.0 + 1e-12);  // C (d+1)^2 cap
    CHECK(tau_v > 0.0);
    CHECK(tau_w > 0.0);
    if (t > 1.0 - 1e-7) tail_ratio = tau_v / v;
  }
  // The unclipped leverage collapses relative to the density at the endcap.
  CHECK(tail_ratio < 0.1);
}

TEST_CASE("verify runs a reduced sweep and reports all cells passing") {
  const fs::path dir = scratch("verify");
  const int rc = run_cli(
      "verify --d 4,8 --p 1,2 --grid 60 --C 1 --out " + dir.string(),
      dir / "log.txt");
  CHECK(rc == 0);
  const std::string log = slurp(dir / "log.txt");
  CHECK(contains(log, "[PASS] ratio d=4 p=1"));
  CHECK(contains(log, "[PASS] sensitivity d=16 p=2"));
  CHECK(!contains(log, "[FAIL]"));
  CHECK(!contains(log, "[ERROR]"));

  const nlohmann::json summary =
      nlohmann::json::parse(slurp(dir / "verify_summary.json"));
  CHECK(summary["format_version"].get<int>() == 1);
  CHECK(summary["all_pass"].get<bool>());
  CHECK(summary["stability_pass"].get<bool>());
  // 4 ratio cells + 2 decay cells + 4 sensitivity cells.
  CHECK(summary["cells"].size() == 10);

  const std::string csv = slurp(dir / "verify_cells.csv");
  CHECK(csv.rfind("kind,d,p,pass,error,detail\n", 0) == 0);
  CHECK(count_lines(csv) == 11);
}

TEST_CASE("adversary writes trial logs and a sound criterion") {
  const fs::path dir = scratch("adversary");
  const int rc = run_cli(
      "adversary --p 2 --eps 0.2 --n 40 --trials 10 --seed 11 --out " +
          dir.string(),
      dir / "log.txt");
  CHECK(rc == 0);
  const std::string log = slurp(dir / "log.txt");
  CHECK(contains(log, "seed: 11"));
  CHECK(contains(log, "overall_fail_rate:"));

  const nlohmann::json report =
      nlohmann::json::parse(slurp(dir / "adversary.json"));
  CHECK(report["criterion_sound"].get<bool>());
  CHECK(report["trials"].get<int>() == 10);
  CHECK(report["format_version"].get<int>() == 1);

  const std::string csv = slurp(dir / "adversary_trials.csv");
  CHECK(csv.rfind("trial,missed,failed,error_ratio\n", 0) == 0);
  CHECK(count_lines(csv) == 11);
}

TEST_CASE("bench contrasts uniform and Chebyshev sampling on the Runge function") {
  const fs::path dir = scratch("bench");
  const int rc = run_cli(
      "bench --what runge --d 20 --n 21 --seed 1 --out " + dir.string(),
      dir / "log.txt");
  CHECK(rc == 0);
  CHECK(contains(slurp(dir / "log.txt"), "n=21"));

  const nlohmann::json summary = nlohmann::json::parse(slurp(dir / "bench.json"));
  REQUIRE(summary["rows"].size() == 1);
  CHECK(summary["rows"][0]["ratio"].get<double>() >= 10.0);
  CHECK(summary["d"].get<int>() == 20);

  const std::string csv = slurp(dir / "bench.csv");
  CHECK(csv.rfind("n,uniform_error,chebyshev_error,ratio\n", 0) == 0);
  CHECK(count_lines(csv) == 2);
}

TEST_CASE("bad inputs exit nonzero with an error line") {
  const fs::path dir = scratch("errors");
  CHECK(run_cli("fit --oracle nosuch --d 3 --n 20 --out " + dir.string(),
                dir / "log1.txt") == 1);
  CHECK(contains(slurp(dir / "log1.txt"), "error:"));

  CHECK(run_cli("fit --oracle " + (dir / "missing.csv").string() +
                    " --d 3 --n 20 --out " + dir.string(),
                dir / "log2.txt") == 1);
  CHECK(contains(slurp(dir / "log2.txt"), "error:"));

  CHECK(run_cli("fit --oracle exp --d 3 --p nope --n 20 --out " + dir.string(),
                dir / "log3.txt") == 1);

  CHECK(run_cli("bench --what nothing --out " + dir.string(),
                dir / "log4.txt") == 1);

  // CLI parse failures (missing required options) are also nonzero.
  CHECK(run_cli("fit --d 3 --n 20", dir / "log5.txt") != 0);
}

}  // TEST_SUITE
