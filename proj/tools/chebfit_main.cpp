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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chebfit/active.hpp"
#include "chebfit/basis.hpp"
#include "chebfit/errors.hpp"
#include "chebfit/measures.hpp"
#include "chebfit/report_io.hpp"
#include "chebfit/verify.hpp"
#include "chebfit/weights.hpp"

namespace {

using chebfit::FitReport;
using chebfit::FunctionOracle;
using chebfit::IoError;
using chebfit::ParamError;

constexpr std::uint64_t kDefaultSeed = 42;

/// Accepts decimals, rationals like "2/3", and "inf".
double parse_p(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(text.substr(0, slash), &used);
      if (used != slash) throw ParamError("cannot parse p value '" + text + "'");
      const double den = std::stod(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1 || den == 0.0) {
        throw ParamError("cannot parse p value '" + text + "'");
      }
      return num / den;
    }
    const double value = std::stod(text, &used);
    if (used != text.size()) {
      throw ParamError("cannot parse p value '" + text + "'");
    }
    return value;
  } catch (const std::invalid_argument&) {
    throw ParamError("cannot parse p value '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParamError("cannot parse p value '" + text + "'");
  }
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return parts;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split_commas(text)) {
    values.push_back(parse_p(part));
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const std::string& part : split_commas(text)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(part, &used));
      if (used != part.size()) {
        throw ParamError("cannot parse integer list entry '" + part + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParamError("cannot parse integer list entry '" + part + "'");
    } catch (const std::out_of_range&) {
      throw ParamError("cannot parse integer list entry '" + part + "'");
    }
  }
  return values;
}

/// Seed resolution order: explicit flag, CHEBFIT_SEED, then 42.
std::uint64_t effective_seed(const CLI::App* cmd, std::uint64_t flag_value) {
  if (cmd->count("--seed") > 0) {
    return flag_value;
  }
  if (const char* env = std::getenv("CHEBFIT_SEED")) {
    try {
      return static_cast<std::uint64_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw ParamError(std::string("cannot parse CHEBFIT_SEED value '") + env +
                       "'");
    }
  }
  return kDefaultSeed;
}

/// Two-column t,value CSV. An unparseable first line is treated as a
/// header. Tables that stop short of an endpoint are extended flat, so
/// out-of-range queries clamp to the nearest tabulated value.
FunctionOracle load_csv_oracle(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open oracle CSV " + path);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x = 0.0;
    double y = 0.0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2) {
      if (first) {
        first = false;
        continue;
      }
      throw IoError("cannot parse oracle CSV line '" + line + "'");
    }
    first = false;
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) {
    throw IoError("oracle CSV " + path + " needs at least two data rows");
  }
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> sx(xs.size());
  std::vector<double> sy(ys.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sx[i] = xs[order[i]];
    sy[i] = ys[order[i]];
  }
  if (sx.front() > -1.0) {
    sx.insert(sx.begin(), -1.0);
    sy.insert(sy.begin(), sy.front());
  }
  if (sx.back() < 1.0) {
    sx.push_back(1.0);
    sy.push_back(sy.back());
  }
  return FunctionOracle::tabulated(std::move(sx), std::move(sy));
}

FunctionOracle load_poly_oracle(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open polynomial oracle file " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
  if (j.contains("poly")) {
    j = j["poly"];
  }
  return FunctionOracle::poly(chebfit::report_io::poly_from_json(j));
}

/// "abs" | "runge" | "exp" | "step" | "poly:coeffs.json" | "table.csv".
FunctionOracle make_oracle(const std::string& spec) {
  if (spec.rfind("poly:", 0) == 0) {
    return load_poly_oracle(spec.substr(5));
  }
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") {
    return load_csv_oracle(spec);
  }
  return FunctionOracle::builtin(spec);
}

int cmd_fit(const std::string& oracle_spec, int d, const std::string& p_text,
            std::size_t n, std::uint64_t seed, const std::string& out_dir) {
  const double p = parse_p(p_text);
  FunctionOracle oracle = make_oracle(oracle_spec);
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  FitReport report;
  if (std::isinf(p)) {
    report = chebfit::fit_linf(oracle, d, n, seed);
  } else {
    report = chebfit::fit_relative_error(oracle, d, p, n, seed);
  }
  chebfit::report_io::write_fit_report(out_dir, report);
  bool converged = true;
  for (const auto& stage : report.stage_results) {
    converged = converged && stage.converged;
  }
  std::printf("queries: %ld\n", report.n_queries);
  std::printf("est_error: %s\n",
              chebfit::report_io::format_double(report.est_error).c_str());
  std::printf("converged: %s\n", converged ? "true" : "false");
  std::printf("wrote %s and %s\n",
              (std::filesystem::path(out_dir) / "fit.json").string().c_str(),
              (std::filesystem::path(out_dir) / "samples.csv").string().c_str());
  return converged ? 0 : 2;
}

int cmd_weights(int d, const std::string& p_text, double clip_constant,
                int grid_size, const std::string& out_dir) {
  const double p = parse_p(p_text);
  const chebfit::MeasureSpec cheb = chebfit::MeasureSpec::chebyshev(d);
  const chebfit::MeasureSpec clipped =
      chebfit::MeasureSpec::clipped_chebyshev(d, clip_constant);
  chebfit::ReweightedGram gram(d, p, clipped);
  std::string csv = "t,v,w,tau_v,tau_w\n";
  for (double t : chebfit::standard_grid(grid_size)) {
    csv += chebfit::report_io::format_double(t);
    csv += ',';
    csv += chebfit::report_io::format_double(chebfit::density(cheb, t));
    csv += ',';
    csv += chebfit::report_io::format_double(chebfit::density(clipped, t));
    csv += ',';
    csv += chebfit::report_io::format_double(
        chebfit::operator_reweighted_leverage(t, d, p, cheb));
    csv += ',';
    csv += chebfit::report_io::format_double(gram.leverage(t));
    csv += '\n';
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }
  const std::filesystem::path path =
      std::filesystem::path(out_dir) / "weights.csv";
  chebfit::report_io::write_text_atomic(path, csv);
  std::printf("wrote %s\n", path.string().c_str());
  return 0;
}

struct CellOutcome {
  std::string kind;
  int d = 0;
  double p = 0.0;
  bool pass = false;
  bool errored = false;
  std::string detail;
  nlohmann::json report;
};

void print_cell(const CellOutcome& cell) {
  const char* badge = cell.errored ? "[ERROR]" : (cell.pass ? "[PASS]" : "[FAIL]");
  std::printf("%s %s d=%d p=%g %s\n", badge, cell.kind.c_str(), cell.d, cell.p,
              cell.detail.c_str());
}

int cmd_verify(const std::string& d_text, const std::string& p_text,
               int grid_size, double clip_constant, const std::string& out_dir) {
  const std::vector<int> d_list = parse_int_list(d_text);
  const std::vector<double> p_list = parse_p_list(p_text);
  const double gamma = 1.25 + std::numbers::pi * clip_constant / 2.0;
  std::vector<CellOutcome> cells;

  for (int d : d_list) {
    for (double p : p_list) {
      CellOutcome cell;
      cell.kind = "ratio";
      cell.d = d;
      cell.p = p;
      try {
        const auto reports =
            chebfit::verify_ratio_bounds({d}, {p}, grid_size, clip_constant);
        const chebfit::RatioReport& r = reports.front();
        cell.report = chebfit::report_io::ratio_report_json(r);
        bool pass = r.max_ratio <= 10.0 && r.min_ratio_times_log3d >= 0.01;
        if (p == 1.0) {
          pass = pass && r.core_min_ratio >= 1.0 / gamma &&
                 r.core_max_ratio <= gamma;
        }
        cell.pass = pass;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "max_ratio=%.4g min_ratio*log3d=%.4g core=[%.4g,%.4g]",
                      r.max_ratio, r.min_ratio_times_log3d, r.core_min_ratio,
                      r.core_max_ratio);
        cell.detail = buf;
      } catch (const chebfit::Error& e) {
        cell.errored = true;
        cell.detail = e.what();
      }
      print_cell(cell);
      cells.push_back(std::move(cell));
    }
  }

  for (double p : {1.0, 1.5}) {
    CellOutcome cell;
    cell.kind = "decay";
    cell.d = 6;
    cell.p = p;
    try {
      const chebfit::DecayReport r = chebfit::verify_unclipped_endcap_decay(6, p);
      cell.report = chebfit::report_io::decay_report_json(r);
      cell.pass = r.strictly_decreasing;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "strictly_decreasing=%s last_ratio=%.4g",
                    r.strictly_decreasing ? "true" : "false", r.ratios.back());
      cell.detail = buf;
    } catch (const chebfit::Error& e) {
      cell.errored = true;
      cell.detail = e.what();
    }
    print_cell(cell);
    cells.push_back(std::move(cell));
  }

  for (int d : {8, 16}) {
    for (double p : {1.0, 2.0}) {
      CellOutcome cell;
      cell.kind = "sensitivity";
      cell.d = d;
      cell.p = p;
      try {
        const chebfit::SensitivityReport r =
            chebfit::verify_sensitivity_bounds(d, p, 40);
        cell.report = chebfit::report_io::sensitivity_report_json(r);
        cell.pass = r.all_within_global && r.min_psi >= 0.5;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "max/bound=%.4g min_psi=%.4g kappa=%.4g", r.max_over_bound,
                      r.min_psi, r.kappa);
        cell.detail = buf;
      } catch (const chebfit::Error& e) {
        cell.errored = true;
        cell.detail = e.what();
      }
      print_cell(cell);
      cells.push_back(std::move(cell));
    }
  }

  // Extremes at fixed p must be stable within a factor of two across d.
  bool stability_pass = true;
  for (double p : p_list) {
    double max_hi = 0.0;
    double max_lo = std::numeric_limits<double>::infinity();
    double min_hi = 0.0;
    double min_lo = std::numeric_limits<double>::infinity();
    int found = 0;
    for (const CellOutcome& cell : cells) {
      if (cell.kind != "ratio" || cell.errored || cell.p != p) continue;
      const double mx = cell.report["max_ratio"].get<double>();
      const double mn = cell.report["min_ratio"].get<double>();
      max_hi = std::max(max_hi, mx);
      max_lo = std::min(max_lo, mx);
      min_hi = std::max(min_hi, mn);
      min_lo = std::min(min_lo, mn);
      ++found;
    }
    if (found >= 2 && (max_hi > 2.0 * max_lo || min_hi > 2.0 * min_lo)) {
      stability_pass = false;
      std::printf("[FAIL] stability p=%g max in [%.4g,%.4g] min in [%.4g,%.4g]\n",
                  p, max_lo, max_hi, min_lo, min_hi);
    }
  }

  std::string csv = "kind,d,p,pass,error,detail\n";
  bool all_pass = stability_pass;
  bool any_error = false;
  nlohmann::json cell_array = nlohmann::json::array();
  for (const CellOutcome& cell : cells) {
    all_pass = all_pass && cell.pass;
    any_error = any_error || cell.errored;
    csv += cell.kind + "," + std::to_string(cell.d) + "," +
           chebfit::report_io::format_double(cell.p) + "," +
           (cell.pass ? "1" : "0") + "," + (cell.errored ? "1" : "0") + ",\"" +
           cell.detail + "\"\n";
    nlohmann::json entry;
    entry["kind"] = cell.kind;
    entry["d"] = cell.d;
    entry["p"] = cell.p;
    entry["pass"] = cell.pass;
    entry["error"] = cell.errored ? cell.detail : "";
    entry["report"] = cell.report;
    cell_array.push_back(entry);
  }
  nlohmann::json summary;
  summary["format_version"] = chebfit::report_io::kFormatVersion;
  summary["cells"] = cell_array;
  summary["stability_pass"] = stability_pass;
  summary["all_pass"] = all_pass;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "verify_cells.csv", csv);
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "verify_summary.json",
      summary.dump(2) + "\n");
  std::printf("%s: %zu cells, all_pass=%s\n",
              (std::filesystem::path(out_dir) / "verify_summary.json")
                  .string()
                  .c_str(),
              cells.size(), all_pass ? "true" : "false");
  if (any_error) return 3;
  return all_pass ? 0 : 1;
}

int cmd_adversary(const std::string& p_text, double eps, std::size_t n,
                  int trials, std::uint64_t seed, std::size_t n_fit,
                  const std::string& out_dir) {
  const double p = parse_p(p_text);
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  std::optional<std::size_t> override;
  if (n_fit > 0) {
    override = n_fit;
  }
  const chebfit::AdversaryReport report =
      chebfit::adversary_lower_bound(p, eps, n, trials, seed, override);
  std::string csv = "trial,missed,failed,error_ratio\n";
  for (int i = 0; i < report.trials; ++i) {
    csv += std::to_string(i) + "," +
           (report.trial_missed[static_cast<std::size_t>(i)] ? "1" : "0") +
           "," +
           (report.trial_failed[static_cast<std::size_t>(i)] ? "1" : "0") +
           "," +
           chebfit::report_io::format_double(
               report.trial_error_ratio[static_cast<std::size_t>(i)]) +
           "\n";
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "adversary_trials.csv", csv);
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "adversary.json",
      chebfit::report_io::adversary_report_json(report).dump(2) + "\n");
  std::printf("miss_fraction: %s\n",
              chebfit::report_io::format_double(report.miss_fraction).c_str());
  std::printf(
      "fail_rate_among_missed: %s\n",
      chebfit::report_io::format_double(report.fail_rate_among_missed).c_str());
  std::printf(
      "overall_fail_rate: %s\n",
      chebfit::report_io::format_double(report.overall_fail_rate).c_str());
  return 0;
}

int cmd_bench(const std::string& what, int d, const std::string& n_text,
              std::uint64_t seed, const std::string& out_dir) {
  if (what != "runge") {
    throw ParamError("unknown bench target '" + what + "' (expected: runge)");
  }
  std::vector<int> n_list;
  if (n_text.empty()) {
    for (int factor : {1, 2, 4, 8, 16}) {
      n_list.push_back(factor * (d + 1));
    }
  } else {
    n_list = parse_int_list(n_text);
  }
  std::printf("seed: %llu\n", static_cast<unsigned long long>(seed));
  std::string csv = "n,uniform_error,chebyshev_error,ratio\n";
  nlohmann::json rows = nlohmann::json::array();
  for (int n : n_list) {
    const chebfit::RungeReport report =
        chebfit::runge_comparison(d, static_cast<std::size_t>(n), seed);
    csv += std::to_string(n) + "," +
           chebfit::report_io::format_double(report.uniform_error) + "," +
           chebfit::report_io::format_double(report.chebyshev_error) + "," +
           chebfit::report_io::format_double(report.ratio) + "\n";
    rows.push_back(chebfit::report_io::runge_report_json(report));
    std::printf("n=%d uniform=%.6g chebyshev=%.6g ratio=%.4g\n", n,
                report.uniform_error, report.chebyshev_error, report.ratio);
  }
  nlohmann::json summary;
  summary["format_version"] = chebfit::report_io::kFormatVersion;
  summary["d"] = d;
  summary["seed"] = seed;
  summary["rows"] = rows;
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "bench.csv", csv);
  chebfit::report_io::write_text_atomic(
      std::filesystem::path(out_dir) / "bench.json", summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chebfit: active L_p polynomial regression via Chebyshev sampling"};
  app.require_subcommand(1);

  std::string oracle_spec;
  std::string p_text = "2";
  std::string out_dir = ".";
  int d = 8;
  std::size_t n = 200;
  std::uint64_t seed = kDefaultSeed;

  CLI::App* fit = app.add_subcommand("fit", "fit a polynomial to an oracle");
  fit->add_option("--oracle", oracle_spec,
                  "builtin name (abs|runge|exp|step), poly:coeffs.json, or "
                  "a t,value CSV path")
      ->required();
  fit->add_option("--d", d, "polynomial degree")->required();
  fit->add_option("--p", p_text, "norm exponent: decimal, rational, or inf");
  fit->add_option("--n", n, "query budget")->required();
  fit->add_option("--seed", seed, "RNG seed (default CHEBFIT_SEED or 42)");
  fit->add_option("--out", out_dir, "output directory");

  int w_d = 6;
  std::string w_p = "1";
  double w_clip = 1.0;
  int w_grid = 400;
  std::string w_out = ".";
  CLI::App* weights = app.add_subcommand(
      "weights", "emit density and leverage curves t,v,w,tau_v,tau_w");
  weights->add_option("--d", w_d, "polynomial degree");
  weights->add_option("--p", w_p, "norm exponent in [2/3, 2]");
  weights->add_option("--C", w_clip, "clipping constant (> 1/pi)");
  weights->add_option("--grid", w_grid, "grid size");
  weights->add_option("--out", w_out, "output directory");

  std::string v_d = "4,8,16";
  std::string v_p = "2/3,1,3/2,2";
  int v_grid = 400;
  double v_clip = 1.0;
  std::string v_out = ".";
  CLI::App* verify = app.add_subcommand(
      "verify", "run the leverage/sensitivity verification sweep");
  verify->add_option("--d", v_d, "comma-separated degree list");
  verify->add_option("--p", v_p, "comma-separated p list");
  verify->add_option("--grid", v_grid, "grid size");
  verify->add_option("--C", v_clip, "clipping constant (> 1/pi)");
  verify->add_option("--out", v_out, "output directory");

  std::string a_p = "2";
  double a_eps = 0.2;
  std::size_t a_n = 10;
  int a_trials = 200;
  std::uint64_t a_seed = kDefaultSeed;
  std::size_t a_nfit = 0;
  std::string a_out = ".";
  CLI::App* adversary = app.add_subcommand(
      "adversary", "hidden-interval query lower-bound experiment");
  adversary->add_option("--p", a_p, "norm exponent");
  adversary->add_option("--eps", a_eps, "target accuracy parameter in (0,1)");
  adversary->add_option("--n", a_n, "query budget defining the interval");
  adversary->add_option("--trials", a_trials, "number of trials");
  adversary->add_option("--seed", a_seed, "RNG seed (default CHEBFIT_SEED or 42)");
  adversary->add_option("--n-fit", a_nfit,
                        "fitting query budget override (0 = same as --n)");
  adversary->add_option("--out", a_out, "output directory");

  std::string b_what = "runge";
  int b_d = 20;
  std::string b_n;
  std::uint64_t b_seed = kDefaultSeed;
  std::string b_out = ".";
  CLI::App* bench = app.add_subcommand(
      "bench", "uniform vs Chebyshev sampling error comparison");
  bench->add_option("--what", b_what, "benchmark name (runge)");
  bench->add_option("--d", b_d, "polynomial degree");
  bench->add_option("--n", b_n, "comma-separated sample counts");
  bench->add_option("--seed", b_seed, "RNG seed (default CHEBFIT_SEED or 42)");
  bench->add_option("--out", b_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit->parsed()) {
      return cmd_fit(oracle_spec, d, p_text, n, effective_seed(fit, seed),
                     out_dir);
    }
    if (weights->parsed()) {
      return cmd_weights(w_d, w_p, w_clip, w_grid, w_out);
    }
    if (verify->parsed()) {
      return cmd_verify(v_d, v_p, v_grid, v_clip, v_out);
    }
    if (adversary->parsed()) {
      return cmd_adversary(a_p, a_eps, a_n, a_trials,
                           effective_seed(adversary, a_seed), a_nfit, a_out);
    }
    if (bench->parsed()) {
      return cmd_bench(b_what, b_d, b_n, effective_seed(bench, b_seed), b_out);
    }
  } catch (const chebfit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
