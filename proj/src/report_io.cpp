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

#include "chebfit/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <system_error>
#include <vector>

#include "chebfit/errors.hpp"

namespace chebfit {
namespace report_io {
namespace {

nlohmann::json p_json(double p) {
  if (std::isinf(p)) {
    return nlohmann::json("inf");
  }
  return nlohmann::json(p);
}

double p_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw IoError("unrecognized p encoding: " + j.dump());
  }
  return j.get<double>();
}

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw IoError("missing field '" + key + "' in JSON document");
  }
  return *it;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("rename to " + path.string() + " failed: " + ec.message());
  }
}

nlohmann::json poly_json(const PolyCoeffs& poly) {
  nlohmann::json j;
  j["degree"] = poly.degree;
  switch (poly.basis.tag) {
    case BasisTag::Monomial:
      j["basis"] = "monomial";
      break;
    case BasisTag::ChebyshevT:
      j["basis"] = "chebyshev_t";
      break;
    case BasisTag::LegendreNormalized:
      j["basis"] = "legendre_normalized";
      break;
    case BasisTag::GegenbauerNormalized:
      j["basis"] = "gegenbauer_normalized";
      j["alpha"] = poly.basis.alpha;
      break;
  }
  j["coeffs"] = poly.coeffs;
  return j;
}

PolyCoeffs poly_from_json(const nlohmann::json& j) {
  PolyCoeffs poly;
  poly.degree = require_field(j, "degree").get<int>();
  const std::string basis = require_field(j, "basis").get<std::string>();
  if (basis == "monomial") {
    poly.basis = BasisKind::monomial();
  } else if (basis == "chebyshev_t") {
    poly.basis = BasisKind::chebyshev_t();
  } else if (basis == "legendre_normalized") {
    poly.basis = BasisKind::legendre_normalized();
  } else if (basis == "gegenbauer_normalized") {
    poly.basis =
        BasisKind::gegenbauer_normalized(require_field(j, "alpha").get<double>());
  } else {
    throw IoError("unrecognized basis name: " + basis);
  }
  poly.coeffs = require_field(j, "coeffs").get<std::vector<double>>();
  poly.validate();
  return poly;
}

nlohmann::json fit_report_json(const FitReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["poly"] = poly_json(report.poly);
  j["has_monomial"] = report.has_monomial;
  if (report.has_monomial) {
    j["poly_monomial"] = poly_json(report.poly_monomial);
  }
  j["p"] = p_json(report.p);
  j["est_error"] = report.est_error;
  j["error_quad_nodes"] = report.error_quad_nodes;
  j["n_queries"] = report.n_queries;
  j["seed"] = report.seed;
  nlohmann::json stages = nlohmann::json::array();
  for (const SolveResult& stage : report.stage_results) {
    nlohmann::json s;
    s["objective"] = stage.objective;
    s["iterations"] = stage.iterations;
    s["converged"] = stage.converged;
    s["smoothing_final"] = stage.smoothing_final;
    stages.push_back(s);
  }
  j["stages"] = stages;
  return j;
}

FitReport fit_report_from_json(const nlohmann::json& j) {
  const int version = require_field(j, "format_version").get<int>();
  if (version != kFormatVersion) {
    throw IoError("unsupported format_version " + std::to_string(version));
  }
  FitReport report;
  report.poly = poly_from_json(require_field(j, "poly"));
  report.has_monomial = require_field(j, "has_monomial").get<bool>();
  if (report.has_monomial) {
    report.poly_monomial = poly_from_json(require_field(j, "poly_monomial"));
  }
  report.p = p_from_json(require_field(j, "p"));
  report.est_error = require_field(j, "est_error").get<double>();
  report.error_quad_nodes = require_field(j, "error_quad_nodes").get<int>();
  report.n_queries = require_field(j, "n_queries").get<long>();
  report.seed = require_field(j, "seed").get<std::uint64_t>();
  return report;
}

std::string samples_csv(const SampleSet& samples) {
  std::string csv = "t,b,prob,rescale\n";
  for (std::size_t i = 0; i < samples.points.size(); ++i) {
    csv += format_double(samples.points[i]);
    csv += ',';
    csv += format_double(i < samples.values.size() ? samples.values[i] : 0.0);
    csv += ',';
    csv += format_double(i < samples.probs.size() ? samples.probs[i] : 1.0);
    csv += ',';
    csv += format_double(i < samples.rescales.size() ? samples.rescales[i] : 1.0);
    csv += '\n';
  }
  return csv;
}

void write_fit_report(const std::filesystem::path& dir,
                      const FitReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + dir.string() + ": " +
                  ec.message());
  }
  write_text_atomic(dir / "fit.json", fit_report_json(report).dump(2) + "\n");
  write_text_atomic(dir / "samples.csv", samples_csv(report.samples));
}

FitReport load_fit_report(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) {
    throw IoError("cannot open " + json_path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + json_path.string() + ": " + e.what());
  }
  return fit_report_from_json(j);
}

nlohmann::json ratio_report_json(const RatioReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["d"] = report.d;
  j["p"] = report.p;
  j["clip_constant"] = report.clip_constant;
  j["max_ratio"] = report.max_ratio;
  j["min_ratio"] = report.min_ratio;
  j["min_ratio_times_log3d"] = report.min_ratio_times_log3d;
  j["mid_min_ratio"] = report.mid_min_ratio;
  j["mid_max_ratio"] = report.mid_max_ratio;
  j["core_min_ratio"] = report.core_min_ratio;
  j["core_max_ratio"] = report.core_max_ratio;
  j["grid_points"] = report.grid.size();
  return j;
}

nlohmann::json decay_report_json(const DecayReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["d"] = report.d;
  j["p"] = report.p;
  j["ts"] = report.ts;
  j["ratios"] = report.ratios;
  j["strictly_decreasing"] = report.strictly_decreasing;
  return j;
}

nlohmann::json adversary_report_json(const AdversaryReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["p"] = report.p;
  j["eps"] = report.eps;
  j["n_queries"] = report.n_queries;
  j["n_fit"] = report.n_fit;
  j["trials"] = report.trials;
  j["seed"] = report.seed;
  j["interval_width"] = report.interval_width;
  j["interval_mass"] = report.interval_mass;
  j["amplitude"] = report.amplitude;
  j["failure_threshold"] = report.failure_threshold;
  j["witness_ratio"] = report.witness_ratio;
  j["criterion_sound"] = report.criterion_sound;
  j["miss_count"] = report.miss_count;
  j["fail_count"] = report.fail_count;
  j["fail_among_miss"] = report.fail_among_miss;
  j["miss_fraction"] = report.miss_fraction;
  j["fail_rate_among_missed"] = report.fail_rate_among_missed;
  j["overall_fail_rate"] = report.overall_fail_rate;
  return j;
}

nlohmann::json runge_report_json(const RungeReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["d"] = report.d;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["interpolation_regime"] = report.interpolation_regime;
  j["uniform_error"] = report.uniform_error;
  j["chebyshev_error"] = report.chebyshev_error;
  j["ratio"] = report.ratio;
  return j;
}

nlohmann::json sensitivity_report_json(const SensitivityReport& report) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["d"] = report.d;
  j["p"] = report.p;
  j["grid_size"] = report.grid_size;
  j["global_bound"] = report.global_bound;
  j["max_over_bound"] = report.max_over_bound;
  j["min_psi"] = report.min_psi;
  j["kappa"] = report.kappa;
  j["all_within_global"] = report.all_within_global;
  return j;
}

}  // namespace report_io
}  // namespace chebfit
