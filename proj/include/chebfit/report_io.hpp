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

#ifndef CHEBFIT_REPORT_IO_HPP_
#define CHEBFIT_REPORT_IO_HPP_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "chebfit/active.hpp"
#include "chebfit/basis.hpp"
#include "chebfit/measures.hpp"
#include "chebfit/verify.hpp"

namespace chebfit {
namespace report_io {

/// Current on-disk schema version, stamped into every JSON document.
inline constexpr int kFormatVersion = 1;

/// Decimal form with 17 significant digits, enough to reproduce the exact
/// double on parse.
std::string format_double(double v);

/// Writes `text` to `path` by writing a sibling temporary file and
/// renaming it into place, so a crash never leaves a partial file.
/// Throws IoError on any filesystem failure.
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& text);

/// Polynomial as {"degree", "basis", "alpha"?, "coeffs"}.
nlohmann::json poly_json(const PolyCoeffs& poly);
PolyCoeffs poly_from_json(const nlohmann::json& j);

/// Fit metadata and coefficients (both bases when available). Sample rows
/// live in the samples CSV, not here. Infinite p is encoded as the string
/// "inf".
nlohmann::json fit_report_json(const FitReport& report);

/// Inverse of fit_report_json for the fields it carries; `samples` and
/// `stage_results` come back empty. Throws IoError on malformed documents.
FitReport fit_report_from_json(const nlohmann::json& j);

/// CSV with header "t,b,prob,rescale", one row per sample.
std::string samples_csv(const SampleSet& samples);

/// Writes fit.json and samples.csv under `dir`.
void write_fit_report(const std::filesystem::path& dir,
                      const FitReport& report);

/// Reads a fit.json previously written by write_fit_report.
FitReport load_fit_report(const std::filesystem::path& json_path);

nlohmann::json ratio_report_json(const RatioReport& report);
nlohmann::json decay_report_json(const DecayReport& report);
nlohmann::json adversary_report_json(const AdversaryReport& report);
nlohmann::json runge_report_json(const RungeReport& report);
nlohmann::json sensitivity_report_json(const SensitivityReport& report);

}  // namespace report_io
}  // namespace chebfit

#endif  // CHEBFIT_REPORT_IO_HPP_
