#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "sobogeo/circle_diffeo.hpp"
#include "sobogeo/curve.hpp"
#include "sobogeo/curve_geodesics.hpp"
#include "sobogeo/epdiff.hpp"
#include "sobogeo/periodic_field.hpp"

namespace sobogeo::io {

using nlohmann::json;

// Field files: {"d", "n_samples", "samples": [[...]; n]} sampled at
// theta_j = 2 pi j / N, or {"d", "K", "coeffs_re", "coeffs_im"} for modes
// k = 0..K (negative modes implied by symmetry). Readers accept either;
// writers emit the sample form by default.
json field_to_json(const PeriodicField& u);
json field_to_json_coeffs(const PeriodicField& u);
PeriodicField field_from_json(const json& j);

// Diffeo files: the d=1 field format under the key "displacement".
json diffeo_to_json(const CircleDiffeo& phi);
CircleDiffeo diffeo_from_json(const json& j);

// Metric coefficients {"n": int, "a": [f64; n+1]}.
json metric_to_json(const MetricCoefficients& m);
MetricCoefficients metric_from_json(const json& j);

// Multiplier symbols {"variant": "...", "q"/"n"/"table": ...}.
json symbol_to_json(const MultiplierSymbol& a);
MultiplierSymbol symbol_from_json(const json& j);

json shooting_report_to_json(const ShootingReport& report);

// CSV export: t, energy, then the state coefficients per row.
std::string geodesic_path_csv(const GeodesicPath& path);
// CSV export: t, energy, momentum_residual, then velocity coefficients.
std::string group_geodesic_csv(const GroupGeodesic& g);

// Spectral regularity report: decay exponent, H^q norm ladder for
// q = 0, 0.5, ..., q_max, and growth ratios. When endpoint exponents are
// supplied (boundary value problem outputs) the verdict is "preserved" iff
// exponent >= min(endpoint exponents) - 0.3; plain fields are vacuously
// "preserved".
json regularity_report(const PeriodicField& u, int k_min, double q_max = 3.0,
                       std::optional<std::pair<double, double>> endpoint_exponents = {});

json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& j);
void save_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sobogeo::io
