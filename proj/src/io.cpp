#include "sobogeo/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "sobogeo/errors.hpp"

namespace sobogeo::io {

namespace {

void append_csv_value(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

json field_to_json(const PeriodicField& u) {
    const int n = u.grid_size();
    const std::vector<double> vals = synthesize_grid(u, n);
    json samples = json::array();
    for (int j = 0; j < n; ++j) {
        json row = json::array();
        for (int c = 0; c < u.dim(); ++c) row.push_back(vals[j * u.dim() + c]);
        samples.push_back(std::move(row));
    }
    return json{{"d", u.dim()}, {"n_samples", n}, {"samples", std::move(samples)}};
}

json field_to_json_coeffs(const PeriodicField& u) {
    json re = json::array(), im = json::array();
    for (int k = 0; k <= u.band(); ++k) {
        json row_re = json::array(), row_im = json::array();
        for (int c = 0; c < u.dim(); ++c) {
            row_re.push_back(u.coeff(k, c).real());
            row_im.push_back(u.coeff(k, c).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"d", u.dim()}, {"K", u.band()}, {"coeffs_re", std::move(re)},
                {"coeffs_im", std::move(im)}};
}

PeriodicField field_from_json(const json& j) {
    if (!j.is_object()) throw IoError("field: expected a JSON object");
    const int d = j.value("d", 0);
    if (d < 1) throw IoError("field: missing or invalid dimension d");
    if (j.contains("samples")) {
        const auto& rows = j.at("samples");
        std::vector<double> flat;
        flat.reserve(rows.size() * d);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != d) {
                throw IoError("field: sample row width does not match d");
            }
            for (const auto& v : row) flat.push_back(v.get<double>());
        }
        if (j.contains("n_samples") &&
            j.at("n_samples").get<std::size_t>() != rows.size()) {
            throw IoError("field: n_samples does not match the sample count");
        }
        return analyze(flat, d);
    }
    if (j.contains("coeffs_re") && j.contains("coeffs_im")) {
        const int K = j.value("K", -1);
        if (K < 0) throw IoError("field: missing band K for coefficient form");
        const auto& re = j.at("coeffs_re");
        const auto& im = j.at("coeffs_im");
        if (static_cast<int>(re.size()) != K + 1 || static_cast<int>(im.size()) != K + 1) {
            throw IoError("field: coefficient arrays must have K+1 rows");
        }
        PeriodicField u(d, K);
        auto entry = [d](const json& row, int c) -> double {
            if (row.is_number()) {
                if (d != 1) throw IoError("field: scalar coefficient rows need d=1");
                return row.get<double>();
            }
            if (static_cast<int>(row.size()) != d) {
                throw IoError("field: coefficient row width does not match d");
            }
            return row[c].get<double>();
        };
        for (int k = 0; k <= K; ++k) {
            for (int c = 0; c < d; ++c) {
                u.set_coeff(k, c, cdouble(entry(re[k], c), entry(im[k], c)));
            }
        }
        return u;
    }
    throw IoError("field: need either samples or coeffs_re/coeffs_im");
}

json diffeo_to_json(const CircleDiffeo& phi) {
    return json{{"displacement", field_to_json(phi.displacement())}};
}

CircleDiffeo diffeo_from_json(const json& j) {
    if (!j.is_object() || !j.contains("displacement")) {
        throw IoError("diffeo: expected an object with a displacement field");
    }
    return CircleDiffeo(field_from_json(j.at("displacement")));
}

json metric_to_json(const MetricCoefficients& m) {
    return json{{"n", m.n}, {"a", m.a}};
}

MetricCoefficients metric_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("a")) {
        throw IoError("metric: expected {\"n\": int, \"a\": [...]}");
    }
    return MetricCoefficients(j.at("n").get<int>(), j.at("a").get<std::vector<double>>());
}

json symbol_to_json(const MultiplierSymbol& a) {
    switch (a.kind()) {
        case MultiplierSymbol::Kind::bessel_power:
            return json{{"variant", "bessel_power"}, {"q", a.parameter()}};
        case MultiplierSymbol::Kind::inertia_sum:
            return json{{"variant", "inertia_sum"}, {"n", static_cast<int>(a.parameter())}};
        case MultiplierSymbol::Kind::inertia_power:
            return json{{"variant", "inertia_power"}, {"n", static_cast<int>(a.parameter())}};
        case MultiplierSymbol::Kind::custom:
            return json{{"variant", "custom"}, {"table", a.table()}};
    }
    throw IoError("symbol: unknown kind");
}

MultiplierSymbol symbol_from_json(const json& j) {
    if (!j.is_object() || !j.contains("variant")) {
        throw IoError("symbol: expected an object with a variant tag");
    }
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "bessel_power") return MultiplierSymbol::bessel_power(j.at("q").get<double>());
    if (variant == "inertia_sum") return MultiplierSymbol::inertia_sum(j.at("n").get<int>());
    if (variant == "inertia_power") return MultiplierSymbol::inertia_power(j.at("n").get<int>());
    if (variant == "custom") {
        return MultiplierSymbol::custom(j.at("table").get<std::vector<double>>());
    }
    throw IoError("symbol: unknown variant '" + variant + "'");
}

json shooting_report_to_json(const ShootingReport& report) {
    json j{{"u", field_to_json(report.u)},
           {"residual_norm", report.residual_norm},
           {"iterations", report.iterations},
           {"converged", report.converged}};
    if (std::isnan(report.sigma_min)) {
        j["sigma_min"] = nullptr;
    } else {
        j["sigma_min"] = report.sigma_min;
    }
    return j;
}

std::string geodesic_path_csv(const GeodesicPath& path) {
    std::string out = "t,energy";
    for (int i = 0; i < path.states.cols(); ++i) out += ",c" + std::to_string(i);
    out += "\n";
    for (std::size_t r = 0; r < path.times.size(); ++r) {
        append_csv_value(out, path.times[r]);
        out += ",";
        append_csv_value(out, path.energy_trace[r]);
        for (int i = 0; i < path.states.cols(); ++i) {
            out += ",";
            append_csv_value(out, path.states(static_cast<Eigen::Index>(r), i));
        }
        out += "\n";
    }
    return out;
}

std::string group_geodesic_csv(const GroupGeodesic& g) {
    const double residual = momentum_conservation_residual(g);
    const int K = g.velocities.empty() ? 0 : g.velocities.front().band();
    std::string out = "t,energy,momentum_residual";
    for (int k = 0; k <= K; ++k) {
        out += ",u_re" + std::to_string(k) + ",u_im" + std::to_string(k);
    }
    out += "\n";
    for (std::size_t r = 0; r < g.times.size(); ++r) {
        append_csv_value(out, g.times[r]);
        out += ",";
        append_csv_value(out, g.energy_trace[r]);
        out += ",";
        append_csv_value(out, residual);
        for (int k = 0; k <= K; ++k) {
            const cdouble c = g.velocities[r].coeff(k, 0);
            out += ",";
            append_csv_value(out, c.real());
            out += ",";
            append_csv_value(out, c.imag());
        }
        out += "\n";
    }
    return out;
}

json regularity_report(const PeriodicField& u, int k_min, double q_max,
                       std::optional<std::pair<double, double>> endpoint_exponents) {
    const double exponent = decay_exponent(u, k_min);
    json ladder = json::array();
    json ratios = json::array();
    double prev = 0.0;
    for (double q = 0.0; q <= q_max + 1e-12; q += 0.5) {
        const double norm = sobolev_norm(u, q);
        ladder.push_back(json{{"q", q}, {"norm", norm}});
        if (q > 0.0) ratios.push_back(prev > 0.0 ? norm / prev : 0.0);
        prev = norm;
    }
    json out{{"norm_ladder", std::move(ladder)}, {"growth_ratios", std::move(ratios)}};
    if (std::isinf(exponent)) {
        out["decay_exponent"] = "inf";
    } else {
        out["decay_exponent"] = exponent;
    }
    std::string verdict = "preserved";
    if (endpoint_exponents) {
        const double floor = std::min(endpoint_exponents->first, endpoint_exponents->second) - 0.3;
        out["endpoint_exponents"] = json::array();
        for (double e : {endpoint_exponents->first, endpoint_exponents->second}) {
            if (std::isinf(e)) {
                out["endpoint_exponents"].push_back("inf");
            } else {
                out["endpoint_exponents"].push_back(e);
            }
        }
        if (!(exponent >= floor)) verdict = "degraded";
    }
    out["verdict"] = verdict;
    return out;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("cannot parse " + path.string() + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed for " + path.string());
}

void save_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace sobogeo::io
