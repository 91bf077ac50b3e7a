#include "sobogeo/periodic_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sobogeo/errors.hpp"
#include "sobogeo/fourier.hpp"

namespace sobogeo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_same_dim(const PeriodicField& a, const PeriodicField& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatchError(std::string(op) + ": field dimensions " +
                                     std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

void check_finite_index(double q) {
    if (!std::isfinite(q)) throw InvalidArgumentError("Sobolev index must be finite");
}
}  // namespace

PeriodicField::PeriodicField(int d, int band) : d_(d), band_(band) {
    if (d < 1) throw InvalidArgumentError("field dimension must be >= 1");
    if (band < 0) throw InvalidArgumentError("band limit must be >= 0");
    coeffs_.assign(static_cast<std::size_t>(band + 1) * d, cdouble(0.0, 0.0));
}

cdouble PeriodicField::coeff(int k, int component) const {
    const int a = std::abs(k);
    if (a > band_) return {0.0, 0.0};
    const cdouble c = coeffs_[static_cast<std::size_t>(a) * d_ + component];
    return k >= 0 ? c : std::conj(c);
}

void PeriodicField::set_coeff(int k, int component, cdouble value) {
    if (k < 0 || k > band_) throw InvalidArgumentError("set_coeff: mode out of range");
    if (component < 0 || component >= d_) throw InvalidArgumentError("set_coeff: bad component");
    if (k == 0) value = cdouble(value.real(), 0.0);  // real field: k=0 mode is real
    coeffs_[static_cast<std::size_t>(k) * d_ + component] = value;
}

PeriodicField PeriodicField::with_band(int new_band) const {
    PeriodicField out(d_, new_band);
    const int kmax = std::min(band_, new_band);
    std::copy_n(coeffs_.begin(), static_cast<std::size_t>(kmax + 1) * d_, out.coeffs_.begin());
    return out;
}

double PeriodicField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

PeriodicField PeriodicField::constant(std::span<const double> value) {
    PeriodicField out(static_cast<int>(value.size()), 0);
    for (std::size_t a = 0; a < value.size(); ++a) out.coeffs_[a] = cdouble(value[a], 0.0);
    return out;
}

PeriodicField PeriodicField::harmonic_cos(int d, int band, int k, int component, double amplitude) {
    PeriodicField out(d, band);
    if (k == 0) {
        out.set_coeff(0, component, cdouble(amplitude, 0.0));
    } else {
        out.set_coeff(k, component, cdouble(0.5 * amplitude, 0.0));
    }
    return out;
}

PeriodicField PeriodicField::harmonic_sin(int d, int band, int k, int component, double amplitude) {
    PeriodicField out(d, band);
    if (k == 0) return out;
    out.set_coeff(k, component, cdouble(0.0, -0.5 * amplitude));
    return out;
}

PeriodicField add(const PeriodicField& a, const PeriodicField& b) {
    check_same_dim(a, b, "add");
    PeriodicField out = a.band() >= b.band() ? a : a.with_band(b.band());
    for (int k = 0; k <= b.band(); ++k)
        for (int c = 0; c < a.dim(); ++c)
            out.set_coeff(k, c, out.coeff(k, c) + b.coeff(k, c));
    return out;
}

PeriodicField sub(const PeriodicField& a, const PeriodicField& b) {
    return add(a, scale(b, -1.0));
}

PeriodicField scale(const PeriodicField& a, double s) {
    PeriodicField out = a;
    for (auto& c : out.raw()) c *= s;
    return out;
}

PeriodicField analyze(std::span<const double> samples, int d) {
    if (d < 1) throw InvalidArgumentError("analyze: dimension must be >= 1");
    if (samples.size() % d != 0) {
        throw InvalidGridError("analyze: sample buffer size not a multiple of d");
    }
    const std::size_t n = samples.size() / d;
    if (n < 2 || n % 2 != 0) {
        throw InvalidGridError("analyze: need an even number of samples, N >= 2, got " +
                               std::to_string(n));
    }
    const int band = static_cast<int>(n) / 2 - 1;  // Nyquist mode dropped
    PeriodicField out(d, band);
    std::vector<cdouble> buf(n);
    for (int c = 0; c < d; ++c) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = cdouble(samples[j * d + c], 0.0);
        fft::forward(buf);
        const double inv_n = 1.0 / static_cast<double>(n);
        out.set_coeff(0, c, cdouble(buf[0].real() * inv_n, 0.0));
        for (int k = 1; k <= band; ++k) out.set_coeff(k, c, buf[k] * inv_n);
    }
    return out;
}

std::vector<double> synthesize(const PeriodicField& u, std::span<const double> points) {
    const int d = u.dim();
    const int band = u.band();
    std::vector<double> out(points.size() * d, 0.0);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const double theta = points[p];
        const cdouble rot(std::cos(theta), std::sin(theta));  // e^{i theta}
        cdouble phase(1.0, 0.0);
        for (int c = 0; c < d; ++c) out[p * d + c] = u.coeff(0, c).real();
        for (int k = 1; k <= band; ++k) {
            phase *= rot;  // e^{i k theta}
            for (int c = 0; c < d; ++c) {
                out[p * d + c] += 2.0 * (u.coeff(k, c) * phase).real();
            }
        }
    }
    return out;
}

std::vector<double> synthesize_grid(const PeriodicField& u, int grid_points) {
    const int d = u.dim();
    const int band = u.band();
    if (grid_points < 1) throw InvalidGridError("synthesize_grid: need at least one point");
    const std::size_t n = static_cast<std::size_t>(grid_points);
    if (n >= static_cast<std::size_t>(2 * band + 2) && fft::is_power_of_two(n)) {
        std::vector<double> out(n * d);
        std::vector<cdouble> buf(n);
        for (int c = 0; c < d; ++c) {
            std::fill(buf.begin(), buf.end(), cdouble(0.0, 0.0));
            buf[0] = u.coeff(0, c);
            for (int k = 1; k <= band; ++k) {
                buf[k] = u.coeff(k, c);
                buf[n - k] = std::conj(buf[k]);
            }
            fft::inverse(buf);
            for (std::size_t j = 0; j < n; ++j) out[j * d + c] = buf[j].real();
        }
        return out;
    }
    std::vector<double> pts(n);
    for (std::size_t j = 0; j < n; ++j) pts[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    return synthesize(u, pts);
}

PeriodicField derivative(const PeriodicField& u, int order) {
    if (order < 0) throw InvalidArgumentError("derivative: order must be >= 0");
    if (order == 0) return u;
    PeriodicField out(u.dim(), u.band());
    for (int k = 1; k <= u.band(); ++k) {
        // (ik)^order
        cdouble factor(1.0, 0.0);
        const cdouble ik(0.0, static_cast<double>(k));
        for (int j = 0; j < order; ++j) factor *= ik;
        for (int c = 0; c < u.dim(); ++c) out.set_coeff(k, c, factor * u.coeff(k, c));
    }
    return out;
}

double sobolev_inner(const PeriodicField& u, const PeriodicField& v, double q) {
    check_same_dim(u, v, "sobolev_inner");
    check_finite_index(q);
    const int band = std::min(u.band(), v.band());
    double acc = 0.0;
    for (int c = 0; c < u.dim(); ++c) acc += u.coeff(0, c).real() * v.coeff(0, c).real();
    for (int k = 1; k <= band; ++k) {
        const double w = std::pow(1.0 + static_cast<double>(k) * k, q);
        double term = 0.0;
        for (int c = 0; c < u.dim(); ++c) {
            term += (u.coeff(k, c) * std::conj(v.coeff(k, c))).real();
        }
        acc += 2.0 * w * term;  // +k and -k modes
    }
    return kTwoPi * acc;
}

double sobolev_norm(const PeriodicField& u, double q) {
    return std::sqrt(std::max(0.0, sobolev_inner(u, u, q)));
}

MultiplierSymbol MultiplierSymbol::bessel_power(double q) {
    if (!std::isfinite(q)) throw InvalidSymbolError("bessel_power: exponent must be finite");
    return {Kind::bessel_power, q, {}};
}

MultiplierSymbol MultiplierSymbol::inertia_sum(int n) {
    if (n < 0) throw InvalidSymbolError("inertia_sum: order must be >= 0");
    return {Kind::inertia_sum, static_cast<double>(n), {}};
}

MultiplierSymbol MultiplierSymbol::inertia_power(int n) {
    if (n < 0) throw InvalidSymbolError("inertia_power: order must be >= 0");
    return {Kind::inertia_power, static_cast<double>(n), {}};
}

MultiplierSymbol MultiplierSymbol::custom(std::vector<double> table) {
    if (table.empty()) throw InvalidSymbolError("custom symbol: empty table");
    for (double a : table) {
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw InvalidSymbolError("custom symbol: entries must be positive and finite");
        }
    }
    return {Kind::custom, 0.0, std::move(table)};
}

double MultiplierSymbol::value(int k) const {
    const int a = std::abs(k);
    const double k2 = static_cast<double>(a) * a;
    switch (kind_) {
        case Kind::bessel_power:
            return std::pow(1.0 + k2, param_);
        case Kind::inertia_sum:
            return 1.0 + std::pow(static_cast<double>(a), 2.0 * param_);
        case Kind::inertia_power:
            return std::pow(1.0 + k2, param_);
        case Kind::custom:
            if (a >= static_cast<int>(table_.size())) {
                throw InvalidSymbolError("custom symbol: table does not cover mode k=" +
                                         std::to_string(a));
            }
            return table_[a];
    }
    throw InvalidSymbolError("unknown symbol kind");
}

PeriodicField apply_multiplier(const PeriodicField& u, const MultiplierSymbol& a, bool inverse) {
    PeriodicField out(u.dim(), u.band());
    for (int k = 0; k <= u.band(); ++k) {
        const double v = a.value(k);
        const double f = inverse ? 1.0 / v : v;
        for (int c = 0; c < u.dim(); ++c) out.set_coeff(k, c, f * u.coeff(k, c));
    }
    return out;
}

double decay_exponent(const PeriodicField& u, int k_min) {
    if (k_min < 4) throw InvalidArgumentError("decay_exponent: requires k_min >= 4");
    if (u.band() < 2 * k_min) {
        throw InvalidArgumentError("decay_exponent: requires band K >= 2*k_min");
    }
    constexpr double kFloor = 1e-300;
    // Dyadic bins [k_min, 2 k_min), [2 k_min, 4 k_min), ...; bin maxima are
    // robust against oscillatory zero crossings of individual coefficients.
    std::vector<double> log_k, log_amp;
    int lo = k_min;
    while (lo <= u.band()) {
        const int hi = std::min(u.band(), 2 * lo - 1);
        double best = 0.0;
        int best_k = lo;
        for (int k = lo; k <= hi; ++k) {
            double amp2 = 0.0;
            for (int c = 0; c < u.dim(); ++c) amp2 += std::norm(u.coeff(k, c));
            const double amp = std::sqrt(amp2);
            if (amp > best) {
                best = amp;
                best_k = k;
            }
        }
        if (best > kFloor) {
            log_k.push_back(std::log(static_cast<double>(best_k)));
            log_amp.push_back(std::log(best));
        }
        lo = 2 * lo;
    }
    if (log_k.size() < 2) return std::numeric_limits<double>::infinity();
    // Least-squares slope of log|u_hat| vs log k; s = -slope.
    const auto n = static_cast<double>(log_k.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_k.size(); ++i) {
        sx += log_k[i];
        sy += log_amp[i];
        sxx += log_k[i] * log_k[i];
        sxy += log_k[i] * log_amp[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    const double slope = (n * sxy - sx * sy) / denom;
    return -slope;
}

}  // namespace sobogeo
