#include "sobogeo/circle_diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sobogeo/errors.hpp"
#include "sobogeo/fourier.hpp"

namespace sobogeo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int auto_grid(int band, int at_least) {
    const int native = 2 * (band + 1);
    return static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(std::max(native, at_least))));
}
}  // namespace

std::vector<double> grid_points(int n) {
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) pts[j] = kTwoPi * j / n;
    return pts;
}

CircleDiffeo::CircleDiffeo(PeriodicField displacement) : f_(std::move(displacement)) {
    if (f_.dim() != 1) {
        throw InvalidDiffeoError("displacement must be a scalar field, got d=" +
                                 std::to_string(f_.dim()));
    }
}

CircleDiffeo CircleDiffeo::identity() { return CircleDiffeo(PeriodicField(1, 0)); }

CircleDiffeo CircleDiffeo::rotation(double alpha) {
    const double v[1] = {alpha};
    return CircleDiffeo(PeriodicField::constant(v));
}

std::vector<double> CircleDiffeo::grid_values(int grid) const {
    std::vector<double> vals = synthesize_grid(f_, grid);
    for (int j = 0; j < grid; ++j) vals[j] += kTwoPi * j / grid;
    return vals;
}

bool CircleDiffeo::is_orientation_preserving() const {
    const int n = std::max(16, f_.grid_size());
    const std::vector<double> df = synthesize_grid(derivative(f_, 1), n);
    return std::all_of(df.begin(), df.end(), [](double v) { return 1.0 + v > 0.0; });
}

void CircleDiffeo::validate() const {
    if (!is_orientation_preserving()) {
        throw InvalidDiffeoError("1 + f'(theta) <= 0 at a grid point; not orientation-preserving");
    }
}

PeriodicField compose_field(const PeriodicField& u, const CircleDiffeo& phi) {
    phi.validate();
    const int n = u.grid_size();
    const std::vector<double> points = phi.grid_values(n);
    const std::vector<double> values = synthesize(u, points);
    return analyze(values, u.dim());
}

CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi, int grid) {
    phi.validate();
    psi.validate();
    const int n = grid > 0 ? grid : auto_grid(std::max(phi.band(), psi.band()), 128);
    const std::vector<double> psi_vals = psi.grid_values(n);
    const std::vector<double> f_phi_at_psi = synthesize(phi.displacement(), psi_vals);
    const std::vector<double> f_psi = synthesize_grid(psi.displacement(), n);
    std::vector<double> disp(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) disp[j] = f_psi[j] + f_phi_at_psi[j];
    CircleDiffeo out{analyze(disp, 1)};
    if (!out.is_orientation_preserving()) {
        throw InvalidDiffeoError("composition left the monotone regime (resolution loss)");
    }
    return out;
}

CircleDiffeo invert(const CircleDiffeo& phi, int grid) {
    phi.validate();
    const int n = grid > 0 ? grid : auto_grid(phi.band(), 128);
    const PeriodicField& f = phi.displacement();
    const PeriodicField df = derivative(f, 1);
    constexpr int kMaxNewton = 50;
    constexpr double kTol = 1e-12;
    std::vector<double> disp(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double y = kTwoPi * j / n;
        // Solve theta + f(theta) = y.
        double theta = y - synthesize(f, std::span<const double>(&y, 1))[0];
        bool done = false;
        for (int it = 0; it < kMaxNewton; ++it) {
            const double fv = synthesize(f, std::span<const double>(&theta, 1))[0];
            const double r = theta + fv - y;
            if (std::abs(r) <= kTol) {
                done = true;
                break;
            }
            const double slope = 1.0 + synthesize(df, std::span<const double>(&theta, 1))[0];
            theta -= r / slope;
        }
        if (!done) {
            throw NearDegenerateDiffeoError("inverse Newton did not converge at grid point " +
                                            std::to_string(j));
        }
        disp[j] = theta - y;
    }
    return CircleDiffeo{analyze(disp, 1)};
}

CircleDiffeo flow_one_parameter(const PeriodicField& X, double t, int steps, int grid) {
    if (X.dim() != 1) throw InvalidArgumentError("flow: vector field must be scalar (d=1)");
    if (steps < 1) throw InvalidArgumentError("flow: steps must be >= 1");
    const int n = grid > 0 ? grid : auto_grid(4 * X.band() + 3, 128);
    std::vector<double> psi(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) psi[j] = kTwoPi * j / n;
    const double h = t / steps;

    auto eval = [&X](const std::vector<double>& pts) { return synthesize(X, pts); };

    std::vector<double> k1, k2, k3, k4, tmp(psi.size());
    for (int s = 0; s < steps; ++s) {
        k1 = eval(psi);
        for (std::size_t j = 0; j < psi.size(); ++j) tmp[j] = psi[j] + 0.5 * h * k1[j];
        k2 = eval(tmp);
        for (std::size_t j = 0; j < psi.size(); ++j) tmp[j] = psi[j] + 0.5 * h * k2[j];
        k3 = eval(tmp);
        for (std::size_t j = 0; j < psi.size(); ++j) tmp[j] = psi[j] + h * k3[j];
        k4 = eval(tmp);
        for (std::size_t j = 0; j < psi.size(); ++j) {
            psi[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        // Monotone-regime proxy: flow lines of a continuous field cannot
        // cross, so neighbouring grid trajectories must stay ordered.
        for (int j = 0; j < n; ++j) {
            const double gap = psi[(j + 1) % n] - psi[j] + (j + 1 == n ? kTwoPi : 0.0);
            if (!(gap > 0.0)) {
                throw FlowDegenerateError("flow left the monotone regime at t=" +
                                              std::to_string((s + 1) * h),
                                          (s + 1) * h);
            }
        }
    }
    std::vector<double> disp(psi.size());
    for (int j = 0; j < n; ++j) disp[j] = psi[j] - kTwoPi * j / n;
    CircleDiffeo out{analyze(disp, 1)};
    out.validate();
    return out;
}

}  // namespace sobogeo
