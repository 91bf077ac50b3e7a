#include "sobogeo/curve_geodesics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sobogeo/errors.hpp"
#include "sobogeo/fourier.hpp"
#include "sobogeo/parallel.hpp"

namespace sobogeo {

namespace {

int resolve_grid(const GeodesicOptions& opts, const Curve& c0) {
    if (opts.grid > 0) return opts.grid;
    const int need = std::max({c0.field().grid_size(), 2 * (opts.K_b + 1), 32});
    return static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(need)));
}

double resolve_fd_step(const GeodesicOptions& opts, const Eigen::VectorXd& x) {
    if (opts.gradient == GradientMethod::adjoint_exact) return -1.0;
    return opts.fd_step_metric * (1.0 + x.cwiseAbs().maxCoeff());
}

// p0 = G(c0) u in the packed basis (block solve with the scalar Gram).
Eigen::VectorXd momentum_from_velocity(MetricWorkspace& ws, const Eigen::VectorXd& x0,
                                       const Eigen::VectorXd& u) {
    std::vector<double> speed;
    ws.speed_from_state(x0, speed);
    if (!(ws.last_speed_min() > 1e-10 * (1.0 + ws.last_speed_max()))) {
        throw DegenerateCurveError("initial curve violates the immersion bound");
    }
    const Eigen::MatrixXd S = ws.gram(speed);
    const int B = ws.basis().block();
    Eigen::VectorXd p(u.size());
    for (int alpha = 0; alpha < ws.basis().d; ++alpha) {
        p.segment(alpha * B, B).noalias() = S * u.segment(alpha * B, B);
    }
    return p;
}

}  // namespace

double GeodesicPath::energy_drift() const {
    if (energy_trace.empty()) return 0.0;
    const double e0 = energy_trace.front();
    double worst = 0.0;
    for (double e : energy_trace) worst = std::max(worst, std::abs(e - e0));
    return worst / std::max(std::abs(e0), 1e-300);
}

Curve GeodesicPath::curve_at(int sample) const {
    return Curve(field_from_coeffs(states.row(sample), basis.d, basis.K_b));
}

Curve GeodesicPath::endpoint() const {
    return curve_at(static_cast<int>(times.size()) - 1);
}

double hamiltonian(const BasisSpec& basis, const Eigen::VectorXd& c_coeffs,
                   const Eigen::VectorXd& p_coeffs, const MetricCoefficients& m) {
    MetricWorkspace ws(basis, m);
    Eigen::VectorXd v;
    return ws.hamiltonian(c_coeffs, p_coeffs, v);
}

GeodesicPath integrate_geodesic(const BasisSpec& basis, const Eigen::VectorXd& c0,
                                const Eigen::VectorXd& p0, const MetricCoefficients& m,
                                const GeodesicOptions& opts) {
    if (opts.steps < 16) throw InvalidArgumentError("geodesic integration needs steps >= 16");
    const int store_every = std::max(1, opts.store_every);
    MetricWorkspace ws(basis, m);

    const int D = basis.state_dim();
    Eigen::VectorXd x = c0, p = p0;
    Eigen::VectorXd v(D);

    double current_energy = 0.0;
    auto rhs = [&](const Eigen::VectorXd& xs, const Eigen::VectorXd& ps, Eigen::VectorXd& dx,
                   Eigen::VectorXd& dp, double time) {
        try {
            current_energy = ws.hamiltonian(xs, ps, v);
            dx = v;
            dp = ws.force(xs, v, resolve_fd_step(opts, xs));
        } catch (const DegenerateCurveError& e) {
            throw GeodesicLeftChartError(std::string("geodesic left the immersion chart: ") +
                                             e.what(),
                                         time);
        }
    };

    const int samples = opts.steps / store_every + 2;
    GeodesicPath path;
    path.basis = basis;
    path.times.reserve(samples);
    path.states.resize(samples, D);
    path.momenta.resize(samples, D);
    path.energy_trace.reserve(samples);

    const double h = 1.0 / opts.steps;
    Eigen::VectorXd k1x(D), k1p(D), k2x(D), k2p(D), k3x(D), k3p(D), k4x(D), k4p(D);
    int row = 0;
    auto record = [&](double t, double energy) {
        path.times.push_back(t);
        path.states.row(row) = x;
        path.momenta.row(row) = p;
        path.energy_trace.push_back(energy);
        ++row;
    };

    for (int s = 0; s < opts.steps; ++s) {
        const double t = s * h;
        rhs(x, p, k1x, k1p, t);
        if (s % store_every == 0) record(t, current_energy);
        rhs(x + 0.5 * h * k1x, p + 0.5 * h * k1p, k2x, k2p, t + 0.5 * h);
        rhs(x + 0.5 * h * k2x, p + 0.5 * h * k2p, k3x, k3p, t + 0.5 * h);
        rhs(x + h * k3x, p + h * k3p, k4x, k4p, t + h);
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    }
    // Final sample, with one extra Hamiltonian evaluation for the trace.
    try {
        current_energy = ws.hamiltonian(x, p, v);
    } catch (const DegenerateCurveError& e) {
        throw GeodesicLeftChartError(std::string("geodesic left the immersion chart: ") + e.what(),
                                     1.0);
    }
    record(1.0, current_energy);
    path.states.conservativeResize(row, D);
    path.momenta.conservativeResize(row, D);

    const double drift = path.energy_drift();
    if (drift > opts.energy_gate) {
        throw IntegratorAccuracyError("geodesic energy drift " + std::to_string(drift) +
                                      " exceeds the acceptance gate");
    }
    return path;
}

GeodesicPath exp_curve(const Curve& c0, const CurveTangent& u, const MetricCoefficients& m,
                       const GeodesicOptions& opts) {
    if (u.dim() != c0.dim()) {
        throw DimensionMismatchError("exp_curve: velocity dimension does not match the curve");
    }
    BasisSpec basis{c0.dim(), opts.K_b, resolve_grid(opts, c0)};
    const Eigen::VectorXd x0 = coeffs_from_field(c0.field(), opts.K_b);
    const Eigen::VectorXd u0 = coeffs_from_field(u, opts.K_b);
    MetricWorkspace ws(basis, m);
    const Eigen::VectorXd p0 = momentum_from_velocity(ws, x0, u0);
    return integrate_geodesic(basis, x0, p0, m, opts);
}

Eigen::MatrixXd dexp_jacobian(const Curve& c0, const CurveTangent& u, const MetricCoefficients& m,
                              const GeodesicOptions& opts, double fd_step) {
    if (!(fd_step > 0.0)) throw InvalidArgumentError("dexp_jacobian: fd_step must be > 0");
    BasisSpec basis{c0.dim(), opts.K_b, resolve_grid(opts, c0)};
    const int D = basis.state_dim();
    const int B = basis.block();
    const Eigen::VectorXd x0 = coeffs_from_field(c0.field(), opts.K_b);
    const Eigen::VectorXd u0 = coeffs_from_field(u, opts.K_b);

    MetricWorkspace ws(basis, m);
    std::vector<double> speed;
    ws.speed_from_state(x0, speed);
    const Eigen::MatrixXd S = ws.gram(speed);
    const Eigen::VectorXd p0 = momentum_from_velocity(ws, x0, u0);

    GeodesicOptions end_opts = opts;
    end_opts.grid = basis.grid;
    end_opts.store_every = std::max(1, opts.steps);

    Eigen::MatrixXd J(D, D);
    parallel_for(static_cast<std::size_t>(D), [&](std::size_t col) {
        const int alpha = static_cast<int>(col) / B;
        const int i = static_cast<int>(col) % B;
        Eigen::VectorXd dp = Eigen::VectorXd::Zero(D);
        dp.segment(alpha * B, B) = S.col(i);  // G e_col: perturbing u by e_col shifts p linearly
        const GeodesicPath plus = integrate_geodesic(basis, x0, p0 + fd_step * dp, m, end_opts);
        const GeodesicPath minus = integrate_geodesic(basis, x0, p0 - fd_step * dp, m, end_opts);
        J.col(static_cast<Eigen::Index>(col)) =
            (plus.states.row(plus.states.rows() - 1) - minus.states.row(minus.states.rows() - 1))
                .transpose() /
            (2.0 * fd_step);
    });
    return J;
}

namespace {

struct ShootingContext {
    BasisSpec basis;
    MetricCoefficients metric;
    GeodesicOptions geo;
    Eigen::VectorXd x0;
    Eigen::MatrixXd S0;  // Gram at c0 (momenta are linear in the velocity)
    Eigen::VectorXd target;

    Eigen::VectorXd endpoint(const Eigen::VectorXd& u, int steps) const {
        GeodesicOptions o = geo;
        o.steps = steps;
        o.store_every = std::max(1, steps);
        Eigen::VectorXd p0(u.size());
        const int B = basis.block();
        for (int alpha = 0; alpha < basis.d; ++alpha) {
            p0.segment(alpha * B, B).noalias() = S0 * u.segment(alpha * B, B);
        }
        const GeodesicPath path = integrate_geodesic(basis, x0, p0, metric, o);
        return path.states.row(path.states.rows() - 1);
    }
};

}  // namespace

ShootingReport log_curve(const Curve& c0, const Curve& c1, const MetricCoefficients& m,
                         const LogOptions& opts) {
    if (c0.dim() != c1.dim()) {
        throw DimensionMismatchError("log_curve: endpoint curves have different dimensions");
    }
    if (opts.max_iter < 1) throw InvalidArgumentError("log_curve: max_iter must be >= 1");
    if (!(opts.tol > 0.0)) throw InvalidArgumentError("log_curve: tol must be > 0");

    LogOptions local = opts;
    if (opts.multiscale && opts.geo.K_b >= 8) {
        LogOptions coarse = opts;
        coarse.multiscale = false;
        coarse.geo.K_b = opts.geo.K_b / 2;
        coarse.init.reset();
        const ShootingReport pre = log_curve(c0, c1, m, coarse);
        local.init = pre.u;
        local.multiscale = false;
    }

    ShootingContext ctx{BasisSpec{c0.dim(), local.geo.K_b, resolve_grid(local.geo, c0)},
                        m,
                        local.geo,
                        {},
                        {},
                        {}};
    ctx.geo.grid = ctx.basis.grid;
    ctx.x0 = coeffs_from_field(c0.field(), ctx.basis.K_b);
    ctx.target = coeffs_from_field(c1.field(), ctx.basis.K_b);
    {
        MetricWorkspace ws(ctx.basis, m);
        std::vector<double> speed;
        ws.speed_from_state(ctx.x0, speed);
        if (!(ws.last_speed_min() > 1e-10 * (1.0 + ws.last_speed_max()))) {
            throw DegenerateCurveError("log_curve: base curve violates the immersion bound");
        }
        ctx.S0 = ws.gram(speed);
    }

    const int D = ctx.basis.state_dim();
    const int steps_jac =
        local.steps_jacobian > 0 ? local.steps_jacobian : std::max(32, local.geo.steps / 4);

    Eigen::VectorXd u = local.init ? coeffs_from_field(*local.init, ctx.basis.K_b)
                                   : Eigen::VectorXd(ctx.target - ctx.x0);

    auto residual_norm = [&](const Eigen::VectorXd& r) {
        return sobolev_norm(field_from_coeffs(r, ctx.basis.d, ctx.basis.K_b),
                            static_cast<double>(m.n));
    };

    Eigen::VectorXd r = ctx.endpoint(u, ctx.geo.steps) - ctx.target;
    double rnorm = residual_norm(r);
    double sigma_min = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = rnorm <= local.tol;

    Eigen::MatrixXd J(D, D);
    while (!converged && iterations < local.max_iter) {
        const double fd = local.fd_step * (1.0 + u.cwiseAbs().maxCoeff());
        parallel_for(static_cast<std::size_t>(D), [&](std::size_t col) {
            Eigen::VectorXd up = u, um = u;
            up[static_cast<Eigen::Index>(col)] += fd;
            um[static_cast<Eigen::Index>(col)] -= fd;
            J.col(static_cast<Eigen::Index>(col)) =
                (ctx.endpoint(up, steps_jac) - ctx.endpoint(um, steps_jac)) / (2.0 * fd);
        });
        if (local.jacobian_seam) local.jacobian_seam(J);

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sigma_min = svd.singularValues().minCoeff();
        const double sigma_max = svd.singularValues().maxCoeff();
        if (sigma_min < 1e-8 * sigma_max) {
            throw PossiblyConjugateError(
                "shooting Jacobian is numerically rank deficient (sigma_min " +
                std::to_string(sigma_min) + "); endpoints may be conjugate");
        }
        Eigen::VectorXd step;
        if (local.damping > 0.0) {
            const Eigen::MatrixXd JtJ = J.transpose() * J;
            const Eigen::VectorXd g = J.transpose() * r;
            step = (JtJ + local.damping * Eigen::MatrixXd::Identity(D, D)).ldlt().solve(g);
        } else {
            step = svd.solve(r);
        }
        u -= step;
        r = ctx.endpoint(u, ctx.geo.steps) - ctx.target;
        rnorm = residual_norm(r);
        ++iterations;
        converged = rnorm <= local.tol;
    }

    if (converged && std::isnan(sigma_min)) {
        // Trivial solve (no Gauss-Newton step was needed): assemble the
        // Jacobian once so the report still carries the conjugacy margin.
        const double fd = local.fd_step * (1.0 + u.cwiseAbs().maxCoeff());
        parallel_for(static_cast<std::size_t>(D), [&](std::size_t col) {
            Eigen::VectorXd up = u, um = u;
            up[static_cast<Eigen::Index>(col)] += fd;
            um[static_cast<Eigen::Index>(col)] -= fd;
            J.col(static_cast<Eigen::Index>(col)) =
                (ctx.endpoint(up, steps_jac) - ctx.endpoint(um, steps_jac)) / (2.0 * fd);
        });
        if (local.jacobian_seam) local.jacobian_seam(J);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        sigma_min = svd.singularValues().minCoeff();
        if (sigma_min < 1e-8 * svd.singularValues().maxCoeff()) {
            throw PossiblyConjugateError(
                "shooting Jacobian is numerically rank deficient at the trivial solution");
        }
    }

    return ShootingReport{field_from_coeffs(u, ctx.basis.d, ctx.basis.K_b), rnorm, iterations,
                          sigma_min, converged};
}

}  // namespace sobogeo
