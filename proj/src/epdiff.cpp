#include "sobogeo/epdiff.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sobogeo/errors.hpp"
#include "sobogeo/fourier.hpp"
#include "sobogeo/parallel.hpp"

namespace sobogeo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

int resolve_grid(const EpdiffOptions& opts, const PeriodicField& u0) {
    if (opts.grid > 0) return opts.grid;
    const int need = std::max(u0.grid_size(), 256);
    return static_cast<int>(fft::next_power_of_two(static_cast<std::size_t>(need)));
}

// Spectral state of the momentum, modes k = 0..K.
struct Spectral {
    std::vector<cdouble> m;
};

PeriodicField field_from_spectrum(const std::vector<cdouble>& coeffs) {
    PeriodicField f(1, static_cast<int>(coeffs.size()) - 1);
    for (std::size_t k = 0; k < coeffs.size(); ++k) f.set_coeff(static_cast<int>(k), 0, coeffs[k]);
    return f;
}

}  // namespace

double inner_product(const PeriodicField& u, const PeriodicField& v, const InertiaOperator& A) {
    return sobolev_inner(apply_multiplier(u, A, false), v, 0.0);
}

double GroupGeodesic::energy_drift() const {
    if (energy_trace.empty()) return 0.0;
    const double e0 = energy_trace.front();
    double worst = 0.0;
    for (double e : energy_trace) worst = std::max(worst, std::abs(e - e0));
    return worst / std::max(std::abs(e0), 1e-300);
}

GroupGeodesic euler_arnold_integrate(const PeriodicField& u0, const InertiaOperator& A, double T,
                                     int steps, const EpdiffOptions& opts) {
    if (u0.dim() != 1) throw InvalidArgumentError("euler_arnold: velocity must be scalar (d=1)");
    if (steps < 16) throw InvalidArgumentError("euler_arnold: steps must be >= 16");
    const int N = resolve_grid(opts, u0);
    const int K = N / 2 - 1;
    const int P = 2 * N;  // padded grid for the quadratic terms
    const int store_every = std::max(1, opts.store_every);

    // m = A u in spectral form.
    Spectral state;
    state.m.assign(static_cast<std::size_t>(K) + 1, cdouble(0.0, 0.0));
    for (int k = 0; k <= std::min(K, u0.band()); ++k) state.m[k] = A.value(k) * u0.coeff(k, 0);

    std::vector<cdouble> buf_u(P), buf_ux(P), buf_m(P), buf_mx(P), buf_w(P);
    std::vector<double> u_vals;  // for flow stages, synthesized on demand

    // dm_k/dt = -F[u m' + 2 u' m]_k, dealiased on the padded grid.
    auto pde_rhs = [&](const Spectral& s, Spectral& ds, std::vector<cdouble>& u_hat) {
        u_hat.assign(static_cast<std::size_t>(K) + 1, cdouble(0.0, 0.0));
        for (int k = 0; k <= K; ++k) u_hat[k] = s.m[k] / A.value(k);
        std::fill(buf_u.begin(), buf_u.end(), cdouble(0.0, 0.0));
        std::fill(buf_ux.begin(), buf_ux.end(), cdouble(0.0, 0.0));
        std::fill(buf_m.begin(), buf_m.end(), cdouble(0.0, 0.0));
        std::fill(buf_mx.begin(), buf_mx.end(), cdouble(0.0, 0.0));
        buf_u[0] = u_hat[0];
        buf_m[0] = s.m[0];
        for (int k = 1; k <= K; ++k) {
            const cdouble ik(0.0, static_cast<double>(k));
            buf_u[k] = u_hat[k];
            buf_u[P - k] = std::conj(u_hat[k]);
            buf_ux[k] = ik * u_hat[k];
            buf_ux[P - k] = std::conj(buf_ux[k]);
            buf_m[k] = s.m[k];
            buf_m[P - k] = std::conj(s.m[k]);
            buf_mx[k] = ik * s.m[k];
            buf_mx[P - k] = std::conj(buf_mx[k]);
        }
        fft::inverse(buf_u);
        fft::inverse(buf_ux);
        fft::inverse(buf_m);
        fft::inverse(buf_mx);
        for (int j = 0; j < P; ++j) {
            const double w = buf_u[j].real() * buf_mx[j].real() +
                             2.0 * buf_ux[j].real() * buf_m[j].real();
            buf_w[j] = cdouble(w, 0.0);
        }
        fft::forward(buf_w);
        ds.m.resize(static_cast<std::size_t>(K) + 1);
        const double inv_p = 1.0 / P;
        for (int k = 0; k <= K; ++k) ds.m[k] = -buf_w[k] * inv_p;
        ds.m[0] = cdouble(ds.m[0].real(), 0.0);
    };

    // Flow advected in the same RK4 sweep; u synthesized at the moving points.
    auto flow_rhs = [&](const std::vector<cdouble>& u_hat, const std::vector<double>& phi,
                        std::vector<double>& dphi) {
        dphi.resize(phi.size());
        for (std::size_t j = 0; j < phi.size(); ++j) {
            const double theta = phi[j];
            const cdouble rot(std::cos(theta), std::sin(theta));
            cdouble phase(1.0, 0.0);
            double acc = u_hat[0].real();
            for (int k = 1; k <= K; ++k) {
                phase *= rot;
                acc += 2.0 * (u_hat[k] * phase).real();
            }
            dphi[j] = acc;
        }
    };

    std::vector<double> phi(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) phi[j] = kTwoPi * j / N;

    GroupGeodesic out;
    out.inertia = A;
    auto record = [&](double t) {
        PeriodicField u_field(1, K);
        for (int k = 0; k <= K; ++k) u_field.set_coeff(k, 0, state.m[k] / A.value(k));
        out.times.push_back(t);
        out.velocities.push_back(u_field);
        std::vector<double> disp(phi.size());
        for (int j = 0; j < N; ++j) disp[j] = phi[j] - kTwoPi * j / N;
        out.flows.emplace_back(analyze(disp, 1));
        out.energy_trace.push_back(0.5 * inner_product(u_field, u_field, A));
    };

    const double h = T / steps;
    Spectral k1, k2, k3, k4, tmp;
    std::vector<cdouble> u1, u2, u3, u4;
    std::vector<double> f1, f2, f3, f4, ptmp(phi.size());
    for (int s = 0; s < steps; ++s) {
        if (s % store_every == 0) record(s * h);
        pde_rhs(state, k1, u1);
        flow_rhs(u1, phi, f1);

        tmp.m = state.m;
        for (int k = 0; k <= K; ++k) tmp.m[k] += 0.5 * h * k1.m[k];
        pde_rhs(tmp, k2, u2);
        for (std::size_t j = 0; j < phi.size(); ++j) ptmp[j] = phi[j] + 0.5 * h * f1[j];
        flow_rhs(u2, ptmp, f2);

        tmp.m = state.m;
        for (int k = 0; k <= K; ++k) tmp.m[k] += 0.5 * h * k2.m[k];
        pde_rhs(tmp, k3, u3);
        for (std::size_t j = 0; j < phi.size(); ++j) ptmp[j] = phi[j] + 0.5 * h * f2[j];
        flow_rhs(u3, ptmp, f3);

        tmp.m = state.m;
        for (int k = 0; k <= K; ++k) tmp.m[k] += h * k3.m[k];
        pde_rhs(tmp, k4, u4);
        for (std::size_t j = 0; j < phi.size(); ++j) ptmp[j] = phi[j] + h * f3[j];
        flow_rhs(u4, ptmp, f4);

        for (int k = 0; k <= K; ++k) {
            state.m[k] += h / 6.0 * (k1.m[k] + 2.0 * k2.m[k] + 2.0 * k3.m[k] + k4.m[k]);
        }
        for (std::size_t j = 0; j < phi.size(); ++j) {
            phi[j] += h / 6.0 * (f1[j] + 2.0 * f2[j] + 2.0 * f3[j] + f4[j]);
        }
        for (int j = 0; j < N; ++j) {
            const double gap = phi[(j + 1) % N] - phi[j] + (j + 1 == N ? kTwoPi : 0.0);
            if (!(gap > 0.0)) {
                throw FlowDegenerateError(
                    "epdiff flow left the monotone regime at t=" + std::to_string((s + 1) * h),
                    (s + 1) * h);
            }
        }
    }
    record(T);

    const double drift = out.energy_drift();
    if (drift > opts.energy_gate) {
        throw IntegratorAccuracyError("epdiff energy drift " + std::to_string(drift) +
                                      " exceeds the acceptance gate");
    }
    return out;
}

CircleDiffeo group_exp(const PeriodicField& X0, const InertiaOperator& A, double T, int steps,
                       const EpdiffOptions& opts) {
    EpdiffOptions o = opts;
    o.store_every = steps;
    const GroupGeodesic g = euler_arnold_integrate(X0, A, T, steps, o);
    return g.flows.back();
}

ShootingReport group_log(const CircleDiffeo& phi1, const InertiaOperator& A,
                         const GroupLogOptions& opts) {
    phi1.validate();
    if (opts.max_iter < 1) throw InvalidArgumentError("group_log: max_iter must be >= 1");

    EpdiffOptions eo = opts.epdiff;
    eo.grid = resolve_grid(opts.epdiff, phi1.displacement());
    const int N = eo.grid;
    const int K_s = std::min(opts.K_shoot, N / 2 - 1);
    const int Du = 2 * K_s + 1;
    const int steps_jac =
        opts.steps_jacobian > 0 ? opts.steps_jacobian : std::max(32, opts.steps / 4);

    const std::vector<double> target = synthesize_grid(phi1.displacement(), N);

    auto forward = [&](const Eigen::VectorXd& x, int steps) {
        const PeriodicField X0 = field_from_coeffs(x, 1, K_s);
        const CircleDiffeo phi = group_exp(X0, A, opts.T, steps, eo);
        return synthesize_grid(phi.displacement(), N);
    };
    auto to_residual = [&](const std::vector<double>& disp) {
        Eigen::VectorXd r(N);
        for (int j = 0; j < N; ++j) r[j] = disp[j] - target[j];
        return r;
    };

    Eigen::VectorXd x = opts.init ? coeffs_from_field(*opts.init, K_s)
                                  : coeffs_from_field(phi1.displacement(), K_s) / opts.T;

    Eigen::VectorXd r = to_residual(forward(x, opts.steps));
    double rnorm = r.cwiseAbs().maxCoeff();
    double sigma_min = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = rnorm <= opts.tol;

    Eigen::MatrixXd J(N, Du);
    while (!converged && iterations < opts.max_iter) {
        const double fd = opts.fd_step * (1.0 + x.cwiseAbs().maxCoeff());
        parallel_for(static_cast<std::size_t>(Du), [&](std::size_t col) {
            Eigen::VectorXd xp = x, xm = x;
            xp[static_cast<Eigen::Index>(col)] += fd;
            xm[static_cast<Eigen::Index>(col)] -= fd;
            const std::vector<double> dp = forward(xp, steps_jac);
            const std::vector<double> dm = forward(xm, steps_jac);
            for (int j = 0; j < N; ++j) {
                J(j, static_cast<Eigen::Index>(col)) = (dp[j] - dm[j]) / (2.0 * fd);
            }
        });
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        sigma_min = svd.singularValues().minCoeff();
        if (sigma_min < 1e-8 * svd.singularValues().maxCoeff()) {
            throw PossiblyConjugateError("group shooting Jacobian is numerically rank deficient");
        }
        Eigen::VectorXd step;
        if (opts.damping > 0.0) {
            const Eigen::MatrixXd JtJ = J.transpose() * J;
            step = (JtJ + opts.damping * Eigen::MatrixXd::Identity(Du, Du))
                       .ldlt()
                       .solve(J.transpose() * r);
        } else {
            step = svd.solve(r);
        }
        x -= step;
        r = to_residual(forward(x, opts.steps));
        rnorm = r.cwiseAbs().maxCoeff();
        ++iterations;
        converged = rnorm <= opts.tol;
    }

    return ShootingReport{field_from_coeffs(x, 1, K_s), rnorm, iterations, sigma_min, converged};
}

double momentum_conservation_residual(const GroupGeodesic& g) {
    if (g.times.empty()) throw InvalidArgumentError("momentum residual: empty geodesic");
    const PeriodicField m0 = apply_multiplier(g.velocities.front(), g.inertia, false);
    const int N = std::max(m0.grid_size(), g.flows.front().displacement().grid_size());
    const std::vector<double> m0_vals = synthesize_grid(m0, N);
    double scale = 0.0;
    for (double v : m0_vals) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;

    double worst = 0.0;
    for (std::size_t i = 0; i < g.times.size(); ++i) {
        const PeriodicField m_t = apply_multiplier(g.velocities[i], g.inertia, false);
        const std::vector<double> phi = g.flows[i].grid_values(N);
        const std::vector<double> m_at_phi = synthesize(m_t, phi);
        const std::vector<double> dphi =
            synthesize_grid(derivative(g.flows[i].displacement(), 1), N);
        for (int j = 0; j < N; ++j) {
            const double jac = 1.0 + dphi[j];
            const double transported = m_at_phi[j] * jac * jac;
            worst = std::max(worst, std::abs(transported - m0_vals[j]) / scale);
        }
    }
    return worst;
}

}  // namespace sobogeo
