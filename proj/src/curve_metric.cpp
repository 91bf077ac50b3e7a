#include "sobogeo/curve_metric.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sobogeo/errors.hpp"
#include "sobogeo/fourier.hpp"

namespace sobogeo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MetricCoefficients::MetricCoefficients(int order, std::vector<double> coeffs)
    : n(order), a(std::move(coeffs)) {
    if (n < 2) throw InvalidArgumentError("metric order must be >= 2");
    if (a.size() != static_cast<std::size_t>(n) + 1) {
        throw InvalidArgumentError("metric needs exactly n+1 coefficients");
    }
    for (double c : a) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw InvalidArgumentError("metric coefficients must be finite and >= 0");
        }
    }
    if (!(a.front() > 0.0) || !(a.back() > 0.0)) {
        throw InvalidArgumentError("metric requires a_0 > 0 and a_n > 0");
    }
}

Eigen::VectorXd coeffs_from_field(const PeriodicField& u, int K_b) {
    const int B = 2 * K_b + 1;
    Eigen::VectorXd x(static_cast<Eigen::Index>(u.dim()) * B);
    for (int c = 0; c < u.dim(); ++c) {
        x[c * B] = u.coeff(0, c).real();
        for (int k = 1; k <= K_b; ++k) {
            const cdouble z = u.coeff(k, c);
            x[c * B + 2 * k - 1] = 2.0 * z.real();
            x[c * B + 2 * k] = -2.0 * z.imag();
        }
    }
    return x;
}

PeriodicField field_from_coeffs(const Eigen::VectorXd& x, int d, int K_b) {
    const int B = 2 * K_b + 1;
    if (x.size() != static_cast<Eigen::Index>(d) * B) {
        throw DimensionMismatchError("field_from_coeffs: state vector has wrong size");
    }
    PeriodicField u(d, K_b);
    for (int c = 0; c < d; ++c) {
        u.set_coeff(0, c, cdouble(x[c * B], 0.0));
        for (int k = 1; k <= K_b; ++k) {
            u.set_coeff(k, c, cdouble(0.5 * x[c * B + 2 * k - 1], -0.5 * x[c * B + 2 * k]));
        }
    }
    return u;
}

MetricWorkspace::MetricWorkspace(BasisSpec basis, MetricCoefficients metric)
    : basis_(basis), metric_(std::move(metric)) {
    if (basis_.d < 1 || basis_.K_b < 1 || basis_.grid < 2) {
        throw InvalidArgumentError("metric workspace: bad basis spec");
    }
    const int M = basis_.quad_points();
    const int K = basis_.K_b;
    cos_table_.resize(static_cast<std::size_t>(K + 1) * M);
    sin_table_.resize(static_cast<std::size_t>(K + 1) * M);
    for (int k = 0; k <= K; ++k) {
        for (int m = 0; m < M; ++m) {
            const double th = kTwoPi * m / M * k;
            cos_table_[static_cast<std::size_t>(k) * M + m] = std::cos(th);
            sin_table_[static_cast<std::size_t>(k) * M + m] = std::sin(th);
        }
    }
    fft_buf_.resize(M);
    curve_deriv_.assign(basis_.d, std::vector<double>(M, 0.0));
    vel_values_.assign(basis_.d, std::vector<double>(M, 0.0));
    vel_deriv_.assign(basis_.d, std::vector<double>(M, 0.0));
    v_sq_.assign(M, 0.0);
    dv_sq_.assign(M, 0.0);
    chain_.assign(static_cast<std::size_t>(metric_.n + 1) * basis_.d, std::vector<double>(M, 0.0));
}

void MetricWorkspace::deriv_values(std::vector<double>& vals) {
    const int M = basis_.quad_points();
    for (int m = 0; m < M; ++m) fft_buf_[m] = cdouble(vals[m], 0.0);
    fft::forward(fft_buf_);
    fft_buf_[0] = cdouble(0.0, 0.0);
    for (int k = 1; k < M / 2; ++k) {
        const cdouble ik(0.0, static_cast<double>(k));
        fft_buf_[k] *= ik;
        fft_buf_[M - k] = std::conj(fft_buf_[k]);
    }
    fft_buf_[M / 2] = cdouble(0.0, 0.0);  // Nyquist dropped
    fft::inverse(fft_buf_);
    const double inv_m = 1.0 / M;
    for (int m = 0; m < M; ++m) vals[m] = fft_buf_[m].real() * inv_m;
}

void MetricWorkspace::component_derivative_values(const Eigen::VectorXd& x, int component,
                                                  std::vector<double>& out) {
    // c'_alpha on the quadrature grid straight from the packed coefficients.
    const int M = basis_.quad_points();
    const int B = basis_.block();
    const int base = component * B;
    std::fill(fft_buf_.begin(), fft_buf_.end(), cdouble(0.0, 0.0));
    for (int k = 1; k <= basis_.K_b; ++k) {
        const cdouble uk(0.5 * x[base + 2 * k - 1], -0.5 * x[base + 2 * k]);
        const cdouble dk = cdouble(0.0, static_cast<double>(k)) * uk;
        fft_buf_[k] = dk;
        fft_buf_[M - k] = std::conj(dk);
    }
    fft::inverse(fft_buf_);
    out.resize(M);
    for (int m = 0; m < M; ++m) out[m] = fft_buf_[m].real();
}

double MetricWorkspace::speed_from_state(const Eigen::VectorXd& c, std::vector<double>& speed) {
    const int M = basis_.quad_points();
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        component_derivative_values(c, alpha, curve_deriv_[alpha]);
    }
    speed.resize(M);
    speed_min_ = std::numeric_limits<double>::infinity();
    speed_max_ = 0.0;
    for (int m = 0; m < M; ++m) {
        double s2 = 0.0;
        for (int alpha = 0; alpha < basis_.d; ++alpha) {
            s2 += curve_deriv_[alpha][m] * curve_deriv_[alpha][m];
        }
        speed[m] = std::sqrt(s2);
        speed_min_ = std::min(speed_min_, speed[m]);
        speed_max_ = std::max(speed_max_, speed[m]);
    }
    return speed_min_;
}

Eigen::MatrixXd MetricWorkspace::gram(const std::vector<double>& speed) {
    const int M = basis_.quad_points();
    const int B = basis_.block();
    const int K = basis_.K_b;
    const double wq = kTwoPi / M;

    Eigen::MatrixXd W(M, B);        // D_s^j of the scalar basis, updated in place
    Eigen::VectorXd ws(M);          // quadrature weight x speed
    Eigen::VectorXd inv_s(M);
    for (int m = 0; m < M; ++m) {
        ws[m] = wq * speed[m];
        inv_s[m] = 1.0 / speed[m];
    }

    // j = 0: plain basis values.
    for (int m = 0; m < M; ++m) W(m, 0) = 1.0;
    for (int k = 1; k <= K; ++k) {
        for (int m = 0; m < M; ++m) {
            W(m, 2 * k - 1) = cos_table_[static_cast<std::size_t>(k) * M + m];
            W(m, 2 * k) = sin_table_[static_cast<std::size_t>(k) * M + m];
        }
    }
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(B, B);
    if (metric_.a[0] > 0.0) S.noalias() += metric_.a[0] * W.transpose() * ws.asDiagonal() * W;

    // j = 1: analytic theta-derivatives of the basis, divided by speed.
    W.col(0).setZero();
    for (int k = 1; k <= K; ++k) {
        for (int m = 0; m < M; ++m) {
            W(m, 2 * k - 1) = -k * sin_table_[static_cast<std::size_t>(k) * M + m] * inv_s[m];
            W(m, 2 * k) = k * cos_table_[static_cast<std::size_t>(k) * M + m] * inv_s[m];
        }
    }
    if (metric_.a[1] > 0.0) S.noalias() += metric_.a[1] * W.transpose() * ws.asDiagonal() * W;

    std::vector<double> col(M);
    for (int j = 2; j <= metric_.n; ++j) {
        for (int b = 0; b < B; ++b) {
            for (int m = 0; m < M; ++m) col[m] = W(m, b);
            deriv_values(col);
            for (int m = 0; m < M; ++m) W(m, b) = col[m] * inv_s[m];
        }
        if (metric_.a[j] > 0.0) S.noalias() += metric_.a[j] * W.transpose() * ws.asDiagonal() * W;
    }
    return S;
}

double MetricWorkspace::hamiltonian(const Eigen::VectorXd& c, const Eigen::VectorXd& p,
                                    Eigen::VectorXd& v) {
    std::vector<double> speed;
    speed_from_state(c, speed);
    if (!(speed_min_ > 1e-10 * (1.0 + speed_max_))) {
        throw DegenerateCurveError("curve speed vanished on the quadrature grid");
    }
    const Eigen::MatrixXd S = gram(speed);
    Eigen::LLT<Eigen::MatrixXd> llt(S);
    if (llt.info() != Eigen::Success) {
        throw DegenerateCurveError("metric Gram matrix is not positive definite");
    }
    const int B = basis_.block();
    v.resize(p.size());
    double H = 0.0;
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        v.segment(alpha * B, B) = llt.solve(p.segment(alpha * B, B));
        H += 0.5 * p.segment(alpha * B, B).dot(v.segment(alpha * B, B));
    }
    return H;
}

void MetricWorkspace::prepare_velocity_tables(const Eigen::VectorXd& v) {
    const int M = basis_.quad_points();
    const int B = basis_.block();
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        // v_alpha and v'_alpha on the grid from the packed coefficients.
        std::fill(fft_buf_.begin(), fft_buf_.end(), cdouble(0.0, 0.0));
        fft_buf_[0] = cdouble(v[alpha * B], 0.0);
        for (int k = 1; k <= basis_.K_b; ++k) {
            const cdouble uk(0.5 * v[alpha * B + 2 * k - 1], -0.5 * v[alpha * B + 2 * k]);
            fft_buf_[k] = uk;
            fft_buf_[M - k] = std::conj(uk);
        }
        fft::inverse(fft_buf_);
        for (int m = 0; m < M; ++m) vel_values_[alpha][m] = fft_buf_[m].real();
        component_derivative_values(v, alpha, vel_deriv_[alpha]);
    }
    for (int m = 0; m < M; ++m) {
        double a = 0.0, b = 0.0;
        for (int alpha = 0; alpha < basis_.d; ++alpha) {
            a += vel_values_[alpha][m] * vel_values_[alpha][m];
            b += vel_deriv_[alpha][m] * vel_deriv_[alpha][m];
        }
        v_sq_[m] = a;
        dv_sq_[m] = b;
    }
}

// E(speed) = sum_j a_j int |D_s^j v|^2 |c'| dtheta with v frozen; uses the
// velocity tables prepared for the current state.
double MetricWorkspace::quadratic_form_energy(const std::vector<double>& speed) {
    const int M = basis_.quad_points();
    const double wq = kTwoPi / M;
    double acc = 0.0;
    for (int m = 0; m < M; ++m) {
        acc += (metric_.a[0] * v_sq_[m] * speed[m] + metric_.a[1] * dv_sq_[m] / speed[m]);
    }
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        std::vector<double>& w = chain_[alpha];
        w = vel_deriv_[alpha];
        for (int m = 0; m < M; ++m) w[m] /= speed[m];
        for (int j = 2; j <= metric_.n; ++j) {
            deriv_values(w);
            for (int m = 0; m < M; ++m) w[m] /= speed[m];
            if (metric_.a[j] > 0.0) {
                double t = 0.0;
                for (int m = 0; m < M; ++m) t += w[m] * w[m] * speed[m];
                acc += metric_.a[j] * t;
            }
        }
    }
    return wq * acc;
}

Eigen::VectorXd MetricWorkspace::force(const Eigen::VectorXd& c, const Eigen::VectorXd& v,
                                       double fd_step) {
    prepare_velocity_tables(v);
    return fd_step > 0.0 ? force_fd(c, v, fd_step) : force_adjoint(c, v);
}

Eigen::VectorXd MetricWorkspace::force_fd(const Eigen::VectorXd& c, const Eigen::VectorXd&,
                                          double fd_step) {
    const int M = basis_.quad_points();
    const int B = basis_.block();
    const int K = basis_.K_b;

    std::vector<double> speed(M);
    speed_from_state(c, speed);
    std::vector<double> s_sq(M), s_pert(M);
    for (int m = 0; m < M; ++m) s_sq[m] = speed[m] * speed[m];

    Eigen::VectorXd grad = Eigen::VectorXd::Zero(c.size());
    std::vector<double> basis_deriv(M);
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        for (int i = 1; i < B; ++i) {  // i = 0 is a translation: zero force
            const int k = (i + 1) / 2;
            const bool is_cos = (i % 2 == 1);
            for (int m = 0; m < M; ++m) {
                const std::size_t idx = static_cast<std::size_t>(k) * M + m;
                basis_deriv[m] = is_cos ? -k * sin_table_[idx] : k * cos_table_[idx];
            }
            double e_plus = 0.0, e_minus = 0.0;
            for (int sign = 0; sign < 2; ++sign) {
                const double eps = sign == 0 ? fd_step : -fd_step;
                for (int m = 0; m < M; ++m) {
                    const double t = curve_deriv_[alpha][m] + eps * basis_deriv[m];
                    double s2 = s_sq[m] - curve_deriv_[alpha][m] * curve_deriv_[alpha][m] + t * t;
                    s_pert[m] = std::sqrt(s2);
                }
                (sign == 0 ? e_plus : e_minus) = quadratic_form_energy(s_pert);
            }
            grad[alpha * B + i] = 0.5 * (e_plus - e_minus) / (2.0 * fd_step);
        }
    }
    return grad;
}

Eigen::VectorXd MetricWorkspace::force_adjoint(const Eigen::VectorXd& c, const Eigen::VectorXd&) {
    const int M = basis_.quad_points();
    const int B = basis_.block();
    const double wq = kTwoPi / M;

    std::vector<double> speed(M);
    speed_from_state(c, speed);

    // Forward chains w_j = D_s^j v per component (w_0 = v).
    auto w_at = [&](int j, int alpha) -> std::vector<double>& {
        return chain_[static_cast<std::size_t>(j) * basis_.d + alpha];
    };
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        w_at(0, alpha) = vel_values_[alpha];
        w_at(1, alpha) = vel_deriv_[alpha];
        for (int m = 0; m < M; ++m) w_at(1, alpha)[m] /= speed[m];
        for (int j = 2; j <= metric_.n; ++j) {
            w_at(j, alpha) = w_at(j - 1, alpha);
            deriv_values(w_at(j, alpha));
            for (int m = 0; m < M; ++m) w_at(j, alpha)[m] /= speed[m];
        }
    }

    // g_m = dE/d(speed_m): direct terms plus reverse sweep through the
    // division by speed in each D_s application.
    std::vector<double> g(M, 0.0);
    for (int j = 0; j <= metric_.n; ++j) {
        if (metric_.a[j] == 0.0) continue;
        for (int alpha = 0; alpha < basis_.d; ++alpha) {
            const std::vector<double>& w = w_at(j, alpha);
            for (int m = 0; m < M; ++m) g[m] += metric_.a[j] * w[m] * w[m];
        }
    }
    std::vector<double> lambda(M), tmp(M);
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        std::fill(lambda.begin(), lambda.end(), 0.0);
        for (int j = metric_.n; j >= 1; --j) {
            const std::vector<double>& w = w_at(j, alpha);
            for (int m = 0; m < M; ++m) lambda[m] += 2.0 * metric_.a[j] * w[m] * speed[m];
            for (int m = 0; m < M; ++m) g[m] -= lambda[m] * w[m] / speed[m];
            if (j > 1) {
                // lambda_{j-1} = -D(lambda_j / speed)
                for (int m = 0; m < M; ++m) tmp[m] = lambda[m] / speed[m];
                deriv_values(tmp);
                for (int m = 0; m < M; ++m) lambda[m] = -tmp[m];
            }
        }
    }
    for (int m = 0; m < M; ++m) g[m] *= wq;

    // Project onto coefficient directions: dE/dc_{alpha,i} =
    // sum_m g_m c'_{alpha,m} f_i'(theta_m) / speed_m, via one DFT per component.
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(c.size());
    for (int alpha = 0; alpha < basis_.d; ++alpha) {
        for (int m = 0; m < M; ++m) {
            fft_buf_[m] = cdouble(g[m] * curve_deriv_[alpha][m] / speed[m], 0.0);
        }
        fft::forward(fft_buf_);
        for (int k = 1; k <= basis_.K_b; ++k) {
            grad[alpha * B + 2 * k - 1] = 0.5 * k * fft_buf_[k].imag();
            grad[alpha * B + 2 * k] = 0.5 * k * fft_buf_[k].real();
        }
    }
    return grad;
}

}  // namespace sobogeo
