#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "sobogeo/curve.hpp"
#include "sobogeo/curve_metric.hpp"

namespace sobogeo {

enum class GradientMethod {
    fd_central,      // central differences of the metric form, step fd_step_metric
    adjoint_exact,   // exact gradient by reverse accumulation (fast path)
};

struct GeodesicOptions {
    int steps = 200;
    int K_b = 16;
    double fd_step_metric = 1e-5;  // scaled internally by (1 + max|coefficient|)
    int grid = 0;                  // quadrature resolution N; 0 = derived from the curve
    double energy_gate = 1e-3;     // relative drift beyond this rejects the solve
    GradientMethod gradient = GradientMethod::fd_central;
    int store_every = 1;
};

// Time-sampled trajectory of the discretized geodesic flow in the real
// Fourier basis (states) together with the conjugate momenta.
struct GeodesicPath {
    BasisSpec basis;
    std::vector<double> times;
    Eigen::MatrixXd states;   // samples x D
    Eigen::MatrixXd momenta;  // samples x D
    std::vector<double> energy_trace;

    double energy_drift() const;
    Curve endpoint() const;
    Curve curve_at(int sample) const;
};

// H = 1/2 p^T G(c)^{-1} p for the discretized metric.
double hamiltonian(const BasisSpec& basis, const Eigen::VectorXd& c_coeffs,
                   const Eigen::VectorXd& p_coeffs, const MetricCoefficients& m);

// Hamiltonian flow from explicit phase-space data over t in [0, 1].
GeodesicPath integrate_geodesic(const BasisSpec& basis, const Eigen::VectorXd& c0,
                                const Eigen::VectorXd& p0, const MetricCoefficients& m,
                                const GeodesicOptions& opts);

// Geodesic initial value problem with velocity u at c0.
GeodesicPath exp_curve(const Curve& c0, const CurveTangent& u, const MetricCoefficients& m,
                       const GeodesicOptions& opts = {});

struct ShootingReport {
    PeriodicField u;       // solved initial velocity
    double residual_norm;  // H^n norm of the endpoint mismatch
    int iterations;
    double sigma_min;      // smallest singular value of the shooting Jacobian
    bool converged;
};

struct LogOptions {
    int max_iter = 20;
    double tol = 1e-10;        // H^n endpoint residual
    double damping = 0.0;      // Levenberg-Marquardt shift on the normal equations
    std::optional<PeriodicField> init;
    double fd_step = 1e-3;     // shooting Jacobian column step
    int steps_jacobian = 0;    // 0 = max(32, steps/4)
    bool multiscale = false;   // coarse K_b/2 pre-solve for a wider basin
    GeodesicOptions geo;
    // Test seam: applied to the Jacobian right after assembly.
    std::function<void(Eigen::MatrixXd&)> jacobian_seam;
};

// Geodesic boundary value problem by Gauss-Newton shooting on
// R(u) = coeffs(Exp(c0,u)(1)) - coeffs(c1).
ShootingReport log_curve(const Curve& c0, const Curve& c1, const MetricCoefficients& m,
                         const LogOptions& opts = {});

// D_u Exp(c0, u)(1) in the coefficient basis by central differences.
Eigen::MatrixXd dexp_jacobian(const Curve& c0, const CurveTangent& u,
                              const MetricCoefficients& m, const GeodesicOptions& opts,
                              double fd_step = 1e-3);

}  // namespace sobogeo
