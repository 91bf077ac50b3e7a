#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "sobogeo/periodic_field.hpp"

namespace sobogeo {

// Order-n metric with constant coefficients a_0..a_n, a_j >= 0 and
// a_0, a_n > 0.
struct MetricCoefficients {
    int n;
    std::vector<double> a;

    MetricCoefficients(int order, std::vector<double> coeffs);
};

// Truncated real Fourier description of curve states: per component the
// scalar functions {1, cos(k theta), sin(k theta), 1 <= k <= K_b}, packed
// component-major. grid is the resolution N; quadrature and dealiasing run
// on the doubled grid M = 2N.
struct BasisSpec {
    int d = 2;
    int K_b = 16;
    int grid = 128;

    int block() const { return 2 * K_b + 1; }
    int state_dim() const { return d * block(); }
    int quad_points() const { return 2 * grid; }
};

// Coefficient packing: index 0 -> constant, 2k-1 -> cos(k.), 2k -> sin(k.).
Eigen::VectorXd coeffs_from_field(const PeriodicField& u, int K_b);
PeriodicField field_from_coeffs(const Eigen::VectorXd& x, int d, int K_b);

// Work area for the discretized metric G(c) = blockdiag(S(c), ..., S(c)),
// S the Gram matrix of the scalar basis under
// sum_j a_j int (D_s^j f)(D_s^j g) |c'| dtheta. One instance per solve;
// methods reuse internal scratch and are not thread-safe across calls.
class MetricWorkspace {
  public:
    MetricWorkspace(BasisSpec basis, MetricCoefficients metric);

    const BasisSpec& basis() const { return basis_; }
    const MetricCoefficients& metric() const { return metric_; }

    // |c'| on the quadrature grid from a state vector; also caches c' values
    // for the force evaluations. Returns min |c'|.
    double speed_from_state(const Eigen::VectorXd& c, std::vector<double>& speed);

    // Scalar Gram matrix for externally supplied speed samples (size 2N).
    Eigen::MatrixXd gram(const std::vector<double>& speed);

    // H = 1/2 p^T G(c)^{-1} p; writes the velocity v = G^{-1} p.
    double hamiltonian(const Eigen::VectorXd& c, const Eigen::VectorXd& p, Eigen::VectorXd& v);

    // grad_c of 1/2 v^T G(c) v with v frozen (this equals dp/dt along the
    // Hamiltonian flow). Central finite differences with the given step, or
    // the exact adjoint-mode gradient when fd_step <= 0.
    Eigen::VectorXd force(const Eigen::VectorXd& c, const Eigen::VectorXd& v, double fd_step);

    double last_speed_min() const { return speed_min_; }
    double last_speed_max() const { return speed_max_; }

  private:
    void deriv_values(std::vector<double>& vals);  // spectral d/dtheta on the quad grid
    void component_derivative_values(const Eigen::VectorXd& x, int component,
                                     std::vector<double>& out);
    double quadratic_form_energy(const std::vector<double>& speed);
    Eigen::VectorXd force_fd(const Eigen::VectorXd& c, const Eigen::VectorXd& v, double fd_step);
    Eigen::VectorXd force_adjoint(const Eigen::VectorXd& c, const Eigen::VectorXd& v);
    void prepare_velocity_tables(const Eigen::VectorXd& v);

    BasisSpec basis_;
    MetricCoefficients metric_;

    std::vector<double> cos_table_, sin_table_;  // k x M, k = 0..K_b
    std::vector<std::complex<double>> fft_buf_;

    // Per-state caches (filled by speed_from_state / prepare_velocity_tables).
    std::vector<std::vector<double>> curve_deriv_;  // d x M values of c'
    std::vector<std::vector<double>> vel_values_, vel_deriv_;
    std::vector<double> v_sq_, dv_sq_;
    std::vector<std::vector<double>> chain_;  // scratch for D_s^j chains
    double speed_min_ = 0.0, speed_max_ = 0.0;
};

}  // namespace sobogeo
