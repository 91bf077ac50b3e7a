#pragma once

#include <optional>
#include <vector>

#include "sobogeo/circle_diffeo.hpp"
#include "sobogeo/curve_geodesics.hpp"
#include "sobogeo/periodic_field.hpp"

namespace sobogeo {

// Inertia operator A of the right-invariant metric <Au, v>_{L^2}: a
// positive even Fourier multiplier.
using InertiaOperator = MultiplierSymbol;

// <Au, v> = int (Au) . v dtheta.
double inner_product(const PeriodicField& u, const PeriodicField& v, const InertiaOperator& A);

struct EpdiffOptions {
    int grid = 0;             // spatial resolution N; 0 = max(native, 256) power of two
    double energy_gate = 1e-3;
    int store_every = 1;
};

// Velocity/flow history of a right-invariant geodesic on D(S^1).
struct GroupGeodesic {
    std::vector<double> times;
    std::vector<PeriodicField> velocities;  // u(t), d = 1
    std::vector<CircleDiffeo> flows;        // phi(t), phi(0) = Id
    std::vector<double> energy_trace;       // 1/2 <A u, u>
    InertiaOperator inertia = InertiaOperator::bessel_power(0.0);

    double energy_drift() const;
};

// Euler-Arnold evolution m_t = -(u m_theta + 2 u_theta m), m = Au, solved
// pseudospectrally with 2x-padded products; the flow d phi/dt = u(t) o phi
// is advanced inside the same RK4 sweep.
GroupGeodesic euler_arnold_integrate(const PeriodicField& u0, const InertiaOperator& A, double T,
                                     int steps, const EpdiffOptions& opts = {});

// phi(T) of the geodesic with initial velocity X0.
CircleDiffeo group_exp(const PeriodicField& X0, const InertiaOperator& A, double T, int steps,
                       const EpdiffOptions& opts = {});

struct GroupLogOptions {
    int max_iter = 20;
    double tol = 1e-8;      // sup-norm displacement mismatch on the grid
    double damping = 0.0;
    double fd_step = 1e-4;
    int K_shoot = 16;       // band of the shooting unknown
    double T = 1.0;
    int steps = 400;
    int steps_jacobian = 0;  // 0 = max(32, steps/4)
    std::optional<PeriodicField> init;
    EpdiffOptions epdiff;
};

// Shooting for X0 with group_exp(X0) = phi1 (documented basin:
// ||f||_{H^2} <= 0.5 at defaults).
ShootingReport group_log(const CircleDiffeo& phi1, const InertiaOperator& A,
                         const GroupLogOptions& opts = {});

// max over checkpoints of || m(t, phi_t) phi_t'^2 - m(0) ||_inf / ||m(0)||_inf.
double momentum_conservation_residual(const GroupGeodesic& g);

}  // namespace sobogeo
