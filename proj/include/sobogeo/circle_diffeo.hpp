#pragma once

#include <vector>

#include "sobogeo/periodic_field.hpp"

namespace sobogeo {

// Equispaced grid theta_j = 2 pi j / N.
std::vector<double> grid_points(int n);

// Orientation-preserving diffeomorphism of the circle, phi(theta) =
// theta + f(theta) with periodic scalar displacement f. Monotonicity
// (1 + f' > 0) is a sampled proxy checked at grid points.
class CircleDiffeo {
  public:
    CircleDiffeo() : CircleDiffeo(PeriodicField(1, 0)) {}
    explicit CircleDiffeo(PeriodicField displacement);

    static CircleDiffeo identity();
    static CircleDiffeo rotation(double alpha);

    const PeriodicField& displacement() const { return f_; }
    int band() const { return f_.band(); }

    // phi(theta_j) on the N-point grid.
    std::vector<double> grid_values(int grid) const;

    bool is_orientation_preserving() const;
    void validate() const;  // throws InvalidDiffeoError

  private:
    PeriodicField f_;
};

// u o phi, evaluated at phi(theta_j) on u's natural grid and re-analyzed;
// band limit of u is preserved.
PeriodicField compose_field(const PeriodicField& u, const CircleDiffeo& phi);

// Group law (phi o psi)(theta) = psi(theta) + f_phi(psi(theta)).
// grid = 0 picks max(native resolutions, 128).
CircleDiffeo compose(const CircleDiffeo& phi, const CircleDiffeo& psi, int grid = 0);

// Inverse by per-grid-point Newton iteration on theta + f(theta) = y.
CircleDiffeo invert(const CircleDiffeo& phi, int grid = 0);

// One-parameter subgroup exp(t X): classical RK4 per grid point on
// d psi/dt = X(psi). grid = 0 picks a power-of-two >= max(8 (K+1), 128).
CircleDiffeo flow_one_parameter(const PeriodicField& X, double t, int steps, int grid = 0);

}  // namespace sobogeo
