#pragma once

#include <functional>

#include "sobogeo/circle_diffeo.hpp"
#include "sobogeo/periodic_field.hpp"

namespace sobogeo {

// Opaque deterministic evaluator F : field(d_in) -> field(d_out), supplied
// by other modules (pointwise nonlinearities, multipliers, curve Exp on a
// paired (c, u) input, ...). Same input must give bit-identical output.
struct EquivariantMap {
    int d_in = 1;
    int d_out = 1;
    std::function<PeriodicField(const PeriodicField&)> eval;
};

// Pointwise nonlinearity u -> g(u) componentwise, computed on a 2x padded
// grid; exactly equivariant up to the retained band.
EquivariantMap pointwise_map(int d, std::function<double(double)> g);

// Linear multiplier map (commutes with d/dtheta exactly).
EquivariantMap multiplier_map(int d, const MultiplierSymbol& a);

// || F(u o phi) - F(u) o phi ||_{H^q} / (1 + || F(u) ||_{H^q}).
double equivariance_residual(const EquivariantMap& F, const PeriodicField& u,
                             const CircleDiffeo& phi, double q);

// Transport identity DF(w).(dw/dtheta) = d/dtheta F(w) with the derivative
// of F approximated by central differences of step fd_step:
// || (F(w+eps h) - F(w-eps h))/(2 eps) - (F(w))' ||_{H^q} / (1 + ||(F(w))'||_{H^q}).
double transport_identity_residual(const EquivariantMap& F, const PeriodicField& w,
                                   double fd_step, double q);

}  // namespace sobogeo
