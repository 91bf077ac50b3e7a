#include "sobogeo/equivariance.hpp"

#include <cmath>
#include <utility>

#include "sobogeo/errors.hpp"

namespace sobogeo {

EquivariantMap pointwise_map(int d, std::function<double(double)> g) {
    EquivariantMap F;
    F.d_in = d;
    F.d_out = d;
    F.eval = [d, g = std::move(g)](const PeriodicField& u) {
        const int n = 2 * u.grid_size();  // 2x padding against aliasing
        std::vector<double> vals = synthesize_grid(u, n);
        for (double& v : vals) v = g(v);
        return analyze(vals, d).with_band(u.band());
    };
    return F;
}

EquivariantMap multiplier_map(int d, const MultiplierSymbol& a) {
    EquivariantMap F;
    F.d_in = d;
    F.d_out = d;
    F.eval = [a](const PeriodicField& u) { return apply_multiplier(u, a, false); };
    return F;
}

double equivariance_residual(const EquivariantMap& F, const PeriodicField& u,
                             const CircleDiffeo& phi, double q) {
    if (u.dim() != F.d_in) {
        throw DimensionMismatchError("equivariance_residual: field dimension does not match map");
    }
    const PeriodicField lhs = F.eval(compose_field(u, phi));
    const PeriodicField Fu = F.eval(u);
    const PeriodicField rhs = compose_field(Fu, phi);
    const double mismatch = sobolev_norm(sub(lhs, rhs), q);
    return mismatch / (1.0 + sobolev_norm(Fu, q));
}

double transport_identity_residual(const EquivariantMap& F, const PeriodicField& w,
                                   double fd_step, double q) {
    if (w.dim() != F.d_in) {
        throw DimensionMismatchError("transport_identity_residual: field dimension mismatch");
    }
    if (!(fd_step > 0.0)) throw InvalidArgumentError("transport_identity_residual: fd_step > 0");
    const PeriodicField h = derivative(w, 1);
    const PeriodicField plus = F.eval(add(w, scale(h, fd_step)));
    const PeriodicField minus = F.eval(sub(w, scale(h, fd_step)));
    const PeriodicField df = scale(sub(plus, minus), 0.5 / fd_step);
    const PeriodicField transported = derivative(F.eval(w), 1);
    const double mismatch = sobolev_norm(sub(df, transported), q);
    return mismatch / (1.0 + sobolev_norm(transported, q));
}

}  // namespace sobogeo
