#include "sobogeo/curve.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sobogeo/errors.hpp"

namespace sobogeo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |c'| values on an n-point grid.
std::vector<double> speed_values(const PeriodicField& field, int n) {
    const std::vector<double> dc = synthesize_grid(derivative(field, 1), n);
    const int d = field.dim();
    std::vector<double> s(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        double s2 = 0.0;
        for (int c = 0; c < d; ++c) s2 += dc[m * d + c] * dc[m * d + c];
        s[m] = std::sqrt(s2);
    }
    return s;
}
}  // namespace

Curve::Curve(PeriodicField field) : field_(std::move(field)) {
    if (field_.dim() < 2) {
        throw DegenerateCurveError("curves need codomain dimension d >= 2");
    }
    const int n4 = 4 * field_.grid_size();
    const std::vector<double> s = speed_values(field_, n4);
    double smin = s[0], smax = s[0];
    for (double v : s) {
        smin = std::min(smin, v);
        smax = std::max(smax, v);
    }
    if (!(smin > 1e-10 * (1.0 + smax))) {
        throw DegenerateCurveError("immersion violated: |c'| vanishes on the oversampled grid");
    }
}

Curve Curve::circle(double radius, int band) {
    PeriodicField f(2, band);
    f.set_coeff(1, 0, cdouble(0.5 * radius, 0.0));   // radius cos
    f.set_coeff(1, 1, cdouble(0.0, -0.5 * radius));  // radius sin
    return Curve(f);
}

Curve Curve::ellipse(double a, double b, int band) {
    PeriodicField f(2, band);
    f.set_coeff(1, 0, cdouble(0.5 * a, 0.0));
    f.set_coeff(1, 1, cdouble(0.0, -0.5 * b));
    return Curve(f);
}

PeriodicField speed(const Curve& c) {
    const int m = 2 * c.field().grid_size();
    return analyze(speed_values(c.field(), m), 1);
}

CurveTangent arc_derivative(const Curve& c, const CurveTangent& h, int j) {
    if (j < 0) throw InvalidArgumentError("arc_derivative: order must be >= 0");
    if (h.dim() != c.dim()) {
        throw DimensionMismatchError("arc_derivative: tangent dimension does not match curve");
    }
    if (j == 0) return h;
    const int m = 2 * c.field().grid_size();
    const std::vector<double> s = speed_values(c.field(), m);
    PeriodicField w = h;
    for (int it = 0; it < j; ++it) {
        std::vector<double> vals = synthesize_grid(derivative(w, 1), m);
        for (int p = 0; p < m; ++p) {
            for (int comp = 0; comp < h.dim(); ++comp) vals[p * h.dim() + comp] /= s[p];
        }
        w = analyze(vals, h.dim());
    }
    return w;
}

double metric_eval(const Curve& c, const CurveTangent& h, const CurveTangent& k,
                   const MetricCoefficients& m) {
    if (h.dim() != c.dim() || k.dim() != c.dim()) {
        throw DimensionMismatchError("metric_eval: tangent dimensions must match the curve");
    }
    const int d = c.dim();
    const int M = 2 * c.field().grid_size();
    const std::vector<double> s = speed_values(c.field(), M);
    const double wq = kTwoPi / M;

    std::vector<double> wh = synthesize_grid(h, M);
    std::vector<double> wk = synthesize_grid(k, M);
    double acc = 0.0;
    for (int j = 0; j <= m.n; ++j) {
        if (j > 0) {
            // One more D_s application to both tangents.
            wh = synthesize_grid(derivative(analyze(wh, d), 1), M);
            wk = synthesize_grid(derivative(analyze(wk, d), 1), M);
            for (int p = 0; p < M; ++p) {
                for (int comp = 0; comp < d; ++comp) {
                    wh[p * d + comp] /= s[p];
                    wk[p * d + comp] /= s[p];
                }
            }
        }
        if (m.a[j] == 0.0) continue;
        double term = 0.0;
        for (int p = 0; p < M; ++p) {
            double dot = 0.0;
            for (int comp = 0; comp < d; ++comp) dot += wh[p * d + comp] * wk[p * d + comp];
            term += dot * s[p];
        }
        acc += m.a[j] * term * wq;
    }
    return acc;
}

MetricMatrix metric_matrix(const Curve& c, const MetricCoefficients& m, int K_b) {
    if (K_b < 1) throw InvalidArgumentError("metric_matrix: K_b must be >= 1");
    if (K_b > c.band()) {
        throw BandError("metric_matrix: basis band K_b exceeds the curve band");
    }
    const int N = c.field().grid_size();
    MetricWorkspace ws({c.dim(), K_b, N}, m);
    const std::vector<double> s = speed_values(c.field(), 2 * N);
    const Eigen::MatrixXd S = ws.gram(s);

    const int B = 2 * K_b + 1;
    const int D = c.dim() * B;
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(D, D);
    for (int alpha = 0; alpha < c.dim(); ++alpha) {
        G.block(alpha * B, alpha * B, B, B) = S;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0)) {
        throw DegenerateCurveError("metric matrix is not positive definite");
    }
    return {std::move(G), hi / lo};
}

}  // namespace sobogeo
