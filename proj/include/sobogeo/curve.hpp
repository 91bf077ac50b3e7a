#pragma once

#include <Eigen/Dense>

#include "sobogeo/curve_metric.hpp"
#include "sobogeo/periodic_field.hpp"

namespace sobogeo {

// Immersed closed curve in R^d (d >= 2). Construction validates the
// immersion property min |c'| > 0 on a 4x oversampled grid.
class Curve {
  public:
    explicit Curve(PeriodicField field);

    const PeriodicField& field() const { return field_; }
    int dim() const { return field_.dim(); }
    int band() const { return field_.band(); }

    static Curve circle(double radius, int band = 16);
    static Curve ellipse(double a, double b, int band = 16);

  private:
    PeriodicField field_;
};

using CurveTangent = PeriodicField;

// |c'| sampled on the 2x padded grid and re-analyzed (dealiasing).
PeriodicField speed(const Curve& c);

// j-fold arc-length derivative D_s = (1/|c'|) d/dtheta applied to h.
CurveTangent arc_derivative(const Curve& c, const CurveTangent& h, int j);

// G_c(h,k) = int sum_j a_j <D_s^j h, D_s^j k> |c'| dtheta, trapezoidal
// quadrature on the 2x padded grid.
double metric_eval(const Curve& c, const CurveTangent& h, const CurveTangent& k,
                   const MetricCoefficients& m);

struct MetricMatrix {
    Eigen::MatrixXd matrix;   // d(2K_b+1) square, component-major blocks
    double condition_number;
};

// Metric Gram matrix in the real Fourier basis
// {e_alpha, cos(k.)e_alpha, sin(k.)e_alpha : 1 <= k <= K_b}.
MetricMatrix metric_matrix(const Curve& c, const MetricCoefficients& m, int K_b);

}  // namespace sobogeo
