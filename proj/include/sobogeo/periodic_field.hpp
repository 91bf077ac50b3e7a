#pragma once

#include <complex>
#include <span>
#include <vector>

namespace sobogeo {

using cdouble = std::complex<double>;

// Real-valued band-limited function on the circle with values in R^d,
// stored as Fourier coefficients u_hat_k for k = 0..K. Negative modes are
// implied by Hermitian symmetry u_hat_{-k} = conj(u_hat_k), so the
// represented field is real by construction. The mode k=0 is kept real.
class PeriodicField {
  public:
    PeriodicField() : d_(1), band_(0), coeffs_(1, cdouble(0.0, 0.0)) {}
    PeriodicField(int d, int band);

    int dim() const { return d_; }
    int band() const { return band_; }
    // Natural sampling grid: band K is what analyze() of an N-point grid keeps.
    int grid_size() const { return 2 * (band_ + 1); }

    // Coefficient access for any k in [-K, K]; negative k conjugated.
    cdouble coeff(int k, int component = 0) const;
    void set_coeff(int k, int component, cdouble value);  // k >= 0 only

    std::span<const cdouble> raw() const { return coeffs_; }
    std::span<cdouble> raw() { return coeffs_; }

    // Returns a copy with band limit new_band (zero-padded or truncated).
    PeriodicField with_band(int new_band) const;

    double max_abs_coeff() const;

    static PeriodicField constant(std::span<const double> value);
    // c * cos(k theta) (or sin) in a single component of a d-dimensional field.
    static PeriodicField harmonic_cos(int d, int band, int k, int component, double amplitude);
    static PeriodicField harmonic_sin(int d, int band, int k, int component, double amplitude);

  private:
    int d_;
    int band_;
    std::vector<cdouble> coeffs_;  // (band+1) x d, k-major: coeffs_[k*d + alpha]
};

// Linear field arithmetic; bands are promoted to the larger operand's.
PeriodicField add(const PeriodicField& a, const PeriodicField& b);
PeriodicField sub(const PeriodicField& a, const PeriodicField& b);
PeriodicField scale(const PeriodicField& a, double s);

// Fourier analysis of N equispaced samples at theta_j = 2 pi j / N.
// samples is row-major N x d. Keeps modes k = 0..N/2-1 (Nyquist dropped).
PeriodicField analyze(std::span<const double> samples, int d);

// Trigonometric evaluation at arbitrary points, exact for band-limited
// fields; returns row-major points x d.
std::vector<double> synthesize(const PeriodicField& u, std::span<const double> points);

// Values at the N-point equispaced grid (FFT fast path when available).
std::vector<double> synthesize_grid(const PeriodicField& u, int grid_points);

// Spectral derivative: coefficients (ik)^order * u_hat_k.
PeriodicField derivative(const PeriodicField& u, int order);

// Periodic H^q pairing 2 pi sum_k (1+k^2)^q <u_hat_k, conj(v_hat_k)>; the
// normalization makes q=0 the plain L^2 integral over [0, 2 pi).
double sobolev_inner(const PeriodicField& u, const PeriodicField& v, double q);
double sobolev_norm(const PeriodicField& u, double q);

// Diagonal Fourier multiplier symbol a(k) > 0, a(k) = a(-k).
class MultiplierSymbol {
  public:
    enum class Kind { bessel_power, inertia_sum, inertia_power, custom };

    static MultiplierSymbol bessel_power(double q);   // (1+k^2)^q
    static MultiplierSymbol inertia_sum(int n);       // 1 + k^{2n}
    static MultiplierSymbol inertia_power(int n);     // (1+k^2)^n
    static MultiplierSymbol custom(std::vector<double> table);  // k = 0..K

    double value(int k) const;
    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    const std::vector<double>& table() const { return table_; }

  private:
    MultiplierSymbol(Kind kind, double param, std::vector<double> table)
        : kind_(kind), param_(param), table_(std::move(table)) {}
    Kind kind_;
    double param_;
    std::vector<double> table_;
};

// u_hat_k -> a(k)^{+-1} u_hat_k.
PeriodicField apply_multiplier(const PeriodicField& u, const MultiplierSymbol& a, bool inverse);

// Least-squares slope s of log|u_hat_k| against log k over dyadic bins
// [k_min, K], using bin-maximum amplitudes, so |u_hat_k| ~ C k^{-s}.
// Returns +infinity when there is no usable high-mode content.
double decay_exponent(const PeriodicField& u, int k_min);

}  // namespace sobogeo
