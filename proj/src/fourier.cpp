#include "sobogeo/fourier.hpp"

#include <cmath>
#include <numbers>

namespace sobogeo::fft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Iterative radix-2 Cooley-Tukey, sign = -1 forward, +1 inverse.
void radix2(std::vector<cdouble>& x, int sign) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        const cdouble wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble a = x[i + k];
                const cdouble b = x[i + k + len / 2] * w;
                x[i + k] = a + b;
                x[i + k + len / 2] = a - b;
                w *= wl;
            }
        }
    }
}

void direct(std::vector<cdouble>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cdouble> out(n, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * kTwoPi * static_cast<double>(j * k % n) / static_cast<double>(n);
            out[k] += x[j] * cdouble(std::cos(ang), std::sin(ang));
        }
    }
    x = std::move(out);
}

void transform(std::vector<cdouble>& x, int sign) {
    if (x.size() <= 1) return;
    if (is_power_of_two(x.size())) {
        radix2(x, sign);
    } else {
        direct(x, sign);
    }
}

}  // namespace

void forward(std::vector<cdouble>& x) { transform(x, -1); }

void inverse(std::vector<cdouble>& x) { transform(x, +1); }

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace sobogeo::fft
