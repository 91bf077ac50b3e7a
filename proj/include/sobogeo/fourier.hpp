#pragma once

#include <complex>
#include <vector>

namespace sobogeo::fft {

using cdouble = std::complex<double>;

// Unnormalized forward DFT in place: X_k = sum_j x_j e^{-2pi i jk/N}.
// Radix-2 for power-of-two sizes, direct summation otherwise.
void forward(std::vector<cdouble>& x);

// Unnormalized inverse DFT in place: x_j = sum_k X_k e^{+2pi i jk/N}.
void inverse(std::vector<cdouble>& x);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace sobogeo::fft
