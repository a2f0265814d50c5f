#pragma once

#include <complex>
#include <vector>

namespace eegspect::spectral {

using cdouble = std::complex<double>;

// DFT of a real signal: X[k] = sum_n x[n] * exp(-j*2*pi*k*n/N), k = 0..N-1.
// Radix-2 for power-of-two lengths, Bluestein otherwise; either way the
// result matches the direct summation.
std::vector<cdouble> dft(const std::vector<double>& x);

// Same transform on complex input.
std::vector<cdouble> dft(const std::vector<cdouble>& x);

// Elementwise |X[k]|^2.
std::vector<double> power_spectrum(const std::vector<cdouble>& spectrum);

namespace detail {
// In-place forward transform, size must be a power of two.
void fft_pow2(std::vector<cdouble>& a);
bool is_pow2(std::size_t n);
}  // namespace detail

}  // namespace eegspect::spectral
