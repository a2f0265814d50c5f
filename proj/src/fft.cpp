#include "eegspect/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace eegspect::spectral {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Bluestein's chirp-z transform: reduces an arbitrary-length DFT to a
// convolution of power-of-two length.
std::vector<cdouble> bluestein(const std::vector<cdouble>& x) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n + 1);
  std::vector<cdouble> chirp(n);
  for (std::size_t i = 0; i < n; ++i) {
    // i*i mod 2n keeps the angle argument small for large n.
    const std::size_t sq = (static_cast<unsigned long long>(i) * i) % (2 * n);
    const double angle = kTwoPi * static_cast<double>(sq) / (2.0 * n);
    chirp[i] = cdouble(std::cos(angle), -std::sin(angle));
  }
  std::vector<cdouble> a(m, cdouble(0, 0));
  std::vector<cdouble> b(m, cdouble(0, 0));
  for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp[i];
  b[0] = std::conj(chirp[0]);
  for (std::size_t i = 1; i < n; ++i) {
    b[i] = b[m - i] = std::conj(chirp[i]);
  }
  detail::fft_pow2(a);
  detail::fft_pow2(b);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  // Inverse transform via conjugation.
  for (auto& v : a) v = std::conj(v);
  detail::fft_pow2(a);
  const double scale = 1.0 / static_cast<double>(m);
  std::vector<cdouble> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::conj(a[i]) * scale * chirp[i];
  }
  return out;
}
}  // namespace

namespace detail {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<cdouble>& a) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -kTwoPi / static_cast<double>(len);
    const cdouble wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1, 0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace detail

std::vector<cdouble> dft(const std::vector<cdouble>& x) {
  if (x.empty()) throw std::invalid_argument("dft: empty input");
  if (detail::is_pow2(x.size())) {
    std::vector<cdouble> a = x;
    detail::fft_pow2(a);
    return a;
  }
  return bluestein(x);
}

std::vector<cdouble> dft(const std::vector<double>& x) {
  std::vector<cdouble> cx(x.begin(), x.end());
  return dft(cx);
}

std::vector<double> power_spectrum(const std::vector<cdouble>& spectrum) {
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    out[i] = std::norm(spectrum[i]);
  }
  return out;
}

}  // namespace eegspect::spectral
