#include "eegspect/dpss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eegspect/util.hpp"

namespace eegspect::spectral {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

// Number of eigenvalues of the tridiagonal matrix (diag d, offdiag e)
// strictly less than x, by Sturm sequence count.
std::size_t sturm_count(const std::vector<double>& d,
                        const std::vector<double>& e, double x) {
  std::size_t count = 0;
  double q = d[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (q == 0.0) q = 1e-300;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

// k-th ascending eigenvalue (0-based) via bisection.
double bisect_eigenvalue(const std::vector<double>& d,
                         const std::vector<double>& e, std::size_t k,
                         double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (std::abs(lo) + std::abs(hi) + 1.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(d, e, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Tridiagonal solve (T - shift*I) x = b with partial pivoting. The shifted
// system is near singular by construction, which is what inverse iteration
// needs; pivoting keeps the elimination stable.
void shifted_solve(const std::vector<double>& d, const std::vector<double>& e,
                   double shift, std::vector<double>& b) {
  const std::size_t n = d.size();
  std::vector<double> diag(n), upper1(n, 0.0), upper2(n, 0.0), lower(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    upper1[i] = e[i];
    lower[i] = e[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(lower[i]) > std::abs(diag[i])) {
      std::swap(diag[i], lower[i]);
      std::swap(upper1[i], diag[i + 1]);
      if (i + 2 < n) std::swap(upper2[i], upper1[i + 1]);
      std::swap(b[i], b[i + 1]);
    }
    double piv = diag[i];
    if (piv == 0.0) piv = 1e-300;
    const double m = lower[i] / piv;
    diag[i + 1] -= m * upper1[i];
    if (i + 2 < n) upper1[i + 1] -= m * upper2[i];
    b[i + 1] -= m * b[i];
    lower[i] = 0.0;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    if (ii + 1 < n) v -= upper1[ii] * b[ii + 1];
    if (ii + 2 < n) v -= upper2[ii] * b[ii + 2];
    double piv = diag[ii];
    if (piv == 0.0) piv = 1e-300;
    b[ii] = v / piv;
  }
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0) {
    for (double& x : v) x /= s;
  }
}

// Spectral concentration of a unit-energy taper: quadratic form with the
// sinc kernel, evaluated through the taper autocorrelation.
double concentration(const std::vector<double>& taper, double w) {
  const std::size_t n = taper.size();
  double lambda = 2.0 * w;  // delta = 0 term, taper has unit energy
  for (std::size_t delta = 1; delta < n; ++delta) {
    double r = 0.0;
    for (std::size_t i = 0; i + delta < n; ++i) r += taper[i] * taper[i + delta];
    lambda += 2.0 * r * std::sin(2.0 * kPi * w * static_cast<double>(delta)) /
              (kPi * static_cast<double>(delta));
  }
  return lambda;
}
}  // namespace

TaperBank dpss(std::size_t n, double nw, std::size_t q) {
  if (nw <= 0.0) throw std::invalid_argument("dpss: nw must be positive");
  if (q == 0) throw std::invalid_argument("dpss: q must be at least 1");
  if (q > n) throw std::invalid_argument("dpss: q exceeds taper length");
  const double w = nw / static_cast<double>(n);

  std::vector<double> d(n), e(n > 1 ? n - 1 : 0);
  const double cosw = std::cos(2.0 * kPi * w);
  for (std::size_t i = 0; i < n; ++i) {
    const double half = (static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(i)) / 2.0;
    d[i] = half * half * cosw;
  }
  for (std::size_t i = 1; i < n; ++i) {
    e[i - 1] = static_cast<double>(i) * static_cast<double>(n - i) / 2.0;
  }

  // Gershgorin bounds for the full spectrum.
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }

  TaperBank bank;
  bank.length = n;
  bank.nw = nw;
  bank.tapers.reserve(q);
  bank.eigenvalues.reserve(q);

  Rng rng(0x5eed5eedULL);
  for (std::size_t l = 0; l < q; ++l) {
    if (n == 1) {
      bank.tapers.push_back({1.0});
      bank.eigenvalues.push_back(1.0);
      continue;
    }
    // l-th taper corresponds to the (n-1-l)-th ascending eigenvalue.
    const double ev = bisect_eigenvalue(d, e, n - 1 - l, lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_double() - 0.5;
    normalize(v);
    for (int it = 0; it < 4; ++it) {
      shifted_solve(d, e, ev, v);
      // Deflate against already-computed tapers.
      for (const auto& prev : bank.tapers) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
      }
      normalize(v);
    }
    // Sign convention: first taper sums nonnegative, the rest lead positive.
    if (l == 0) {
      double s = 0.0;
      for (double x : v) s += x;
      if (s < 0) {
        for (double& x : v) x = -x;
      }
    } else {
      double maxabs = 0.0;
      for (double x : v) maxabs = std::max(maxabs, std::abs(x));
      for (double x : v) {
        if (std::abs(x) > 1e-12 * maxabs) {
          if (x < 0) {
            for (double& y : v) y = -y;
          }
          break;
        }
      }
    }
    bank.eigenvalues.push_back(concentration(v, w));
    bank.tapers.push_back(std::move(v));
  }
  return bank;
}

}  // namespace eegspect::spectral
