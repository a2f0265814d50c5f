#pragma once

#include <cstddef>
#include <vector>

namespace eegspect::spectral {

// Discrete prolate spheroidal (Slepian) tapers. Rows are orthonormal,
// unit-energy tapers ordered by decreasing spectral concentration.
struct TaperBank {
  std::size_t length = 0;           // samples per taper (N)
  double nw = 0.0;                  // time-bandwidth product
  std::vector<std::vector<double>> tapers;  // q rows of length N
  std::vector<double> eigenvalues;  // concentrations in (0,1), decreasing

  std::size_t count() const { return tapers.size(); }
};

// Builds the q most concentrated tapers of length n for time-bandwidth
// product nw. Tapers are eigenvectors of the tridiagonal operator with
// diagonal ((n-1-2i)/2)^2 * cos(2*pi*W) and off-diagonal i*(n-i)/2,
// W = nw/n. Sign convention: the first taper sums to a nonnegative value,
// higher tapers start with a positive element.
TaperBank dpss(std::size_t n, double nw, std::size_t q);

}  // namespace eegspect::spectral
