#pragma once

#include <vector>

#include "diracedge/common.hpp"

namespace diracedge {

// Envelope samples on a uniform 1-D grid of n points covering
// [-length/2, length/2).
struct Envelope1D {
  double length = 0.0;
  std::vector<complex> a;

  double dx() const { return length / static_cast<double>(a.size()); }
  double x(std::size_t j) const {
    return -0.5 * length + static_cast<double>(j) * dx();
  }
  double squared_norm() const {
    double s = 0.0;
    for (const complex& v : a) s += std::norm(v);
    return s * dx();
  }
  double max_abs() const {
    double m = 0.0;
    for (const complex& v : a) m = std::max(m, std::abs(v));
    return m;
  }
};

// Exact traveling-mode envelope update in frequency space:
//   a_t^hat(xi) = sqrt(rho) * exp(i phase - i nu rho^2 xi^2) * a0^hat(rho xi).
// The dilated spectrum values a0^hat(rho xi) are computed by the exact
// discrete Fourier sum over the physical samples (the limit of zero-padded
// Fourier interpolation), so the update is unitary to rounding for resolved
// envelopes.  Frequencies folded beyond the grid Nyquist are dropped.
Envelope1D evolve_envelope(const Envelope1D& a0, double rho, double nu,
                           double phase);

}  // namespace diracedge
