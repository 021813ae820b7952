#include "diracedge/envelope.hpp"

#include <cmath>

#include "diracedge/fft.hpp"

namespace diracedge {

Envelope1D evolve_envelope(const Envelope1D& a0, double rho, double nu,
                           double phase) {
  require(!a0.a.empty(), "evolve_envelope: empty envelope");
  require(rho > 0.0, "evolve_envelope: rho must be positive");
  int n = static_cast<int>(a0.a.size());
  double dx = a0.dx();
  double nyquist = pi / dx;

  // Spectrum at the dilated frequencies rho*xi_j, by direct discrete Fourier
  // sum (exact nonuniform evaluation of the grid transform).
  std::vector<complex> ahat(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double xi = dft_wavenumber(j, n, a0.length);
    double eta = rho * xi;
    complex sum{};
    if (std::abs(eta) <= nyquist * (1.0 + 1e-12)) {
      for (int m = 0; m < n; ++m) {
        double x = a0.x(static_cast<std::size_t>(m));
        sum += a0.a[static_cast<std::size_t>(m)] *
               std::exp(complex(0.0, -eta * x));
      }
      sum *= dx;
    }
    complex mult = std::sqrt(rho) *
                   std::exp(complex(0.0, phase - nu * rho * rho * xi * xi));
    ahat[static_cast<std::size_t>(j)] = mult * sum;
  }

  // Back to physical space on the original grid.
  Envelope1D out;
  out.length = a0.length;
  out.a.resize(static_cast<std::size_t>(n));
  Fft1D fft(n);
  // a(x_m) = (1/L) sum_j ahat_j e^{i xi_j x_m}; with x_m = -L/2 + m dx the
  // phase splits into the DFT kernel times e^{-i xi_j L/2} = (-1)^j.
  std::vector<complex> tmp(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    tmp[static_cast<std::size_t>(j)] =
        ahat[static_cast<std::size_t>(j)] * sign *
        static_cast<double>(n) / a0.length;
  }
  fft.backward(tmp.data(), out.a.data());
  return out;
}

}  // namespace diracedge
