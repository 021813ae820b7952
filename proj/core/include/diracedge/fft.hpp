#pragma once

#include <complex>
#include <vector>

#include "diracedge/common.hpp"

namespace diracedge {

// Thin RAII wrappers over FFTW complex-to-complex transforms.  Plans are
// created with FFTW_ESTIMATE: the planner is then a deterministic function of
// the shape, which keeps runs bit-for-bit reproducible.  Unnormalized
// forward/backward pair; backward() divides by the point count so
// backward(forward(x)) == x.
class Fft1D {
 public:
  explicit Fft1D(int n);
  ~Fft1D();
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  int size() const { return n_; }
  void forward(const complex* in, complex* out) const;
  void backward(const complex* in, complex* out) const;

 private:
  int n_ = 0;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  complex* buf_in_ = nullptr;
  complex* buf_out_ = nullptr;
};

class Fft2D {
 public:
  Fft2D(int n1, int n2);  // row-major, n1 slow
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  void forward(const complex* in, complex* out) const;
  void backward(const complex* in, complex* out) const;

 private:
  int n1_ = 0, n2_ = 0;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
  complex* buf_in_ = nullptr;
  complex* buf_out_ = nullptr;
};

// Angular wavenumber for DFT bin j of an n-point grid with domain length L:
// j < n/2 -> j * 2 pi / L, else (j - n) * 2 pi / L.
inline double dft_wavenumber(int j, int n, double L) {
  int jj = (j < n / 2) ? j : j - n;
  return 2.0 * pi * static_cast<double>(jj) / L;
}

}  // namespace diracedge
