#include "diracedge/fft.hpp"

#include <fftw3.h>

#include <cstring>

namespace diracedge {

namespace {
fftw_complex* as_fftw(complex* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

Fft1D::Fft1D(int n) : n_(n) {
  require(n > 0, "Fft1D: size must be positive");
  buf_in_ = static_cast<complex*>(fftw_malloc(sizeof(complex) * n));
  buf_out_ = static_cast<complex*>(fftw_malloc(sizeof(complex) * n));
  plan_fwd_ = fftw_plan_dft_1d(n, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_1d(n, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw numerical_error("Fft1D: planner failed");
}

Fft1D::~Fft1D() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft1D::forward(const complex* in, complex* out) const {
  std::memcpy(buf_in_, in, sizeof(complex) * static_cast<std::size_t>(n_));
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, sizeof(complex) * static_cast<std::size_t>(n_));
}

void Fft1D::backward(const complex* in, complex* out) const {
  std::memcpy(buf_in_, in, sizeof(complex) * static_cast<std::size_t>(n_));
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  double inv = 1.0 / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) out[i] = buf_out_[i] * inv;
}

Fft2D::Fft2D(int n1, int n2) : n1_(n1), n2_(n2) {
  require(n1 > 0 && n2 > 0, "Fft2D: sizes must be positive");
  std::size_t n = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  buf_in_ = static_cast<complex*>(fftw_malloc(sizeof(complex) * n));
  buf_out_ = static_cast<complex*>(fftw_malloc(sizeof(complex) * n));
  plan_fwd_ = fftw_plan_dft_2d(n1, n2, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n1, n2, as_fftw(buf_in_), as_fftw(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_fwd_ || !plan_bwd_) throw numerical_error("Fft2D: planner failed");
}

Fft2D::~Fft2D() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft2D::forward(const complex* in, complex* out) const {
  std::size_t n = static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  std::memcpy(buf_in_, in, sizeof(complex) * n);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, sizeof(complex) * n);
}

void Fft2D::backward(const complex* in, complex* out) const {
  std::size_t n = static_cast<std::size_t>(n1_) * static_cast<std::size_t>(n2_);
  std::memcpy(buf_in_, in, sizeof(complex) * n);
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  double inv = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = buf_out_[i] * inv;
}

}  // namespace diracedge
