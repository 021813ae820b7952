#pragma once

#include <vector>

#include "diracedge/common.hpp"
#include "diracedge/fft.hpp"

namespace diracedge {

// Uniform periodic grid on [-L1/2, L1/2) x [-L2/2, L2/2).  Point counts must
// be powers of two.  Storage convention throughout: row-major with x1 slow,
// index i1 * n2 + i2.
struct Grid2 {
  double L1 = 0.0, L2 = 0.0;
  int n1 = 0, n2 = 0;

  Grid2() = default;
  Grid2(double L1_, double L2_, int n1_, int n2_)
      : L1(L1_), L2(L2_), n1(n1_), n2(n2_) {
    require(L1 > 0 && L2 > 0, "Grid2: box lengths must be positive");
    require(n1 > 0 && (n1 & (n1 - 1)) == 0 && n2 > 0 && (n2 & (n2 - 1)) == 0,
            "Grid2: point counts must be powers of two");
  }

  double dx1() const { return L1 / n1; }
  double dx2() const { return L2 / n2; }
  double x1(int i) const { return -0.5 * L1 + i * dx1(); }
  double x2(int i) const { return -0.5 * L2 + i * dx2(); }
  double k1(int i) const { return dft_wavenumber(i, n1, L1); }
  double k2(int i) const { return dft_wavenumber(i, n2, L2); }
  std::size_t size() const {
    return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);
  }
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * static_cast<std::size_t>(n2) +
           static_cast<std::size_t>(i2);
  }
  double cell_area() const { return dx1() * dx2(); }

  // Shortest periodic displacement from a to x, per axis.
  static double wrap(double d, double L) {
    while (d > 0.5 * L) d -= L;
    while (d < -0.5 * L) d += L;
    return d;
  }
};

// Two-component complex field on a Grid2.
struct SpinorField {
  Grid2 grid;
  std::vector<complex> c0, c1;

  SpinorField() = default;
  explicit SpinorField(const Grid2& g)
      : grid(g), c0(g.size(), complex{}), c1(g.size(), complex{}) {}

  double squared_norm() const {
    double s = 0.0;
    for (std::size_t i = 0; i < c0.size(); ++i)
      s += std::norm(c0[i]) + std::norm(c1[i]);
    return s * grid.cell_area();
  }

  complex inner(const SpinorField& other) const {
    complex s{};
    for (std::size_t i = 0; i < c0.size(); ++i)
      s += std::conj(c0[i]) * other.c0[i] + std::conj(c1[i]) * other.c1[i];
    return s * grid.cell_area();
  }

  double max_abs() const {
    double m = 0.0;
    for (std::size_t i = 0; i < c0.size(); ++i)
      m = std::max(m, std::sqrt(std::norm(c0[i]) + std::norm(c1[i])));
    return m;
  }
};

}  // namespace diracedge
