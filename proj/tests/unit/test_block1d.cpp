#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <doctest.h>

#include "diracedge/block1d.hpp"

using namespace diracedge;

namespace {

// Smooth packet well inside the box so periodic wrap-around is negligible.
complex packet(double x, double center, double width, double k) {
  double arg = (x - center) / width;
  return std::exp(-0.5 * arg * arg) * std::exp(complex(0.0, k * x));
}

Eigen::Vector2cd gaussian_envelope(double x) {
  double g = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  return Eigen::Vector2cd(0.8 * g, 0.6 * g);
}

}  // namespace

TEST_SUITE("block1d") {

TEST_CASE("initial-state builders carry unit mass") {
  Grid1 grid{8.0, 1024};
  SpinorField1 f = concentrated_initial(grid, 0.05, gaussian_envelope);
  CHECK(f.squared_norm() == doctest::Approx(1.0).epsilon(1e-6));
  auto a = [](double y) {
    return complex(std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y));
  };
  std::vector<complex> g = traveling_initial(grid, 0.04, a);
  double mass = 0.0;
  for (const complex& v : g) mass += std::norm(v);
  mass *= grid.dx();
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("both evolvers conserve mass") {
  Grid1 grid{8.0, 1024};
  ModelCoefficients mc;
  mc.lambda = tanh_reflected_profile(1.0, 0.3, 2.0);
  mc.mu = constant_field(0.1);
  mc.s = [](double) { return 0.3; };

  BlockWaveEvolver block(grid, mc, 2, 0.05);
  SpinorField1 f0 = concentrated_initial(grid, 0.05, gaussian_envelope);
  SpinorField1 fT = block.evolve(f0, 0.3);
  CHECK(std::abs(fT.squared_norm() / f0.squared_norm() - 1.0) < 1e-6);

  ScalarWaveEvolver scalar(grid, mc, 0.02);
  std::vector<complex> g0(grid.n);
  for (int i = 0; i < grid.n; ++i) g0[i] = packet(grid.x(i), -0.8, 0.3, 2.0);
  std::vector<complex> gT = scalar.evolve(g0, 0.4);
  auto mass = [&](const std::vector<complex>& v) {
    double s = 0.0;
    for (const complex& z : v) s += std::norm(z);
    return s * grid.dx();
  };
  CHECK(std::abs(mass(gT) / mass(g0) - 1.0) < 1e-6);
}

TEST_CASE("scalar transport follows the characteristics as a half-density") {
  // Without a dispersive coefficient the scalar operator is pure transport
  // lambda D + lambda'/2i, whose exact solution carries the initial state
  // along the flow of lambda with the Jacobian half-density factor.
  Grid1 grid{8.0, 2048};
  ModelCoefficients mc;
  mc.lambda = tanh_reflected_profile(1.0, 0.3, 2.0);
  double T = 0.5;
  ScalarWaveEvolver ev(grid, mc, 0.1);

  std::vector<complex> f0(grid.n);
  for (int i = 0; i < grid.n; ++i) f0[i] = packet(grid.x(i), -0.8, 0.25, 3.0);
  std::vector<complex> fT = ev.evolve(f0, T);

  // Backward characteristic and Jacobian by RK4 per grid point.
  auto pulled_back = [&](double x) {
    double J = 1.0;
    const int nsteps = 200;
    double ds = T / nsteps;
    for (int k = 0; k < nsteps; ++k) {
      auto rhs = [&](double xx, double JJ, double& dx, double& dJ) {
        dx = -mc.lambda.value(xx);
        dJ = -mc.lambda.deriv(xx) * JJ;
      };
      double dx1, dJ1, dx2, dJ2, dx3, dJ3, dx4, dJ4;
      rhs(x, J, dx1, dJ1);
      rhs(x + 0.5 * ds * dx1, J + 0.5 * ds * dJ1, dx2, dJ2);
      rhs(x + 0.5 * ds * dx2, J + 0.5 * ds * dJ2, dx3, dJ3);
      rhs(x + ds * dx3, J + ds * dJ3, dx4, dJ4);
      x += ds / 6.0 * (dx1 + 2 * dx2 + 2 * dx3 + dx4);
      J += ds / 6.0 * (dJ1 + 2 * dJ2 + 2 * dJ3 + dJ4);
    }
    return std::pair<double, double>(x, J);
  };

  double err2 = 0.0, ref2 = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    auto [y, J] = pulled_back(grid.x(i));
    complex want = std::sqrt(J) * packet(y, -0.8, 0.25, 3.0);
    err2 += std::norm(fT[i] - want);
    ref2 += std::norm(want);
  }
  CHECK(std::sqrt(err2 / ref2) < 5e-5);
}

TEST_CASE("block evolution matches the constant-coefficient closed form") {
  Grid1 grid{8.0, 512};
  ModelCoefficients mc = plain_speed(constant_profile(1.0));
  double eps = 0.05, T = 0.2;
  BlockWaveEvolver ev(grid, mc, 1, eps);
  SpinorField1 f0 = concentrated_initial(grid, eps, gaussian_envelope);
  SpinorField1 fT = ev.evolve(f0, T, 0.25 * ev.dt_bound());

  // Plane-wave propagator: f_hat(k) evolves by exp(-i T M(k) / eps) with
  // M(k) = eps k sigma_3 + sigma_1.
  int n = grid.n;
  const complex iu(0.0, 1.0);
  // Forward DFT (O(n^2), fine at this size), diagonal update, inverse DFT.
  std::vector<complex> F0(n), F1(n);
  for (int j = 0; j < n; ++j) {
    int jj = j < n / 2 ? j : j - n;
    double k = 2.0 * M_PI * jj / grid.L;
    complex s0{}, s1{};
    for (int i = 0; i < n; ++i) {
      complex ph = std::exp(-iu * k * grid.x(i));
      s0 += ph * f0.c0[i];
      s1 += ph * f0.c1[i];
    }
    double ek = eps * k;
    double br = std::sqrt(1.0 + ek * ek);
    double c = std::cos(T * br / eps), s = std::sin(T * br / eps);
    // exp(-i tau M) = cos(tau|M|) I - i sin(tau|M|) M / |M|
    complex a0 = (c - iu * s * ek / br) * s0 + (-iu * s / br) * s1;
    complex a1 = (-iu * s / br) * s0 + (c + iu * s * ek / br) * s1;
    F0[j] = a0;
    F1[j] = a1;
  }
  double err2 = 0.0, ref2 = 0.0;
  for (int i = 0; i < n; ++i) {
    complex s0{}, s1{};
    for (int j = 0; j < n; ++j) {
      int jj = j < n / 2 ? j : j - n;
      double k = 2.0 * M_PI * jj / grid.L;
      complex ph = std::exp(iu * k * grid.x(i));
      s0 += ph * F0[j];
      s1 += ph * F1[j];
    }
    s0 /= static_cast<double>(n);
    s1 /= static_cast<double>(n);
    err2 += std::norm(fT.c0[i] - s0) + std::norm(fT.c1[i] - s1);
    ref2 += std::norm(s0) + std::norm(s1);
  }
  CHECK(std::sqrt(err2 / ref2) < 1e-7);
}

TEST_CASE("oversized steps are rejected with the bound in the message") {
  Grid1 grid{8.0, 256};
  ModelCoefficients mc = plain_speed(constant_profile(1.0));
  BlockWaveEvolver ev(grid, mc, 1, 0.05);
  SpinorField1 f0 = concentrated_initial(grid, 0.05, gaussian_envelope);
  CHECK_THROWS_AS(ev.evolve(f0, 0.1, 10.0 * ev.dt_bound()), numerical_error);
}

}  // TEST_SUITE
