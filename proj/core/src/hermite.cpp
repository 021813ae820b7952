#include "diracedge/hermite.hpp"

#include <cmath>

namespace diracedge {

namespace {
constexpr double kQuarterRootPi = 1.3313353638003897;  // pi^{1/4}
}

double hermite_function(int n, double x) {
  require(n >= -1, "hermite_function: order must be >= -1");
  if (n < 0) return 0.0;
  double g0 = std::exp(-0.5 * x * x) / kQuarterRootPi;
  if (n == 0) return g0;
  double gm = g0;
  double g = std::sqrt(2.0) * x * g0;  // g_1
  for (int k = 1; k < n; ++k) {
    double gp = (std::sqrt(2.0) * x * g - std::sqrt(double(k)) * gm) /
                std::sqrt(double(k + 1));
    gm = g;
    g = gp;
  }
  return g;
}

std::vector<double> hermite_functions(int nmax, double x) {
  require(nmax >= 0, "hermite_functions: nmax must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  out[0] = std::exp(-0.5 * x * x) / kQuarterRootPi;
  if (nmax == 0) return out;
  out[1] = std::sqrt(2.0) * x * out[0];
  for (int k = 1; k < nmax; ++k) {
    out[static_cast<std::size_t>(k) + 1] =
        (std::sqrt(2.0) * x * out[static_cast<std::size_t>(k)] -
         std::sqrt(double(k)) * out[static_cast<std::size_t>(k) - 1]) /
        std::sqrt(double(k + 1));
  }
  return out;
}

double scaled_hermite(int n, double h, double x) {
  require(h > 0.0, "scaled_hermite: h must be positive");
  return std::pow(h, -0.25) * hermite_function(n, x / std::sqrt(h));
}

double ladder_up_coeff(int n, double h) {
  require(n >= 0 && h > 0.0, "ladder_up_coeff: need n >= 0, h > 0");
  return std::sqrt(2.0 * h * double(n + 1));
}

double ladder_down_coeff(int n, double h) {
  require(n >= 0 && h > 0.0, "ladder_down_coeff: need n >= 0, h > 0");
  return std::sqrt(2.0 * h * double(n));
}

Eigen::Vector2d transverse_profile(int n, double h, double x) {
  require(n >= 0, "transverse_profile: order must be >= 0");
  return {scaled_hermite(n, h, x),
          n > 0 ? scaled_hermite(n - 1, h, x) : 0.0};
}

std::vector<Eigen::Vector2cd> transverse_mode_coefficients(
    const std::function<Eigen::Vector2cd(double)>& F, double h, int nmax,
    double x_max, int npts) {
  require(nmax >= 0 && npts >= 2 && x_max > 0.0,
          "transverse_mode_coefficients: bad quadrature parameters");
  std::vector<Eigen::Vector2cd> coeffs(static_cast<std::size_t>(nmax) + 1,
                                       Eigen::Vector2cd::Zero());
  double dx = 2.0 * x_max / double(npts - 1);
  for (int j = 0; j < npts; ++j) {
    double x = -x_max + dx * double(j);
    double w = (j == 0 || j == npts - 1) ? 0.5 * dx : dx;
    Eigen::Vector2cd f = F(x);
    std::vector<double> g = hermite_functions(nmax, x / std::sqrt(h));
    double scale = std::pow(h, -0.25) * w;
    for (int n = 0; n <= nmax; ++n) {
      auto& c = coeffs[static_cast<std::size_t>(n)];
      c(0) += f(0) * g[static_cast<std::size_t>(n)] * scale;
      if (n > 0) c(1) += f(1) * g[static_cast<std::size_t>(n) - 1] * scale;
    }
  }
  return coeffs;
}

Eigen::Vector2cd block_envelope(
    const std::function<Eigen::Vector2cd(double, double)>& A, int n, double y,
    double x_max, int npts) {
  require(n >= 1, "block_envelope: order must be >= 1");
  require(npts >= 2 && x_max > 0.0, "block_envelope: bad quadrature");
  double x1 = y / std::sqrt(2.0 * double(n));
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  double dx = 2.0 * x_max / double(npts - 1);
  for (int j = 0; j < npts; ++j) {
    double x2 = -x_max + dx * double(j);
    double w = (j == 0 || j == npts - 1) ? 0.5 * dx : dx;
    std::vector<double> g = hermite_functions(n, x2);
    Eigen::Vector2cd a = A(x1, x2);
    out(0) += a(0) * g[static_cast<std::size_t>(n)] * w;
    out(1) += a(1) * g[static_cast<std::size_t>(n) - 1] * w;
  }
  return out * std::pow(2.0 * double(n), -0.25);
}

}  // namespace diracedge
