#include "diracedge/flow.hpp"

#include <algorithm>
#include <cmath>

namespace diracedge {

Profile1D constant_profile(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

Profile1D tanh_profile(double a, double b) {
  return {[a, b](double x) { return a + b * std::tanh(x); },
          [b](double x) {
            double c = std::cosh(x);
            return b / (c * c);
          }};
}

Profile1D tanh_reflected_profile(double a, double b, double half_width) {
  double W = half_width;
  auto tri = [W](double x) {
    return (2.0 * W / pi) * std::asin(std::sin(pi * x / (2.0 * W)));
  };
  auto tri_slope = [W](double x) {
    return std::cos(pi * x / (2.0 * W)) >= 0.0 ? 1.0 : -1.0;
  };
  return {[a, b, tri](double x) { return a + b * std::tanh(tri(x)); },
          [b, tri, tri_slope](double x) {
            double c = std::cosh(tri(x));
            return b * tri_slope(x) / (c * c);
          }};
}

ScalarField1D zero_field() {
  auto z = [](double) { return 0.0; };
  return {z, z, z};
}

ScalarField1D constant_field(double c) {
  auto z = [](double) { return 0.0; };
  return {[c](double) { return c; }, z, z};
}

double FlowTables::zeta(int col) const {
  return -0.5 * pi + pi * double(col) / double(grid_.nzeta - 1);
}

double FlowTables::x0(int i) const {
  return grid_.x0_min + (grid_.x0_max - grid_.x0_min) * double(i) /
                            double(grid_.nx0 - 1);
}

namespace {

// Fourth-order slope estimates for uniform samples (one-sided near the ends).
std::vector<double> fd_slopes(const double* f, int n, double dx) {
  std::vector<double> s(static_cast<std::size_t>(n));
  auto at = [&](int i) { return f[i]; };
  for (int i = 0; i < n; ++i) {
    double v;
    if (i >= 2 && i + 2 < n) {
      v = (8.0 * (at(i + 1) - at(i - 1)) - (at(i + 2) - at(i - 2))) /
          (12.0 * dx);
    } else if (i >= 1 && i + 1 < n) {
      v = (at(i + 1) - at(i - 1)) / (2.0 * dx);
    } else if (i == 0) {
      v = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dx);
    } else {
      v = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * dx);
    }
    s[static_cast<std::size_t>(i)] = v;
  }
  return s;
}

struct HermiteCell {
  double value, deriv;
};

HermiteCell hermite_eval(double f0, double f1, double s0, double s1, double dx,
                         double u) {
  // u in [0,1] across the cell.
  double u2 = u * u, u3 = u2 * u;
  double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
  double h10 = u3 - 2.0 * u2 + u;
  double h01 = -2.0 * u3 + 3.0 * u2;
  double h11 = u3 - u2;
  double v = h00 * f0 + h10 * dx * s0 + h01 * f1 + h11 * dx * s1;
  double d00 = 6.0 * u2 - 6.0 * u;
  double d10 = 3.0 * u2 - 4.0 * u + 1.0;
  double d01 = -6.0 * u2 + 6.0 * u;
  double d11 = 3.0 * u2 - 2.0 * u;
  double d = (d00 * f0 + d01 * f1) / dx + d10 * s0 + d11 * s1;
  return {v, d};
}

}  // namespace

double FlowTables::eval(const std::vector<double>& field, int col,
                        double x0v) const {
  int n = grid_.nx0;
  double dx = (grid_.x0_max - grid_.x0_min) / double(n - 1);
  double u = (x0v - grid_.x0_min) / dx;
  int i = std::clamp(int(std::floor(u)), 0, n - 2);
  u -= double(i);
  const double* f = field.data() + static_cast<std::size_t>(col) * n;
  // Local slopes (4th order where possible).
  auto slope = [&](int j) {
    if (j >= 2 && j + 2 < n)
      return (8.0 * (f[j + 1] - f[j - 1]) - (f[j + 2] - f[j - 2])) /
             (12.0 * dx);
    if (j >= 1 && j + 1 < n) return (f[j + 1] - f[j - 1]) / (2.0 * dx);
    if (j == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  };
  return hermite_eval(f[i], f[i + 1], slope(i), slope(i + 1), dx, u).value;
}

double FlowTables::eval_deriv(const std::vector<double>& field, int col,
                              double x0v) const {
  int n = grid_.nx0;
  double dx = (grid_.x0_max - grid_.x0_min) / double(n - 1);
  double u = (x0v - grid_.x0_min) / dx;
  int i = std::clamp(int(std::floor(u)), 0, n - 2);
  u -= double(i);
  const double* f = field.data() + static_cast<std::size_t>(col) * n;
  auto slope = [&](int j) {
    if (j >= 2 && j + 2 < n)
      return (8.0 * (f[j + 1] - f[j - 1]) - (f[j + 2] - f[j - 2])) /
             (12.0 * dx);
    if (j >= 1 && j + 1 < n) return (f[j + 1] - f[j - 1]) / (2.0 * dx);
    if (j == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  };
  return hermite_eval(f[i], f[i + 1], slope(i), slope(i + 1), dx, u).deriv;
}

double FlowTables::invert(int col, double x) const {
  int n = grid_.nx0;
  const double* f = F_.data() + static_cast<std::size_t>(col) * n;
  if (x < f[0] || x > f[n - 1])
    throw numerical_error(
        "flow inversion: target position lies outside the tabulated range; "
        "enlarge the characteristic table");
  int lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (f[mid] <= x ? lo : hi) = mid;
  }
  double dx = (grid_.x0_max - grid_.x0_min) / double(n - 1);
  double x0v = x0(lo) + dx * (x - f[lo]) / std::max(f[lo + 1] - f[lo], 1e-300);
  for (int it = 0; it < 30; ++it) {
    double val = eval(F_, col, x0v);
    double der = eval_deriv(F_, col, x0v);
    double step = (val - x) / der;
    x0v -= step;
    x0v = std::clamp(x0v, grid_.x0_min, grid_.x0_max);
    if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(x0v))) break;
  }
  return x0v;
}

double FlowTables::x_plus() const {
  return eval(F_, grid_.nzeta - 1, 0.0);
}

double FlowTables::x_minus() const { return eval(F_, 0, 0.0); }

std::vector<FlowTables> build_flow_tables(const Profile1D& lambda,
                                          const std::vector<double>& times,
                                          const FlowGrid& grid,
                                          std::function<double(double)> source) {
  require(grid.nx0 >= 8 && grid.nzeta >= 7 && grid.nzeta % 2 == 1,
          "flow tables: grid must have nx0 >= 8 and odd nzeta >= 7");
  require(grid.x0_max > grid.x0_min, "flow tables: empty x0 range");
  require(!times.empty(), "flow tables: no output times");
  for (std::size_t k = 0; k < times.size(); ++k) {
    require(times[k] >= 0.0, "flow tables: times must be nonnegative");
    if (k > 0)
      require(times[k] > times[k - 1], "flow tables: times must increase");
  }

  std::size_t nodes =
      static_cast<std::size_t>(grid.nx0) * static_cast<std::size_t>(grid.nzeta);
  // State: x, zeta, r, I, S per node.
  std::vector<double> x(nodes), z(nodes), r(nodes, 0.0), I(nodes, 0.0),
      S(nodes, 0.0);
  for (int c = 0; c < grid.nzeta; ++c) {
    double zeta0 = -0.5 * pi + pi * double(c) / double(grid.nzeta - 1);
    for (int i = 0; i < grid.nx0; ++i) {
      std::size_t idx = static_cast<std::size_t>(c) * grid.nx0 + i;
      x[idx] = grid.x0_min +
               (grid.x0_max - grid.x0_min) * double(i) / double(grid.nx0 - 1);
      z[idx] = zeta0;
    }
  }

  auto rhs = [&lambda, &source](double xv, double zv, double& dx, double& dz,
                                double& dr, double& dI, double& dS) {
    double lam = lambda.value(xv);
    double dlam = lambda.deriv(xv);
    double s = std::sin(zv), cz = std::cos(zv);
    dx = lam * s;
    dz = -dlam * cz;
    dr = dlam * s;
    dI = lam * lam;
    dS = source ? source(xv) : 0.0;
  };

  std::vector<double> kx(nodes), kz(nodes);
  std::vector<double> ax(nodes), az(nodes), ar(nodes), aI(nodes), aS(nodes);

  auto rk4_step = [&](double dt) {
    // Accumulators start with the k1 contribution.
    for (std::size_t idx = 0; idx < nodes; ++idx) {
      double dx, dz, dr, dI, dS;
      rhs(x[idx], z[idx], dx, dz, dr, dI, dS);
      ax[idx] = dx;
      az[idx] = dz;
      ar[idx] = dr;
      aI[idx] = dI;
      aS[idx] = dS;
      kx[idx] = x[idx] + 0.5 * dt * dx;
      kz[idx] = z[idx] + 0.5 * dt * dz;
    }
    std::vector<double>& mx = kx;
    std::vector<double>& mz = kz;
    for (int stage = 1; stage < 4; ++stage) {
      double w = (stage == 3) ? 1.0 : 2.0;
      double adv = (stage == 1) ? 0.5 : (stage == 2 ? 1.0 : 0.0);
      for (std::size_t idx = 0; idx < nodes; ++idx) {
        double dx, dz, dr, dI, dS;
        rhs(mx[idx], mz[idx], dx, dz, dr, dI, dS);
        ax[idx] += w * dx;
        az[idx] += w * dz;
        ar[idx] += w * dr;
        aI[idx] += w * dI;
        aS[idx] += w * dS;
        if (stage < 3) {
          mx[idx] = x[idx] + adv * dt * dx;
          mz[idx] = z[idx] + adv * dt * dz;
        }
      }
    }
    for (std::size_t idx = 0; idx < nodes; ++idx) {
      x[idx] += dt * ax[idx] / 6.0;
      z[idx] += dt * az[idx] / 6.0;
      r[idx] += dt * ar[idx] / 6.0;
      I[idx] += dt * aI[idx] / 6.0;
      S[idx] += dt * aS[idx] / 6.0;
    }
  };

  std::vector<FlowTables> out;
  out.reserve(times.size());
  double t_now = 0.0;
  const double dt_target = 2e-3;
  for (double t_next : times) {
    double span = t_next - t_now;
    if (span > 0.0) {
      int steps = std::max(1, int(std::ceil(span / dt_target)));
      double dt = span / double(steps);
      for (int s = 0; s < steps; ++s) rk4_step(dt);
    }
    t_now = t_next;

    FlowTables tab;
    tab.t_ = t_next;
    tab.grid_ = grid;
    tab.F_ = x;
    tab.G_ = z;
    tab.r_ = r;
    tab.I_ = I;
    tab.S_ = S;
    tab.dF_.resize(nodes);
    double dx0 = (grid.x0_max - grid.x0_min) / double(grid.nx0 - 1);
    for (int c = 0; c < grid.nzeta; ++c) {
      auto s = fd_slopes(x.data() + static_cast<std::size_t>(c) * grid.nx0,
                         grid.nx0, dx0);
      std::copy(s.begin(), s.end(),
                tab.dF_.begin() + static_cast<std::size_t>(c) * grid.nx0);
    }
    double min_slope = *std::min_element(tab.dF_.begin(), tab.dF_.end());
    if (min_slope < 0.5)
      throw numerical_error(
          "characteristic map is no longer a uniform diffeomorphism: "
          "min d F / d x0 = " + std::to_string(min_slope) +
          " < 1/2 at t = " + std::to_string(t_next) +
          "; reduce the final time");
    out.push_back(std::move(tab));
  }
  return out;
}

FlowTables build_flow_tables(const Profile1D& lambda, double t,
                             const FlowGrid& grid,
                             std::function<double(double)> source) {
  return build_flow_tables(lambda, std::vector<double>{t}, grid,
                           std::move(source))
      .front();
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  double h = (b - a) / double(n);
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}
}  // namespace

double lambda_antiderivative(const Profile1D& lambda, double x) {
  if (x == 0.0) return 0.0;
  auto f = [&lambda](double y) { return 1.0 / lambda.value(y); };
  int n = std::max(64, int(std::ceil(std::abs(x) * 512)) * 2);
  return simpson(f, 0.0, x, n);
}

double lambda_antiderivative_inverse(const Profile1D& lambda, double target) {
  double x = target * lambda.value(0.0);
  for (int it = 0; it < 60; ++it) {
    double val = lambda_antiderivative(lambda, x) - target;
    double step = val * lambda.value(x);
    x -= step;
    if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace diracedge
