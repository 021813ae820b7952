#include "diracedge/eikonal.hpp"

#include <algorithm>
#include <cmath>

namespace diracedge {

ModelCoefficients plain_speed(Profile1D lambda) {
  return ModelCoefficients{std::move(lambda), zero_field(), {}};
}

namespace {

// Six-point Lagrange weights for nodes {0,...,5} at fractional position tf
// (tf in [2,3] for interior points; clamped stencils use tf outside that).
void lagrange6(double tf, double* w) {
  static const double denom[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
  for (int a = 0; a < 6; ++a) {
    double p = 1.0;
    for (int b = 0; b < 6; ++b)
      if (b != a) p *= tf - double(b);
    w[a] = p / denom[a];
  }
}

struct Stencil {
  int i0;
  double w[6];
};

Stencil make_stencil(double u, int n) {
  // u is the fractional index in [0, n-1].
  int i0 = std::clamp(int(std::floor(u)) - 2, 0, n - 6);
  Stencil s;
  s.i0 = i0;
  lagrange6(u - double(i0), s.w);
  return s;
}

// First-derivative finite differences on a uniform grid, sixth order in the
// interior with one-sided closures near the ends (the closures only matter
// outside the region quadratures ever touch).
void fd_deriv(const double* f, int n, std::ptrdiff_t stride, double h,
              double* out, std::ptrdiff_t out_stride) {
  auto at = [&](int j) { return f[stride * j]; };
  for (int j = 0; j < n; ++j) {
    double v;
    if (j >= 3 && j + 3 < n) {
      v = (-at(j - 3) + 9.0 * at(j - 2) - 45.0 * at(j - 1) + 45.0 * at(j + 1) -
           9.0 * at(j + 2) + at(j + 3)) /
          (60.0 * h);
    } else if (j >= 2 && j + 2 < n) {
      v = (at(j - 2) - 8.0 * at(j - 1) + 8.0 * at(j + 1) - at(j + 2)) /
          (12.0 * h);
    } else if (j == 0) {
      v = (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) -
           3.0 * at(4)) /
          (12.0 * h);
    } else if (j == 1) {
      v = (-3.0 * at(0) - 10.0 * at(1) + 18.0 * at(2) - 6.0 * at(3) + at(4)) /
          (12.0 * h);
    } else if (j == n - 2) {
      v = (3.0 * at(n - 1) + 10.0 * at(n - 2) - 18.0 * at(n - 3) +
           6.0 * at(n - 4) - at(n - 5)) /
          (12.0 * h);
    } else {
      v = (25.0 * at(n - 1) - 48.0 * at(n - 2) + 36.0 * at(n - 3) -
           16.0 * at(n - 4) + 3.0 * at(n - 5)) /
          (12.0 * h);
    }
    out[out_stride * j] = v;
  }
}

// Antiderivative of mu / lambda^3 from 0, tabulated once on a dense uniform
// grid and evaluated with cubic Hermite pieces using the exact analytic slope.
class MuTable {
 public:
  MuTable(const ModelCoefficients& mc, double xmin, double xmax) {
    xmin_ = xmin;
    n_ = 4001;
    dx_ = (xmax - xmin) / double(n_ - 1);
    auto g = [&mc](double x) {
      double lam = mc.lambda.value(x);
      return mc.mu.value(x) / (lam * lam * lam);
    };
    g_ = g;
    val_.resize(static_cast<std::size_t>(n_));
    // Value at the left end by composite Simpson from 0, then cell-by-cell
    // Simpson accumulation across the grid.
    val_[0] = integrate_from_zero(g, xmin);
    for (int k = 0; k + 1 < n_; ++k) {
      double a = xmin_ + dx_ * k, b = a + dx_;
      val_[static_cast<std::size_t>(k) + 1] =
          val_[static_cast<std::size_t>(k)] +
          (dx_ / 6.0) * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
    }
  }

  double eval(double x) const {
    double u = (x - xmin_) / dx_;
    int i = std::clamp(int(std::floor(u)), 0, n_ - 2);
    double s = u - double(i);
    double xa = xmin_ + dx_ * i;
    double f0 = val_[static_cast<std::size_t>(i)];
    double f1 = val_[static_cast<std::size_t>(i) + 1];
    double d0 = g_(xa), d1 = g_(xa + dx_);
    double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * f0 + (s3 - 2.0 * s2 + s) * dx_ * d0 +
           (-2.0 * s3 + 3.0 * s2) * f1 + (s3 - s2) * dx_ * d1;
  }

 private:
  static double integrate_from_zero(const std::function<double(double)>& g,
                                    double x) {
    if (x == 0.0) return 0.0;
    int n = std::max(64, int(std::ceil(std::abs(x) * 512)) * 2);
    double h = x / double(n);
    double s = g(0.0) + g(x);
    for (int i = 1; i < n; ++i) s += g(h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  }

  double xmin_ = 0.0, dx_ = 0.0;
  int n_ = 0;
  std::function<double(double)> g_;
  std::vector<double> val_;
};

}  // namespace

double PhaseTables::zeta(int c) const {
  return -0.5 * pi + pi * double(c) / double(nzeta_ - 1);
}

double PhaseTables::xnode(int i) const {
  return mesh_.x_min +
         (mesh_.x_max - mesh_.x_min) * double(i) / double(mesh_.nx - 1);
}

namespace {

double gather36(const std::vector<double>& f, int nz, const Stencil& sx,
                const Stencil& sz) {
  double acc = 0.0;
  for (int a = 0; a < 6; ++a) {
    const double* row = f.data() + static_cast<std::size_t>(sx.i0 + a) * nz +
                        sz.i0;
    double r = 0.0;
    for (int b = 0; b < 6; ++b) r += sz.w[b] * row[b];
    acc += sx.w[a] * r;
  }
  return acc;
}

}  // namespace

PhaseTables::FieldPoint PhaseTables::fields(double x, double xi) const {
  double zv = std::atan(xi);
  double ux = (x - mesh_.x_min) * double(mesh_.nx - 1) /
              (mesh_.x_max - mesh_.x_min);
  double uz = (zv + 0.5 * pi) * double(nzeta_ - 1) / pi;
  Stencil sx = make_stencil(ux, mesh_.nx);
  Stencil sz = make_stencil(uz, nzeta_);
  FieldPoint p;
  p.H = gather36(H_, nzeta_, sx, sz);
  p.dzH = gather36(dzH_, nzeta_, sx, sz);
  p.A0 = gather36(A0_, nzeta_, sx, sz);
  p.dxA0 = gather36(dxA0_, nzeta_, sx, sz);
  p.W = gather36(W_, nzeta_, sx, sz);
  p.dxW = gather36(dxW_, nzeta_, sx, sz);
  p.rest = gather36(rest_, nzeta_, sx, sz);
  p.gamma = gather36(gamma_, nzeta_, sx, sz);
  p.dxgamma = gather36(dxgamma_, nzeta_, sx, sz);
  p.Ssrc = gather36(Ssrc_, nzeta_, sx, sz);
  p.dxSsrc = gather36(dxSsrc_, nzeta_, sx, sz);
  return p;
}

double PhaseTables::phi(double x, double xi) const {
  FieldPoint p = fields(x, xi);
  return p.H * xi - p.rest / std::sqrt(1.0 + xi * xi);
}

double PhaseTables::dx_phi(double x, double xi) const {
  return fields(x, xi).W * std::sqrt(1.0 + xi * xi);
}

double PhaseTables::dxi_phi(double x, double xi) const {
  return fields(x, xi).H;
}

double PhaseTables::dxi2_phi(double x, double xi) const {
  return fields(x, xi).dzH / (1.0 + xi * xi);
}

double PhaseTables::dt_phi(double x, double xi) const {
  double v = dx_phi(x, xi);
  return -mc_.lambda.value(x) * std::hypot(1.0, v);
}

std::optional<double> PhaseTables::stationary_xi(double x) const {
  double ux = (x - mesh_.x_min) * double(mesh_.nx - 1) /
              (mesh_.x_max - mesh_.x_min);
  Stencil sx = make_stencil(ux, mesh_.nx);
  auto Hz = [&](double zv) {
    double uz = (zv + 0.5 * pi) * double(nzeta_ - 1) / pi;
    Stencil sz = make_stencil(uz, nzeta_);
    return gather36(H_, nzeta_, sx, sz);
  };
  double lo = -0.5 * pi, hi = 0.5 * pi;
  if (!(Hz(lo) > 0.0 && Hz(hi) < 0.0)) return std::nullopt;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (Hz(mid) > 0.0 ? lo : hi) = mid;
  }
  double z = std::clamp(0.5 * (lo + hi), -1.56, 1.56);
  return std::tan(z);
}

std::vector<PhaseTables> make_phase_tables(const ModelCoefficients& mc,
                                           const std::vector<double>& times,
                                           const PhaseMesh& mesh,
                                           const FlowGrid& flow) {
  require(mesh.nx >= 8, "phase tables: mesh needs at least 8 x nodes");
  require(mesh.x_max > mesh.x_min, "phase tables: empty mesh range");
  require(mesh.x_min >= flow.x0_min && mesh.x_max <= flow.x0_max,
          "phase tables: mesh must lie inside the characteristic x0 range");

  auto tabs = build_flow_tables(mc.lambda, times, flow, mc.s);
  MuTable M(mc, flow.x0_min, flow.x0_max);

  std::vector<PhaseTables> out;
  out.reserve(tabs.size());
  for (const FlowTables& tab : tabs) {
    PhaseTables pt;
    pt.t_ = tab.t();
    pt.mesh_ = mesh;
    pt.nzeta_ = tab.ncols();
    pt.mc_ = mc;
    pt.x_plus_ = tab.x_plus();
    pt.x_minus_ = tab.x_minus();

    int nx = mesh.nx, nz = pt.nzeta_;
    std::size_t nodes = static_cast<std::size_t>(nx) * nz;
    pt.H_.resize(nodes);
    pt.A0_.resize(nodes);
    pt.W_.resize(nodes);
    pt.rest_.resize(nodes);
    pt.gamma_.resize(nodes);
    pt.Ssrc_.resize(nodes);

    for (int i = 0; i < nx; ++i) {
      double xv = pt.xnode(i);
      double Mx = M.eval(xv);
      for (int c = 0; c < nz; ++c) {
        std::size_t idx = static_cast<std::size_t>(i) * nz + c;
        double x0s = tab.invert(c, xv);
        double lam0 = mc.lambda.value(x0s);
        pt.H_[idx] = x0s;
        pt.A0_[idx] = 1.0 / std::sqrt(tab.eval(tab.dF(), c, x0s));
        double G = tab.eval(tab.G(), c, x0s);
        double rv = tab.eval(tab.r(), c, x0s);
        pt.W_[idx] = std::sin(G) * std::exp(-rv);
        pt.rest_[idx] = tab.eval(tab.I(), c, x0s) / lam0;
        pt.gamma_[idx] = lam0 * lam0 * (Mx - M.eval(x0s));
        pt.Ssrc_[idx] = tab.eval(tab.S(), c, x0s);
      }
    }

    // x-derivative fields (stride nz) and the zeta-derivative of H
    // (contiguous rows).
    pt.dzH_.resize(nodes);
    pt.dxA0_.resize(nodes);
    pt.dxW_.resize(nodes);
    pt.dxgamma_.resize(nodes);
    pt.dxSsrc_.resize(nodes);
    double hx = (mesh.x_max - mesh.x_min) / double(nx - 1);
    double hz = pi / double(nz - 1);
    for (int c = 0; c < nz; ++c) {
      fd_deriv(pt.A0_.data() + c, nx, nz, hx, pt.dxA0_.data() + c, nz);
      fd_deriv(pt.W_.data() + c, nx, nz, hx, pt.dxW_.data() + c, nz);
      fd_deriv(pt.gamma_.data() + c, nx, nz, hx, pt.dxgamma_.data() + c, nz);
      fd_deriv(pt.Ssrc_.data() + c, nx, nz, hx, pt.dxSsrc_.data() + c, nz);
    }
    for (int i = 0; i < nx; ++i) {
      const double* row = pt.H_.data() + static_cast<std::size_t>(i) * nz;
      fd_deriv(row, nz, 1, hz, pt.dzH_.data() + static_cast<std::size_t>(i) * nz,
               1);
    }
    pt.max_absH_ = 0.0;
    for (double h : pt.H_) pt.max_absH_ = std::max(pt.max_absH_, std::abs(h));
    out.push_back(std::move(pt));
  }
  return out;
}

PhaseTables make_phase_tables(const ModelCoefficients& mc, double t,
                              const PhaseMesh& mesh, const FlowGrid& flow) {
  return make_phase_tables(mc, std::vector<double>{t}, mesh, flow).front();
}

}  // namespace diracedge
