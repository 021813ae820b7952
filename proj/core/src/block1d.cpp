#include "diracedge/block1d.hpp"

#include <algorithm>
#include <cmath>

#include "diracedge/fft.hpp"

namespace diracedge {

namespace {

// Shared pseudospectral machinery: sampled coefficients, spectral
// derivatives, and an RK4 loop over an arbitrary right-hand side applier.
struct CoefficientSamples {
  std::vector<double> lam, dlam, mu, dmu, d2mu, s, k;
  double lam_max = 0.0, dlam_max = 0.0, mu_max = 0.0, dmu_max = 0.0,
         d2mu_max = 0.0, s_max = 0.0, k_max = 0.0;
  bool mu_zero = true;

  CoefficientSamples(const Grid1& g, const ModelCoefficients& mc) {
    int n = g.n;
    lam.resize(n);
    dlam.resize(n);
    mu.resize(n);
    dmu.resize(n);
    d2mu.resize(n);
    s.resize(n);
    k.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = g.x(i);
      lam[i] = mc.lambda.value(x);
      require(lam[i] > 0.0, "wave evolver: lambda must be strictly positive");
      dlam[i] = mc.lambda.deriv(x);
      mu[i] = mc.mu.value(x);
      dmu[i] = mc.mu.deriv(x);
      d2mu[i] = mc.mu.second(x);
      s[i] = mc.s ? mc.s(x) : 0.0;
      k[i] = dft_wavenumber(i, n, g.L);
      if (mu[i] != 0.0 || dmu[i] != 0.0 || d2mu[i] != 0.0) mu_zero = false;
      lam_max = std::max(lam_max, lam[i]);
      dlam_max = std::max(dlam_max, std::abs(dlam[i]));
      mu_max = std::max(mu_max, std::abs(mu[i]));
      dmu_max = std::max(dmu_max, std::abs(dmu[i]));
      d2mu_max = std::max(d2mu_max, std::abs(d2mu[i]));
      s_max = std::max(s_max, std::abs(s[i]));
      k_max = std::max(k_max, std::abs(k[i]));
    }
  }
};

using Applier = std::function<void(const std::vector<complex>*,
                                   std::vector<complex>*)>;

// d_t f = -i A f integrated by classical RK4 with fixed step.
template <int NC>
void rk4_evolve(const Applier& apply, std::vector<complex>* f, double T,
                double dt) {
  int steps = std::max(1, int(std::ceil(T / dt)));
  double h = T / steps;
  std::size_t n = f[0].size();
  std::vector<complex> y[NC], k1[NC], k2[NC], k3[NC], k4[NC];
  for (int c = 0; c < NC; ++c) {
    y[c].resize(n);
    k1[c].resize(n);
    k2[c].resize(n);
    k3[c].resize(n);
    k4[c].resize(n);
  }
  for (int step = 0; step < steps; ++step) {
    apply(f, k1);
    for (int c = 0; c < NC; ++c)
      for (std::size_t i = 0; i < n; ++i)
        y[c][i] = f[c][i] - iu * (0.5 * h) * k1[c][i];
    apply(y, k2);
    for (int c = 0; c < NC; ++c)
      for (std::size_t i = 0; i < n; ++i)
        y[c][i] = f[c][i] - iu * (0.5 * h) * k2[c][i];
    apply(y, k3);
    for (int c = 0; c < NC; ++c)
      for (std::size_t i = 0; i < n; ++i)
        y[c][i] = f[c][i] - iu * h * k3[c][i];
    apply(y, k4);
    for (int c = 0; c < NC; ++c)
      for (std::size_t i = 0; i < n; ++i)
        f[c][i] -= iu * (h / 6.0) *
                   (k1[c][i] + 2.0 * k2[c][i] + 2.0 * k3[c][i] + k4[c][i]);
  }
}

void check_dt(double requested, double bound) {
  if (requested > bound)
    throw numerical_error(
        "wave evolver: requested time step " + std::to_string(requested) +
        " exceeds the stability bound " + std::to_string(bound) +
        "; reduce dt");
}

}  // namespace

struct BlockWaveEvolver::Impl {
  Grid1 grid;
  CoefficientSamples cs;
  int n_mode;
  double eps;
  Fft1D fft;
  double bound;
  mutable std::vector<complex> hat, Df0, Df1, DmuD0, DmuD1, tmp;

  Impl(const Grid1& g, const ModelCoefficients& mc, int nm, double e)
      : grid(g), cs(g, mc), n_mode(nm), eps(e), fft(g.n) {
    require(n_mode >= 1, "block evolver: mode index must be >= 1");
    require(eps > 0.0 && eps < 1.0, "block evolver: eps must lie in (0,1)");
    double nm_d = double(n_mode);
    bound = 0.5 / (cs.lam_max * cs.k_max + 0.5 * cs.dlam_max +
                   2.0 * nm_d * eps * eps * cs.mu_max * cs.k_max * cs.k_max +
                   0.5 * nm_d * eps * eps * cs.d2mu_max + cs.lam_max / eps +
                   2.0 * nm_d * eps * cs.mu_max * cs.k_max +
                   nm_d * eps * cs.dmu_max + cs.s_max);
    std::size_t n = static_cast<std::size_t>(g.n);
    hat.resize(n);
    Df0.resize(n);
    Df1.resize(n);
    DmuD0.resize(n);
    DmuD1.resize(n);
    tmp.resize(n);
  }

  // A(g) = lambda D g + (lambda'/2i) g + 2 n eps^2 D mu D g - (n eps^2/2) mu'' g
  // B(g) = (lambda/eps) g + 2 n eps mu D g + (n eps mu'/i) g
  // out0 = A(f0) + B(f1) + s f0,  out1 = -A(f1) + B(f0) + s f1.
  void apply_pair(const std::vector<complex>* f,
                  std::vector<complex>* out) const {
    int n = grid.n;
    std::vector<complex>* Df[2] = {&Df0, &Df1};
    std::vector<complex>* DmuD[2] = {&DmuD0, &DmuD1};
    for (int c = 0; c < 2; ++c) {
      fft.forward(f[c].data(), hat.data());
      for (int i = 0; i < n; ++i) hat[i] *= cs.k[i];
      fft.backward(hat.data(), Df[c]->data());
      if (!cs.mu_zero) {
        for (int i = 0; i < n; ++i) tmp[i] = cs.mu[i] * (*Df[c])[i];
        fft.forward(tmp.data(), hat.data());
        for (int i = 0; i < n; ++i) hat[i] *= cs.k[i];
        fft.backward(hat.data(), DmuD[c]->data());
      }
    }
    double nm_d = double(n_mode);
    double e2 = eps * eps;
    for (int i = 0; i < n; ++i) {
      complex A0 = cs.lam[i] * Df0[i] - iu * 0.5 * cs.dlam[i] * f[0][i];
      complex A1 = cs.lam[i] * Df1[i] - iu * 0.5 * cs.dlam[i] * f[1][i];
      complex B0 = cs.lam[i] / eps * f[0][i];
      complex B1 = cs.lam[i] / eps * f[1][i];
      if (!cs.mu_zero) {
        A0 += 2.0 * nm_d * e2 * DmuD0[i] -
              0.5 * nm_d * e2 * cs.d2mu[i] * f[0][i];
        A1 += 2.0 * nm_d * e2 * DmuD1[i] -
              0.5 * nm_d * e2 * cs.d2mu[i] * f[1][i];
        B0 += 2.0 * nm_d * eps * cs.mu[i] * Df0[i] -
              iu * nm_d * eps * cs.dmu[i] * f[0][i];
        B1 += 2.0 * nm_d * eps * cs.mu[i] * Df1[i] -
              iu * nm_d * eps * cs.dmu[i] * f[1][i];
      }
      out[0][i] = A0 + B1 + cs.s[i] * f[0][i];
      out[1][i] = -A1 + B0 + cs.s[i] * f[1][i];
    }
  }
};

BlockWaveEvolver::BlockWaveEvolver(const Grid1& grid,
                                   const ModelCoefficients& mc, int n,
                                   double eps)
    : impl_(new Impl(grid, mc, n, eps)) {}

BlockWaveEvolver::~BlockWaveEvolver() { delete impl_; }

const Grid1& BlockWaveEvolver::grid() const { return impl_->grid; }

double BlockWaveEvolver::dt_bound() const { return impl_->bound; }

SpinorField1 BlockWaveEvolver::apply(const SpinorField1& f) const {
  require(f.grid.n == impl_->grid.n, "block evolver: grid mismatch");
  SpinorField1 out(f.grid);
  std::vector<complex> in[2] = {f.c0, f.c1};
  std::vector<complex> ov[2] = {out.c0, out.c1};
  impl_->apply_pair(in, ov);
  out.c0 = std::move(ov[0]);
  out.c1 = std::move(ov[1]);
  return out;
}

SpinorField1 BlockWaveEvolver::evolve(const SpinorField1& f0, double T,
                                      double dt) const {
  require(T >= 0.0, "block evolver: negative final time");
  if (dt == 0.0) dt = impl_->bound;
  check_dt(dt, impl_->bound);
  SpinorField1 f = f0;
  if (T == 0.0) return f;
  std::vector<complex> comp[2] = {std::move(f.c0), std::move(f.c1)};
  auto apply = [this](const std::vector<complex>* in,
                      std::vector<complex>* out) {
    impl_->apply_pair(in, out);
  };
  rk4_evolve<2>(apply, comp, T, dt);
  f.c0 = std::move(comp[0]);
  f.c1 = std::move(comp[1]);
  return f;
}

struct ScalarWaveEvolver::Impl {
  Grid1 grid;
  CoefficientSamples cs;
  double h;
  Fft1D fft;
  double bound;
  mutable std::vector<complex> hat, Df, DmuD, tmp;

  Impl(const Grid1& g, const ModelCoefficients& mc, double hh)
      : grid(g), cs(g, mc), h(hh), fft(g.n) {
    require(h > 0.0 && h < 1.0,
            "scalar evolver: semiclassical parameter must lie in (0,1)");
    bound = 0.5 / (cs.lam_max * cs.k_max + 0.5 * cs.dlam_max +
                   h * cs.mu_max * cs.k_max * cs.k_max +
                   0.25 * h * cs.d2mu_max + cs.s_max);
    std::size_t n = static_cast<std::size_t>(g.n);
    hat.resize(n);
    Df.resize(n);
    DmuD.resize(n);
    tmp.resize(n);
  }

  void apply_one(const std::vector<complex>* f,
                 std::vector<complex>* out) const {
    int n = grid.n;
    fft.forward(f[0].data(), hat.data());
    for (int i = 0; i < n; ++i) hat[i] *= cs.k[i];
    fft.backward(hat.data(), Df.data());
    if (!cs.mu_zero) {
      for (int i = 0; i < n; ++i) tmp[i] = cs.mu[i] * Df[i];
      fft.forward(tmp.data(), hat.data());
      for (int i = 0; i < n; ++i) hat[i] *= cs.k[i];
      fft.backward(hat.data(), DmuD.data());
    }
    for (int i = 0; i < n; ++i) {
      complex v = cs.lam[i] * Df[i] - iu * 0.5 * cs.dlam[i] * f[0][i] +
                  cs.s[i] * f[0][i];
      if (!cs.mu_zero)
        v += h * DmuD[i] - 0.25 * h * cs.d2mu[i] * f[0][i];
      out[0][i] = v;
    }
  }
};

ScalarWaveEvolver::ScalarWaveEvolver(const Grid1& grid,
                                     const ModelCoefficients& mc, double h)
    : impl_(new Impl(grid, mc, h)) {}

ScalarWaveEvolver::~ScalarWaveEvolver() { delete impl_; }

const Grid1& ScalarWaveEvolver::grid() const { return impl_->grid; }

double ScalarWaveEvolver::dt_bound() const { return impl_->bound; }

std::vector<complex> ScalarWaveEvolver::apply(
    const std::vector<complex>& f) const {
  require(int(f.size()) == impl_->grid.n, "scalar evolver: grid mismatch");
  std::vector<complex> in[1] = {f};
  std::vector<complex> out[1];
  out[0].resize(f.size());
  impl_->apply_one(in, out);
  return std::move(out[0]);
}

std::vector<complex> ScalarWaveEvolver::evolve(const std::vector<complex>& f0,
                                               double T, double dt) const {
  require(T >= 0.0, "scalar evolver: negative final time");
  if (dt == 0.0) dt = impl_->bound;
  check_dt(dt, impl_->bound);
  std::vector<complex> comp[1] = {f0};
  if (T == 0.0) return std::move(comp[0]);
  auto apply = [this](const std::vector<complex>* in,
                      std::vector<complex>* out) {
    impl_->apply_one(in, out);
  };
  rk4_evolve<1>(apply, comp, T, dt);
  return std::move(comp[0]);
}

SpinorField1 concentrated_initial(
    const Grid1& grid, double eps,
    const std::function<Eigen::Vector2cd(double)>& a) {
  require(eps > 0.0, "concentrated initial state: eps must be positive");
  SpinorField1 f(grid);
  double scale = 1.0 / std::sqrt(eps);
  for (int i = 0; i < grid.n; ++i) {
    Eigen::Vector2cd v = a(grid.x(i) / eps);
    f.c0[i] = scale * v[0];
    f.c1[i] = scale * v[1];
  }
  return f;
}

std::vector<complex> traveling_initial(
    const Grid1& grid, double h, const std::function<complex(double)>& a) {
  require(h > 0.0, "traveling initial state: h must be positive");
  std::vector<complex> f(static_cast<std::size_t>(grid.n));
  double rh = std::sqrt(h);
  double scale = std::pow(h, -0.25);
  for (int i = 0; i < grid.n; ++i)
    f[static_cast<std::size_t>(i)] = scale * a(grid.x(i) / rh);
  return f;
}

}  // namespace diracedge
