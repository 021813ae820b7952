#include "diracedge/dirac2d.hpp"

#include <cmath>

#include "diracedge/fft.hpp"
#include "diracedge/symbol_invariants.hpp"

namespace diracedge {

struct DiracEvolver2D::Impl {
  std::vector<double> m, A1, A2;       // sampled fields
  std::vector<double> k1, k2;          // angular wavenumbers
  std::vector<bool> near_interface;    // dist <= 3 sqrt(h) of {m = 0}
  std::vector<complex> line_minus0, line_minus1;  // traveling line at xi = 0
  double max_m = 0.0, max_A = 0.0;
  std::unique_ptr<Fft2D> fft;
  // Scratch for apply_into: the stepper calls it four times per RK4 step, so
  // per-call allocation would dominate the system time.
  mutable std::vector<complex> spec, d1, d2, hd10, hd11, hd20, hd21;

  void apply_into(const Grid2& grid, double h, const SpinorField& psi,
                  SpinorField& out) const;
};

void DiracEvolver2D::Impl::apply_into(const Grid2& grid, double h,
                                      const SpinorField& psi,
                                      SpinorField& out) const {
  const std::vector<complex>* comps[2] = {&psi.c0, &psi.c1};
  std::vector<complex>* hd1[2] = {&hd10, &hd11};
  std::vector<complex>* hd2[2] = {&hd20, &hd21};
  for (int c = 0; c < 2; ++c) {
    fft->forward(comps[c]->data(), spec.data());
    for (int i1 = 0; i1 < grid.n1; ++i1) {
      double hk1 = h * k1[static_cast<std::size_t>(i1)];
      std::size_t row = static_cast<std::size_t>(i1) *
                        static_cast<std::size_t>(grid.n2);
      for (int i2 = 0; i2 < grid.n2; ++i2) {
        double hk2 = h * k2[static_cast<std::size_t>(i2)];
        complex s = spec[row + static_cast<std::size_t>(i2)];
        d1[row + static_cast<std::size_t>(i2)] = s * hk1;
        d2[row + static_cast<std::size_t>(i2)] = s * hk2;
      }
    }
    fft->backward(d1.data(), hd1[c]->data());
    fft->backward(d2.data(), hd2[c]->data());
  }

  std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    complex q10 = (*hd1[0])[i] - A1[i] * psi.c0[i];
    complex q11 = (*hd1[1])[i] - A1[i] * psi.c1[i];
    complex q20 = (*hd2[0])[i] - A2[i] * psi.c0[i];
    complex q21 = (*hd2[1])[i] - A2[i] * psi.c1[i];
    out.c0[i] = q11 - iu * q21 + m[i] * psi.c0[i];
    out.c1[i] = q10 + iu * q20 - m[i] * psi.c1[i];
  }
}

namespace {

void check_affine_momentum(const DiracSymbol& sym, const Grid2& grid) {
  // Spot-check p_j(x, xi) = xi_j - A_j(x), p_3 independent of xi.
  const double probes[3][2] = {{0.3, -0.7}, {-1.1, 0.4}, {0.0, 0.0}};
  for (const auto& pr : probes) {
    double x1 = pr[0] * 0.25 * grid.L1, x2 = pr[1] * 0.25 * grid.L2;
    PhasePoint z0(x1, x2, 0.0, 0.0);
    for (int j = 0; j < 2; ++j) {
      PhasePoint z1 = z0;
      z1(2 + j) = 0.7;
      Eigen::Vector3d diff = sym.p(z1) - sym.p(z0);
      Eigen::Vector3d expect = Eigen::Vector3d::Zero();
      expect(j) = 0.7;
      if ((diff - expect).cwiseAbs().maxCoeff() > 1e-9)
        throw invalid_input(
            "DiracEvolver2D: symbol is not of minimal-coupling form "
            "(components must be xi_j - A_j(x) and m(x))");
    }
  }
}

}  // namespace

DiracEvolver2D::DiracEvolver2D(const Grid2& grid, double h,
                               const DiracSymbol& sym, unsigned threads)
    : grid_(grid), h_(h), threads_(threads), impl_(std::make_unique<Impl>()) {
  require(h > 0.0, "DiracEvolver2D: h must be positive");
  double bound = std::sqrt(h) / 8.0;
  if (grid.dx1() > bound || grid.dx2() > bound)
    throw numerical_error(
        "DiracEvolver2D: grid resolution violates dx <= sqrt(h)/8 (bound " +
        std::to_string(bound) + ", dx " +
        std::to_string(std::max(grid.dx1(), grid.dx2())) + ")");
  check_affine_momentum(sym, grid);

  std::size_t n = grid.size();
  impl_->m.resize(n);
  impl_->A1.resize(n);
  impl_->A2.resize(n);
  impl_->near_interface.assign(n, false);
  impl_->line_minus0.resize(n);
  impl_->line_minus1.resize(n);
  impl_->k1.resize(static_cast<std::size_t>(grid.n1));
  impl_->k2.resize(static_cast<std::size_t>(grid.n2));
  for (int i = 0; i < grid.n1; ++i)
    impl_->k1[static_cast<std::size_t>(i)] = grid.k1(i);
  for (int i = 0; i < grid.n2; ++i)
    impl_->k2[static_cast<std::size_t>(i)] = grid.k2(i);

  double band = 3.0 * std::sqrt(h);
  parallel_for(static_cast<std::size_t>(grid.n1), threads_, [&](std::size_t i1u) {
    int i1 = static_cast<int>(i1u);
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      std::size_t idx = grid.index(i1, i2);
      PhasePoint z(grid.x1(i1), grid.x2(i2), 0.0, 0.0);
      Eigen::Vector3d p = sym.p(z);
      impl_->A1[idx] = -p(0);
      impl_->A2[idx] = -p(1);
      impl_->m[idx] = p(2);

      Eigen::Matrix<double, 3, 4> Jp = sym.jacobian(z);
      Eigen::Vector2d gm(Jp(2, 0), Jp(2, 1));
      double dist = std::abs(p(2)) / std::max(gm.norm(), 1e-12);
      impl_->near_interface[idx] = dist <= band;

      // Traveling eigenline of the Poisson matrix at xi = 0:
      // v_- proportional to (-(n1 - i n2), 1 + n3) or ((n3 - 1), n1 + i n2),
      // picking the branch stable for the sign of n3.
      Hermitian2 M = poisson_matrix(sym, z);
      Eigen::Vector3d nvec = M.p;
      double nn = nvec.norm();
      if (nn > 1e-12) {
        nvec /= nn;
        Eigen::Vector2cd v;
        if (nvec(2) <= 0.0)
          v = Eigen::Vector2cd(complex(nvec(2) - 1.0, 0.0),
                               complex(nvec(0), nvec(1)));
        else
          v = Eigen::Vector2cd(complex(-nvec(0), nvec(1)),
                               complex(1.0 + nvec(2), 0.0));
        v.normalize();
        impl_->line_minus0[idx] = v(0);
        impl_->line_minus1[idx] = v(1);
      } else {
        impl_->line_minus0[idx] = impl_->line_minus1[idx] = complex{};
      }
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    impl_->max_m = std::max(impl_->max_m, std::abs(impl_->m[i]));
    impl_->max_A = std::max(impl_->max_A,
                            std::hypot(impl_->A1[i], impl_->A2[i]));
  }
  impl_->fft = std::make_unique<Fft2D>(grid.n1, grid.n2);
  impl_->spec.resize(n);
  impl_->d1.resize(n);
  impl_->d2.resize(n);
  impl_->hd10.resize(n);
  impl_->hd11.resize(n);
  impl_->hd20.resize(n);
  impl_->hd21.resize(n);
}

DiracEvolver2D::~DiracEvolver2D() = default;

double DiracEvolver2D::dt_bound() const {
  return 0.5 * h_ * std::min(grid_.dx1(), grid_.dx2()) /
         (pi * (1.0 + impl_->max_m + impl_->max_A));
}

SpinorField DiracEvolver2D::apply(const SpinorField& psi) const {
  require(psi.grid.n1 == grid_.n1 && psi.grid.n2 == grid_.n2,
          "DiracEvolver2D::apply: grid mismatch");
  SpinorField out(grid_);
  impl_->apply_into(grid_, h_, psi, out);
  return out;
}

Observables2D DiracEvolver2D::observables(const SpinorField& psi,
                                          double t) const {
  Observables2D obs;
  obs.t = t;
  double area = grid_.cell_area();
  double mass = 0.0, band_mass = 0.0, minus_mass = 0.0;
  double cx = 0.0, cy = 0.0, linf = 0.0;
  for (int i1 = 0; i1 < grid_.n1; ++i1) {
    for (int i2 = 0; i2 < grid_.n2; ++i2) {
      std::size_t idx = grid_.index(i1, i2);
      double w = std::norm(psi.c0[idx]) + std::norm(psi.c1[idx]);
      mass += w;
      linf = std::max(linf, std::sqrt(w));
      cx += w * grid_.x1(i1);
      cy += w * grid_.x2(i2);
      if (impl_->near_interface[idx]) band_mass += w;
      complex ip = std::conj(impl_->line_minus0[idx]) * psi.c0[idx] +
                   std::conj(impl_->line_minus1[idx]) * psi.c1[idx];
      minus_mass += std::norm(ip);
    }
  }
  obs.mass = mass * area;
  obs.linf = linf;
  if (mass > 0.0) {
    obs.centroid = Eigen::Vector2d(cx / mass, cy / mass);
    obs.interface_fraction = band_mass / mass;
    obs.minus_fraction = minus_mass / mass;
    obs.plus_fraction = 1.0 - obs.minus_fraction;
  }
  return obs;
}

Evolution2DResult DiracEvolver2D::evolve(const SpinorField& psi0, double T,
                                         const Evolve2DOptions& options) const {
  require(T > 0.0, "DiracEvolver2D::evolve: T must be positive");
  require(options.snapshot_count >= 0 && options.snapshot_count <= 50,
          "DiracEvolver2D::evolve: at most 50 snapshots");
  double bound = dt_bound();
  double dt = options.dt > 0.0 ? options.dt : bound;
  if (dt > bound * (1.0 + 1e-12))
    throw numerical_error(
        "DiracEvolver2D: dt " + std::to_string(dt) +
        " violates the admissible bound 0.5*h*min(dx)/(pi*(1+max|m|+max|A|)) = " +
        std::to_string(bound));

  // Seam cleanliness of the initial state.
  double seam = 0.0;
  for (int i2 = 0; i2 < grid_.n2; ++i2) {
    std::size_t idx = grid_.index(0, i2);
    seam = std::max(seam, std::abs(psi0.c0[idx]));
    seam = std::max(seam, std::abs(psi0.c1[idx]));
  }
  for (int i1 = 0; i1 < grid_.n1; ++i1) {
    std::size_t idx = grid_.index(i1, 0);
    seam = std::max(seam, std::abs(psi0.c0[idx]));
    seam = std::max(seam, std::abs(psi0.c1[idx]));
  }
  if (seam > 1e-10)
    throw numerical_error(
        "DiracEvolver2D: initial state is not seam-clean (|psi| = " +
        std::to_string(seam) + " at the periodic boundary)");

  auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  dt = T / static_cast<double>(steps);

  int stride = options.observable_stride;
  if (stride <= 0)
    stride = std::max<std::size_t>(1, steps / 200);
  std::size_t snap_every = options.snapshot_count > 0
      ? std::max<std::size_t>(1, steps / static_cast<std::size_t>(
                                            options.snapshot_count))
      : steps + 1;

  Evolution2DResult result;
  result.dt = dt;
  result.steps = steps;
  result.series.push_back(observables(psi0, 0.0));

  SpinorField y = psi0;
  SpinorField k(grid_), stage(grid_), acc(grid_);
  const complex fac = -iu / h_;
  std::size_t nn = y.c0.size();
  auto rhs_into = [this, fac, nn](const SpinorField& f, SpinorField& kout) {
    impl_->apply_into(grid_, h_, f, kout);
    for (std::size_t i = 0; i < nn; ++i) {
      kout.c0[i] *= fac;
      kout.c1[i] *= fac;
    }
  };

  for (std::size_t s = 1; s <= steps; ++s) {
    // Classical RK4 with the stage sum (k1 + 2 k2 + 2 k3 + k4) accumulated
    // left to right, matching elementwise the naive four-buffer form.
    rhs_into(y, k);
    for (std::size_t i = 0; i < nn; ++i) {
      acc.c0[i] = k.c0[i];
      acc.c1[i] = k.c1[i];
      stage.c0[i] = y.c0[i] + 0.5 * dt * k.c0[i];
      stage.c1[i] = y.c1[i] + 0.5 * dt * k.c1[i];
    }
    rhs_into(stage, k);
    for (std::size_t i = 0; i < nn; ++i) {
      acc.c0[i] += 2.0 * k.c0[i];
      acc.c1[i] += 2.0 * k.c1[i];
      stage.c0[i] = y.c0[i] + 0.5 * dt * k.c0[i];
      stage.c1[i] = y.c1[i] + 0.5 * dt * k.c1[i];
    }
    rhs_into(stage, k);
    for (std::size_t i = 0; i < nn; ++i) {
      acc.c0[i] += 2.0 * k.c0[i];
      acc.c1[i] += 2.0 * k.c1[i];
      stage.c0[i] = y.c0[i] + dt * k.c0[i];
      stage.c1[i] = y.c1[i] + dt * k.c1[i];
    }
    rhs_into(stage, k);
    for (std::size_t i = 0; i < nn; ++i) {
      y.c0[i] += (dt / 6.0) * (acc.c0[i] + k.c0[i]);
      y.c1[i] += (dt / 6.0) * (acc.c1[i] + k.c1[i]);
    }
    double t = dt * static_cast<double>(s);
    if (s % static_cast<std::size_t>(stride) == 0 || s == steps) {
      Observables2D obs = observables(y, t);
      if (!std::isfinite(obs.mass))
        throw numerical_error("DiracEvolver2D: state diverged at t = " +
                              std::to_string(t));
      result.series.push_back(obs);
    }
    if (s % snap_every == 0 &&
        result.snapshots.size() <
            static_cast<std::size_t>(options.snapshot_count)) {
      result.snapshot_times.push_back(t);
      result.snapshots.push_back(y);
    }
  }
  result.final_state = std::move(y);
  return result;
}

PredictionComparison compare_to_prediction(const SpinorField& state,
                                           const SpinorField& predicted) {
  PredictionComparison cmp;
  double ns = std::sqrt(state.squared_norm());
  double np = std::sqrt(predicted.squared_norm());
  if (ns > 0.0 && np > 0.0)
    cmp.overlap = std::abs(state.inner(predicted)) / (ns * np);
  double err = 0.0;
  for (std::size_t i = 0; i < state.c0.size(); ++i)
    err += std::norm(state.c0[i] - predicted.c0[i]) +
           std::norm(state.c1[i] - predicted.c1[i]);
  cmp.l2_error = std::sqrt(err * state.grid.cell_area());
  if (np > 0.0) cmp.rel_l2_error = cmp.l2_error / np;
  return cmp;
}

}  // namespace diracedge
