#include "diracedge/haldane.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace diracedge {

namespace {

struct PhasePair {
  double phi1 = 0.0, phi2 = 0.0;
  Eigen::Vector2d dphi1, dphi2;  // gradients with respect to xi components
};

PhasePair phase_arguments(const HoneycombModel& model,
                          const Eigen::Vector2d& xi) {
  PhasePair p;
  if (model.convention == MomentumConvention::lattice_coordinates) {
    p.phi1 = xi[0];
    p.phi2 = xi[1];
    p.dphi1 = Eigen::Vector2d(1.0, 0.0);
    p.dphi2 = Eigen::Vector2d(0.0, 1.0);
  } else {
    Eigen::Vector2d v1 = honeycomb_v1(), v2 = honeycomb_v2();
    p.phi1 = xi.dot(v1);
    p.phi2 = xi.dot(v2);
    p.dphi1 = v1;
    p.dphi2 = v2;
  }
  return p;
}

}  // namespace

complex honeycomb_omega(const HoneycombModel& model,
                        const Eigen::Vector2d& xi) {
  PhasePair ph = phase_arguments(model, xi);
  double w0 = 1.0 - model.a[0] - model.a[1];
  double w1 = 1.0 + model.a[0];
  double w2 = 1.0 + model.a[1];
  return w0 + w1 * std::exp(iu * ph.phi1) + w2 * std::exp(iu * ph.phi2);
}

Eigen::Vector2cd honeycomb_omega_gradient(const HoneycombModel& model,
                                          const Eigen::Vector2d& xi) {
  PhasePair ph = phase_arguments(model, xi);
  complex e1 = iu * (1.0 + model.a[0]) * std::exp(iu * ph.phi1);
  complex e2 = iu * (1.0 + model.a[1]) * std::exp(iu * ph.phi2);
  Eigen::Vector2cd g;
  g[0] = e1 * ph.dphi1[0] + e2 * ph.dphi2[0];
  g[1] = e1 * ph.dphi1[1] + e2 * ph.dphi2[1];
  return g;
}

double honeycomb_beta(const HoneycombModel& model, const Eigen::Vector2d& xi) {
  PhasePair ph = phase_arguments(model, xi);
  return std::sin(ph.phi1) - std::sin(ph.phi2) - std::sin(ph.phi1 - ph.phi2);
}

Eigen::Matrix2cd bloch_matrix(const HoneycombModel& model,
                              const Eigen::Vector2d& xi) {
  complex w = honeycomb_omega(model, xi);
  double d = 2.0 * model.m * honeycomb_beta(model, xi);
  Eigen::Matrix2cd h;
  h(0, 0) = complex(d, 0.0);
  h(0, 1) = w;
  h(1, 0) = std::conj(w);
  h(1, 1) = complex(-d, 0.0);
  return h;
}

std::pair<double, double> band_energies(const HoneycombModel& model,
                                        const Eigen::Vector2d& xi) {
  complex w = honeycomb_omega(model, xi);
  double d = 2.0 * model.m * honeycomb_beta(model, xi);
  double e = std::hypot(std::abs(w), d);
  return {-e, e};
}

Eigen::Vector2d dirac_point_reference() {
  return Eigen::Vector2d(2.0 * pi / 3.0, -2.0 * pi / 3.0);
}

MomentumConvention resolve_momentum_convention(double* residual_lattice,
                                               double* residual_cartesian) {
  HoneycombModel lattice;
  lattice.convention = MomentumConvention::lattice_coordinates;
  HoneycombModel cartesian;
  cartesian.convention = MomentumConvention::cartesian;
  Eigen::Vector2d ref = dirac_point_reference();
  double rl = std::abs(honeycomb_omega(lattice, ref));
  double rc = std::abs(honeycomb_omega(cartesian, ref));
  if (residual_lattice) *residual_lattice = rl;
  if (residual_cartesian) *residual_cartesian = rc;
  return rl <= rc ? MomentumConvention::lattice_coordinates
                  : MomentumConvention::cartesian;
}

Eigen::Vector2d find_dirac_point(const HoneycombModel& model) {
  return find_dirac_point(model, dirac_point_reference());
}

Eigen::Vector2d find_dirac_point(const HoneycombModel& model,
                                 const Eigen::Vector2d& guess) {
  Eigen::Vector2d z = guess;
  for (int iter = 0; iter < 60; ++iter) {
    complex w = honeycomb_omega(model, z);
    if (std::abs(w) < 1e-13) return z;
    Eigen::Vector2cd g = honeycomb_omega_gradient(model, z);
    Eigen::Matrix2d J;
    J << std::real(g[0]), std::real(g[1]), std::imag(g[0]), std::imag(g[1]);
    if (std::abs(J.determinant()) < 1e-12)
      throw numerical_error(
          "Dirac point search: singular Jacobian at the current iterate; "
          "the crossing is not conical there");
    Eigen::Vector2d F(std::real(w), std::imag(w));
    Eigen::Vector2d step = J.partialPivLu().solve(F);
    if (step.norm() > 2.0)
      throw numerical_error(
          "Dirac point search: Newton step left the convergence basin; "
          "start from a point closer to a conical zero");
    z -= step;
  }
  throw numerical_error(
      "Dirac point search: no convergence after 60 Newton iterations");
}

ConeData extract_cone(const HoneycombModel& model,
                      const Eigen::Vector2d& xi_a) {
  complex w0 = honeycomb_omega(model, xi_a);
  require(std::abs(w0) < 1e-10,
          "cone extraction: the supplied point is not a zero of the hopping "
          "sum; run the Dirac point search first");

  // Richardson-extrapolated central differences: the delta^2 error term of
  // the centered quotient cancels between steps d and d/2.
  auto centered = [&](int j, double d) -> complex {
    Eigen::Vector2d e = Eigen::Vector2d::Zero();
    e[j] = d;
    return (honeycomb_omega(model, xi_a + e) -
            honeycomb_omega(model, xi_a - e)) /
           (2.0 * d);
  };
  const double d0 = 1e-4;
  Eigen::Vector2cd grad;
  for (int j = 0; j < 2; ++j) {
    complex coarse = centered(j, d0);
    complex fine = centered(j, 0.5 * d0);
    grad[j] = (4.0 * fine - coarse) / 3.0;
  }

  Eigen::Vector2d a1, a2;
  if (model.convention == MomentumConvention::lattice_coordinates) {
    // Half-vector embedding: lattice increment delta corresponds to the
    // Cartesian momentum q with delta_j = q . v_j / 2.
    Eigen::Vector2d v1 = honeycomb_v1(), v2 = honeycomb_v2();
    a1 = 0.5 * (std::real(grad[0]) * v1 + std::real(grad[1]) * v2);
    a2 = 0.5 * (std::imag(grad[0]) * v1 + std::imag(grad[1]) * v2);
  } else {
    a1 = Eigen::Vector2d(std::real(grad[0]), std::real(grad[1]));
    a2 = Eigen::Vector2d(std::imag(grad[0]), std::imag(grad[1]));
  }

  Eigen::Matrix2d A;
  A.row(0) = a1.transpose();
  A.row(1) = a2.transpose();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(A);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(1);
  if (smin <= 1e-12 * std::max(1.0, smax))
    throw numerical_error(
        "cone extraction: degenerate momentum gradient; the spectrum is "
        "locally flat at this crossing");

  ConeData cone;
  cone.xi = xi_a;
  cone.omega_abs = std::abs(w0);
  cone.grad = grad;
  cone.alpha1 = a1;
  cone.alpha2 = a2;
  cone.coefficient =
      0.5 * complex(a1[0] + a2[1], a2[0] - a1[1]);
  cone.coefficient_conj =
      0.5 * complex(a1[0] - a2[1], a2[0] + a1[1]);
  cone.mass_coefficient = 2.0 * model.m * honeycomb_beta(model, xi_a);
  cone.frame_condition = smax / smin;
  return cone;
}

namespace {

Eigen::Matrix2d fd_xi_jacobian(const StrainField& s, double x1, double x2) {
  double h1 = 1e-5 * std::max(1.0, std::abs(x1));
  double h2 = 1e-5 * std::max(1.0, std::abs(x2));
  Eigen::Vector2d d1 = (s.xi(x1 + h1, x2) - s.xi(x1 - h1, x2)) / (2.0 * h1);
  Eigen::Vector2d d2 = (s.xi(x1, x2 + h2) - s.xi(x1, x2 - h2)) / (2.0 * h2);
  Eigen::Matrix2d J;
  J(0, 0) = d1[0];
  J(0, 1) = d2[0];
  J(1, 0) = d1[1];
  J(1, 1) = d2[1];
  return J;
}

Eigen::Vector2d fd_grad_m(const StrainField& s, double x1, double x2) {
  double h1 = 1e-5 * std::max(1.0, std::abs(x1));
  double h2 = 1e-5 * std::max(1.0, std::abs(x2));
  return Eigen::Vector2d(
      (s.m(x1 + h1, x2) - s.m(x1 - h1, x2)) / (2.0 * h1),
      (s.m(x1, x2 + h2) - s.m(x1, x2 - h2)) / (2.0 * h2));
}

void check_strain_fields(const StrainField& s, const char* what) {
  if (!(s.alpha1 && s.alpha2 && s.xi && s.m))
    throw invalid_input(std::string(what) +
                        ": the strain field must supply frame rows, a "
                        "cone-center field, and a mass field");
}

}  // namespace

StrainField uniform_strain(const ConeData& cone,
                           std::function<double(double, double)> m,
                           std::function<Eigen::Vector2d(double, double)>
                               grad_m) {
  require(static_cast<bool>(m), "uniform strain: a mass field is required");
  StrainField s;
  Eigen::Vector2d a1 = cone.alpha1, a2 = cone.alpha2;
  s.alpha1 = [a1](double, double) { return a1; };
  s.alpha2 = [a2](double, double) { return a2; };
  s.xi = [](double, double) { return Eigen::Vector2d(0.0, 0.0); };
  s.dxi = [](double, double) -> Eigen::Matrix2d {
    return Eigen::Matrix2d::Zero();
  };
  s.m = std::move(m);
  s.grad_m = std::move(grad_m);
  return s;
}

PseudoGeometry pseudo_geometry(const StrainField& strain, double x1,
                               double x2) {
  check_strain_fields(strain, "strained geometry");
  Eigen::Vector2d a1 = strain.alpha1(x1, x2);
  Eigen::Vector2d a2 = strain.alpha2(x1, x2);
  Eigen::Matrix2d A;
  A.row(0) = a1.transpose();
  A.row(1) = a2.transpose();
  double det = A.determinant();
  if (std::abs(det) < 1e-12)
    throw numerical_error(
        "strained geometry: frame rows are linearly dependent at this point");
  Eigen::Matrix2d J =
      strain.dxi ? strain.dxi(x1, x2) : fd_xi_jacobian(strain, x1, x2);
  double twist = J(0, 1) - J(1, 0);  // d2 xi_1 - d1 xi_2
  PseudoGeometry out;
  out.g = A.transpose() * A;
  out.det_frame = det;
  out.m_tilde = strain.m(x1, x2) / det;
  out.B_eff = twist / det;
  out.dxi_norm = std::abs(twist);
  return out;
}

StrainedSpeed edge_speed_strained(const StrainField& strain, double x1,
                                  double x2) {
  PseudoGeometry geo = pseudo_geometry(strain, x1, x2);
  Eigen::Vector2d gm =
      strain.grad_m ? strain.grad_m(x1, x2) : fd_grad_m(strain, x1, x2);
  Eigen::Vector2d a1 = strain.alpha1(x1, x2);
  Eigen::Vector2d a2 = strain.alpha2(x1, x2);
  double gn = std::hypot(a1.dot(gm), a2.dot(gm));  // |A grad m| = |grad_g m|_g
  if (gn < 1e-12)
    throw numerical_error(
        "strained interface speed: the mass gradient vanishes; no interface "
        "direction at this point");
  StrainedSpeed out;
  out.speed = gn / std::hypot(gn, geo.dxi_norm);
  out.grad_m_norm_g = gn;
  out.dxi_norm = geo.dxi_norm;
  // g-rotation by +90 degrees of grad_g m, normalized in g: the Euclidean
  // perp of the Euclidean gradient, scaled by |det A| / |A grad m|.
  out.direction = (std::abs(geo.det_frame) / gn) *
                  Eigen::Vector2d(-gm[1], gm[0]);
  return out;
}

DiracSymbol strained_symbol(const StrainField& strain) {
  check_strain_fields(strain, "strained symbol");
  auto offdiag = [](const StrainField& s, int row, const PhasePoint& z) {
    Eigen::Vector2d c = s.xi(z[0], z[1]);
    Eigen::Vector2d q(z[2] - c[0], z[3] - c[1]);
    Eigen::Vector2d a =
        row == 0 ? s.alpha1(z[0], z[1]) : s.alpha2(z[0], z[1]);
    return a.dot(q);
  };
  DiracSymbol::Component p1 = [strain, offdiag](const PhasePoint& z) {
    return offdiag(strain, 0, z);
  };
  DiracSymbol::Component p2 = [strain, offdiag](const PhasePoint& z) {
    return offdiag(strain, 1, z);
  };
  DiracSymbol::Component p3 = [strain](const PhasePoint& z) {
    return strain.m(z[0], z[1]);
  };
  return DiracSymbol::custom({p1, p2, p3});
}

namespace {

// Bounded random Fourier sum: the coefficients are rescaled so the absolute
// sum equals the requested amplitude, giving a hard sup-norm bound.
struct FourierModes {
  std::vector<double> c, th;
  std::vector<Eigen::Vector2d> k;

  double eval(double x1, double x2) const {
    double v = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      v += c[i] * std::sin(k[i][0] * x1 + k[i][1] * x2 + th[i]);
    return v;
  }
  Eigen::Vector2d grad(double x1, double x2) const {
    Eigen::Vector2d g(0.0, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      double cc = c[i] * std::cos(k[i][0] * x1 + k[i][1] * x2 + th[i]);
      g[0] += cc * k[i][0];
      g[1] += cc * k[i][1];
    }
    return g;
  }
};

FourierModes draw_modes(std::mt19937_64& rng, int nmodes, double amplitude,
                        double kmax) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  FourierModes f;
  double total = 0.0;
  for (int i = 0; i < nmodes; ++i) {
    f.c.push_back(unit(rng));
    total += std::abs(f.c.back());
    f.k.push_back(Eigen::Vector2d(kmax * unit(rng), kmax * unit(rng)));
    f.th.push_back(angle(rng));
  }
  double scale = total > 0.0 ? amplitude / total : 0.0;
  for (double& cc : f.c) cc *= scale;
  return f;
}

}  // namespace

RandomStrain random_strain_field(std::mt19937_64& rng,
                                 const RandomStrainOptions& options) {
  require(options.frame_amplitude >= 0.0 && options.frame_amplitude < 0.45,
          "random strain: frame amplitude must stay below 0.45 to keep the "
          "frame invertible");
  require(options.modes >= 1, "random strain: at least one Fourier mode");
  require(options.xi_amplitude >= 0.0 && options.wall_tilt >= 0.0,
          "random strain: amplitudes must be nonnegative");

  FourierModes d11 = draw_modes(rng, 2, options.frame_amplitude, 1.0);
  FourierModes d12 = draw_modes(rng, 2, options.frame_amplitude, 1.0);
  FourierModes d21 = draw_modes(rng, 2, options.frame_amplitude, 1.0);
  FourierModes d22 = draw_modes(rng, 2, options.frame_amplitude, 1.0);
  FourierModes c1 = draw_modes(rng, options.modes, options.xi_amplitude, 1.2);
  FourierModes c2 = draw_modes(rng, options.modes, options.xi_amplitude, 1.2);

  std::uniform_real_distribution<double> qdist(0.4, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  double q0 = qdist(rng);
  double th0 = angle(rng);
  double tilt = options.wall_tilt;

  StrainField s;
  s.alpha1 = [d11, d12](double x, double y) {
    return Eigen::Vector2d(1.0 + d11.eval(x, y), d12.eval(x, y));
  };
  s.alpha2 = [d21, d22](double x, double y) {
    return Eigen::Vector2d(d21.eval(x, y), 1.0 + d22.eval(x, y));
  };
  s.xi = [c1, c2](double x, double y) {
    return Eigen::Vector2d(c1.eval(x, y), c2.eval(x, y));
  };
  s.dxi = [c1, c2](double x, double y) {
    Eigen::Vector2d g1 = c1.grad(x, y);
    Eigen::Vector2d g2 = c2.grad(x, y);
    Eigen::Matrix2d J;
    J(0, 0) = g1[0];
    J(0, 1) = g1[1];
    J(1, 0) = g2[0];
    J(1, 1) = g2[1];
    return J;
  };
  s.m = [tilt, q0, th0](double x, double y) {
    return y - tilt * std::sin(q0 * x + th0);
  };
  s.grad_m = [tilt, q0, th0](double x, double) {
    return Eigen::Vector2d(-tilt * q0 * std::cos(q0 * x + th0), 1.0);
  };

  RandomStrain out;
  out.field = std::move(s);
  out.wall = [tilt, q0, th0](double x) {
    return tilt * std::sin(q0 * x + th0);
  };
  return out;
}

}  // namespace diracedge
