#include "diracedge/edge_trajectory.hpp"

#include <cmath>

#include "diracedge/symbol_invariants.hpp"

namespace diracedge {

namespace {

// One Gauss-Newton least-squares step toward {p = 0}.
PhasePoint gn_step(const DiracSymbol& sym, const PhasePoint& z) {
  Eigen::Vector3d p = sym.p(z);
  Eigen::Matrix<double, 3, 4> Jp = sym.jacobian(z);
  Eigen::Matrix3d G = Jp * Jp.transpose();
  Eigen::LDLT<Eigen::Matrix3d> ldlt(G);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    throw numerical_error("edge projection: component jacobian lost rank");
  return z - Jp.transpose() * ldlt.solve(p);
}

PhasePoint project_to_crossing(const DiracSymbol& sym, PhasePoint z,
                               int max_iter) {
  for (int i = 0; i < max_iter; ++i) {
    if (sym.p(z).cwiseAbs().maxCoeff() < 1e-12) break;
    z = gn_step(sym, z);
  }
  if (sym.p(z).cwiseAbs().maxCoeff() > 1e-8)
    throw numerical_error(
        "edge projection: crossing-set residual exceeds 1e-8");
  return z;
}

}  // namespace

const EdgeSample& EdgeTrajectory::at_time(double t) const {
  require(!samples.empty(), "EdgeTrajectory::at_time: empty trajectory");
  std::size_t best = 0;
  double dmin = std::abs(samples[0].t - t);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    double d = std::abs(samples[i].t - t);
    if (d < dmin) {
      dmin = d;
      best = i;
    }
  }
  return samples[best];
}

EdgeTrajectory integrate_edge_ode(const DiracSymbol& sym, const PhasePoint& z0,
                                  double T, double dt,
                                  const EdgeCoefficients& coeffs) {
  require(dt > 0.0, "integrate_edge_ode: dt must be positive");
  require(T != 0.0, "integrate_edge_ode: T must be nonzero");
  double sign = T > 0.0 ? 1.0 : -1.0;
  auto n_steps = static_cast<std::size_t>(std::ceil(std::abs(T) / dt - 1e-12));
  double step = std::abs(T) / static_cast<double>(n_steps);

  auto mu_of = [&coeffs](double t, const PhasePoint& z) {
    return coeffs.mu ? coeffs.mu(t, z) : 0.0;
  };
  auto s_of = [&coeffs](double t, const PhasePoint& z) {
    return coeffs.s ? coeffs.s(t, z) : 0.0;
  };
  auto field = [&sym](const PhasePoint& z) { return edge_vector_field(sym, z); };

  EdgeTrajectory traj;
  traj.samples.reserve(n_steps + 1);

  PhasePoint z = project_to_crossing(sym, z0, 5);
  EdgeSample first;
  first.t = 0.0;
  first.z = z;
  first.lambda = lambda_gap(sym, z);
  first.mu = mu_of(0.0, z);
  first.s = s_of(0.0, z);
  traj.samples.push_back(first);
  double lambda0 = first.lambda;

  for (std::size_t i = 0; i < n_steps; ++i) {
    double hdt = sign * step;
    Eigen::Vector4d k1 = field(z);
    Eigen::Vector4d k2 = field(z + 0.5 * hdt * k1);
    Eigen::Vector4d k3 = field(z + 0.5 * hdt * k2);
    Eigen::Vector4d k4 = field(z + hdt * k3);
    z += (hdt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    z = project_to_crossing(sym, z, 2);

    EdgeSample s;
    s.t = sign * step * static_cast<double>(i + 1);
    s.z = z;
    s.lambda = lambda_gap(sym, z);
    s.mu = mu_of(s.t, z);
    s.s = s_of(s.t, z);
    s.rho = s.lambda / lambda0;

    const EdgeSample& prev = traj.samples.back();
    double w = 0.5 * (s.t - prev.t);
    s.nu = prev.nu + w * (prev.mu / (prev.rho * prev.rho) +
                          s.mu / (s.rho * s.rho));
    s.phase = prev.phase + w * (prev.s + s.s);
    traj.samples.push_back(s);
  }
  return traj;
}

double predicted_speed(const DiracSymbol& sym, const PhasePoint& z) {
  return edge_vector_field(sym, z).head<2>().norm();
}

}  // namespace diracedge
