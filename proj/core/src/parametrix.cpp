#include "diracedge/parametrix.hpp"

#include <algorithm>
#include <cmath>

namespace diracedge {

namespace {

struct SlotValue {
  Eigen::Vector2cd plus, minus;  // (b0 + eps b1)(0, 0, xi) per branch
};

// Initial-symbol slot values, frequency grid shared by both branches.
std::vector<SlotValue> initial_slots(const PhaseTables& at_0, int n,
                                     double eps,
                                     const std::vector<double>& nodes) {
  std::vector<SlotValue> out(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    WkbValue p = evaluate_wkb(at_0, n, Branch::plus, 0.0, nodes[j]);
    WkbValue m = evaluate_wkb(at_0, n, Branch::minus, 0.0, nodes[j]);
    out[j].plus = p.b0 + eps * p.b1;
    out[j].minus = m.b0 + eps * m.b1;
  }
  return out;
}

std::vector<double> frequency_grid(const PhaseTables& at_t,
                                   const DispersiveWaveSpec& spec) {
  require(spec.ahat != nullptr, "wkb superposition: missing envelope");
  require(spec.eps > 0.0 && spec.eps < 1.0,
          "wkb superposition: eps must lie in (0,1)");
  require(spec.n >= 1, "wkb superposition: mode index must be >= 1");
  require(spec.xi_max > 0.0, "wkb superposition: frequency cutoff <= 0");
  // The integrand oscillates like exp(i phi / eps) with d_xi phi = H; resolve
  // the fastest oscillation with `points_per_wavelength` nodes.
  double slope = std::max(1.0, at_t.max_frequency_slope());
  double dxi = 2.0 * pi * spec.eps / (spec.points_per_wavelength * slope);
  int nnodes = std::max(9, int(std::ceil(2.0 * spec.xi_max / dxi)) + 1);
  std::vector<double> nodes(static_cast<std::size_t>(nnodes));
  for (int j = 0; j < nnodes; ++j)
    nodes[static_cast<std::size_t>(j)] =
        -spec.xi_max + 2.0 * spec.xi_max * double(j) / double(nnodes - 1);
  return nodes;
}

}  // namespace

std::vector<Eigen::Vector2cd> superpose_wkb(const PhaseTables& at_t,
                                            const PhaseTables& at_0,
                                            const DispersiveWaveSpec& spec,
                                            const std::vector<double>& xs,
                                            unsigned threads) {
  std::vector<double> nodes = frequency_grid(at_t, spec);
  double dxi = nodes[1] - nodes[0];
  std::vector<SlotValue> slot = initial_slots(at_0, spec.n, spec.eps, nodes);
  std::vector<Eigen::Vector2cd> ahat(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) ahat[j] = spec.ahat(nodes[j]);

  double norm = dxi / (2.0 * pi * std::sqrt(spec.eps));
  std::vector<Eigen::Vector2cd> out(xs.size(), Eigen::Vector2cd::Zero());
  parallel_for(xs.size(), threads, [&](std::size_t ix) {
    double x = xs[ix];
    Eigen::Vector2cd acc = Eigen::Vector2cd::Zero();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      double w = (j == 0 || j + 1 == nodes.size()) ? 0.5 : 1.0;
      double xi = nodes[j];
      WkbValue p = evaluate_wkb(at_t, spec.n, Branch::plus, x, xi);
      WkbValue m = evaluate_wkb(at_t, spec.n, Branch::minus, x, xi);
      complex cp = (slot[j].plus[0] * ahat[j][0] + slot[j].plus[1] * ahat[j][1]);
      complex cm =
          (slot[j].minus[0] * ahat[j][0] + slot[j].minus[1] * ahat[j][1]);
      acc += w * std::exp(iu * p.phase / spec.eps) * cp *
             (p.b0 + spec.eps * p.b1);
      acc += w * std::exp(iu * m.phase / spec.eps) * cm *
             (m.b0 + spec.eps * m.b1);
    }
    out[ix] = norm * acc;
  });
  return out;
}

std::vector<Eigen::Vector2cd> stationary_phase_profile(
    const PhaseTables& at_t, const PhaseTables& at_0,
    const DispersiveWaveSpec& spec, const std::vector<double>& xs,
    unsigned threads) {
  require(spec.ahat != nullptr, "dispersive profile: missing envelope");
  const complex rot_plus = std::exp(-iu * (0.25 * pi));
  const complex rot_minus = std::exp(iu * (0.25 * pi));
  std::vector<Eigen::Vector2cd> out(xs.size(), Eigen::Vector2cd::Zero());
  parallel_for(xs.size(), threads, [&](std::size_t ix) {
    double x = xs[ix];
    std::optional<double> crit = at_t.stationary_xi(x);
    if (!crit) return;
    double Xi = *crit;
    double hess = std::abs(at_t.dxi2_phi(x, Xi));
    if (!(hess > 1e-300)) return;
    double amp = 1.0 / std::sqrt(2.0 * pi * hess);

    WkbValue p = evaluate_wkb(at_t, spec.n, Branch::plus, x, Xi);
    WkbValue p0 = evaluate_wkb(at_0, spec.n, Branch::plus, 0.0, Xi);
    Eigen::Vector2cd slot_p = p0.b0 + spec.eps * p0.b1;
    Eigen::Vector2cd ap = spec.ahat(Xi);
    complex cp = slot_p[0] * ap[0] + slot_p[1] * ap[1];
    out[ix] += rot_plus * amp * std::exp(iu * p.phase / spec.eps) * cp *
               (p.b0 + spec.eps * p.b1);

    WkbValue m = evaluate_wkb(at_t, spec.n, Branch::minus, x, -Xi);
    WkbValue m0 = evaluate_wkb(at_0, spec.n, Branch::minus, 0.0, -Xi);
    Eigen::Vector2cd slot_m = m0.b0 + spec.eps * m0.b1;
    Eigen::Vector2cd am = spec.ahat(-Xi);
    complex cm = slot_m[0] * am[0] + slot_m[1] * am[1];
    out[ix] += rot_minus * amp * std::exp(iu * m.phase / spec.eps) * cm *
               (m.b0 + spec.eps * m.b1);
  });
  return out;
}

}  // namespace diracedge
