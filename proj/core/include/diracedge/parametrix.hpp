#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "diracedge/common.hpp"
#include "diracedge/eikonal.hpp"
#include "diracedge/wkb.hpp"

namespace diracedge {

// Frequency superposition of the two WKB branches against a concentrated
// initial envelope a:
//   (E a)(t, x) = (2 pi sqrt(eps))^{-1} int e^{i phase_\pm / eps}
//                 (b0 + eps b1)(t, x, .) [(b0 + eps b1)(0, 0, .)^T ahat] dxi,
// summed over both branches.  `ahat` is the Fourier transform
// ahat(xi) = int e^{-i x xi} a(x) dx of the two-component envelope; at t = 0
// the superposition reproduces eps^{-1/2} a(x / eps) up to O(eps).
struct DispersiveWaveSpec {
  int n = 1;                      // transverse mode index
  double eps = 0.01;              // concentration scale
  std::function<Eigen::Vector2cd(double)> ahat;
  double xi_max = 9.0;            // frequency cutoff (envelope must decay)
  double points_per_wavelength = 12.0;  // quadrature density control
};

// Evaluates the superposition at the points `xs` by trapezoid quadrature on a
// frequency grid fine enough to resolve the fastest phase oscillation.
// `at_t` and `at_0` are phase tables for the evaluation time and for time
// zero (the initial symbol slot).
std::vector<Eigen::Vector2cd> superpose_wkb(const PhaseTables& at_t,
                                            const PhaseTables& at_0,
                                            const DispersiveWaveSpec& spec,
                                            const std::vector<double>& xs,
                                            unsigned threads = 1);

// Stationary-phase evaluation of the same superposition: inside the open
// cone (x_minus, x_plus) each branch contributes its critical frequency
// +-Xi(t,x); outside, the profile vanishes.  This is the O(1) dispersive
// profile whose modulus decays like t^{-1/2}.
std::vector<Eigen::Vector2cd> stationary_phase_profile(
    const PhaseTables& at_t, const PhaseTables& at_0,
    const DispersiveWaveSpec& spec, const std::vector<double>& xs,
    unsigned threads = 1);

}  // namespace diracedge
