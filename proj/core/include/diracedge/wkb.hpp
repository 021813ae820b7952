#pragma once

#include <Eigen/Dense>

#include "diracedge/common.hpp"
#include "diracedge/eikonal.hpp"

namespace diracedge {

// Normalized eigenvector u(v) of the matrix v sigma_3 + sigma_1 for the
// eigenvalue +sqrt(1+v^2), continuous in v with both components positive,
// and its derivative u'(v) = (u_2, -u_1) / (2 (1+v^2)).  The eigenvector for
// the opposite eigenvalue is i sigma_2 u = (u_2, -u_1).
Eigen::Vector2d halfwave_eigenvector(double v);
Eigen::Vector2d halfwave_eigenvector_deriv(double v);

// The two oscillatory branches of the block-wave ansatz b e^{i phase / eps}:
// `plus` rides the phase +phi(t,x,xi), `minus` the counter-propagating phase
// -phi(t,x,-xi).
enum class Branch { plus, minus };

struct WkbValue {
  double phase = 0.0;          // composite phase of the branch
  Eigen::Vector2cd b0, b1;     // principal symbol and first corrector
};

// Evaluates phase and symbol of one branch at (x, xi) from the tables.  The
// principal part is b0 = alpha u(d_x phase) (alpha the transported
// amplitude); b1 inverts the normal operator on the complement of its kernel
// against the first transport remainder, so that the full ansatz solves the
// block equation to second order in eps.  Neither b0 nor b1 depends on eps;
// `n` is the transverse mode index entering the dispersive phase.
WkbValue evaluate_wkb(const PhaseTables& tables, int n, Branch branch,
                      double x, double xi);

}  // namespace diracedge
