#pragma once

#include <Eigen/Dense>

#include "diracedge/phase_space.hpp"

namespace diracedge {

// Determinant quadratic form q(z) = -det D(z) = sum_j p_j(z)^2 of a linear
// symbol, normalized as q(z) = (1/2) <Q z, z>.  For p = C z this is
// Q = 2 C^T C: symmetric, positive semidefinite, rank 3.
struct QuadraticForm4 {
  Eigen::Matrix4d Q;

  static QuadraticForm4 from_linear_coefficients(
      const Eigen::Matrix<double, 3, 4>& C) {
    return {2.0 * C.transpose() * C};
  }

  double operator()(const PhasePoint& z) const { return 0.5 * z.dot(Q * z); }
};

// Linearized Hamilton matrix L = J Q.  Spectrum {0, 0, +-2i lambda^2}.
Eigen::Matrix4d hamiltonian_matrix(const QuadraticForm4& q);

struct QuadraticReduction {
  Eigen::Matrix4d S;  // symplectic: S^T J S = J
  double lambda = 0.0;

  // S^T Q S = 2 lambda^2 diag(0, 1, 1, 1), i.e.
  // q(S z) = lambda^2 (x2^2 + xi1^2 + xi2^2).
};

// Constructive symplectic normalization of a rank-3 PSD quadratic form whose
// kernel projects nontrivially to x-space (precondition; invalid_input
// otherwise).  Builds a symplectic basis from the elliptic eigenpair and the
// Jordan pair of L = J Q, then repairs the upper-left 2x2 block of S by
// swapping the elliptic pair when |det| < 1e-8.  Throws numerical_error if
// the final identities fail at 1e-9.
QuadraticReduction reduce_quadratic_form(const QuadraticForm4& q);

}  // namespace diracedge
