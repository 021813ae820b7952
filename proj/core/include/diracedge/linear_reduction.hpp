#pragma once

#include <random>

#include <Eigen/Dense>

#include "diracedge/dirac_symbol.hpp"

namespace diracedge {

// Result of the constructive normalization of a linear crossing symbol
// p_j(z) = (C z)_j:
//   U (D o S)(z) U^dag = lambda * [[xi1, x2 - i xi2], [x2 + i xi2, -xi1]]
// with S symplectic and U in SU(2).
struct LinearReduction {
  Eigen::Matrix4d S;
  Eigen::Matrix2cd U;
  double lambda = 0.0;
};

// Direct route: diagonalize the Poisson matrix by an SU(2) gauge, rescale by
// 1/lambda so the rotated components obey {q1,q2} = -1, {q2,q3} = {q3,q1} = 0,
// then complete them to a linear Darboux frame (q1 = x2, q2 = xi2, q3 = xi1).
// Upper-left 2x2 block of S is repaired, when near-singular, by a rotation in
// the (x2, xi2) plane compensated by a diagonal gauge phase.
// Preconditions: rows of C independent (transversality), Poisson matrix
// nondegenerate.  Throws numerical_error when the final identities fail at
// 1e-9.
LinearReduction reduce_linear_symbol(const Eigen::Matrix<double, 3, 4>& C);
LinearReduction reduce_linear_symbol(const DiracSymbol& sym);

struct NormalFormReport {
  double symbol_residual = 0.0;      // max |gauged coefficients - target|
  double symplectic_residual = 0.0;  // max |S^T J S - J|
  double det_residual = 0.0;         // |det U - 1|
  double lambda_residual = 0.0;      // |lambda - ||W/2||^(1/2)|
};

NormalFormReport verify_normal_form(const Eigen::Matrix<double, 3, 4>& C,
                                    const LinearReduction& red);

// Random linear crossing symbol for property suites: i.i.d. standard normal
// coefficients, redrawn until the bracket matrix eigenvalue lambda^2 and the
// smallest singular value of C clear fixed margins (0.05 and 0.1), so every
// draw satisfies the transversality and nondegeneracy assumptions the
// reduction requires.
Eigen::Matrix<double, 3, 4> random_crossing_symbol(std::mt19937_64& rng);

}  // namespace diracedge
