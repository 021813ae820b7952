#pragma once

#include <array>
#include <utility>

#include "diracedge/dirac_symbol.hpp"

namespace diracedge {

// Poisson pairing of the three symbol components at z, returned as the
// Hermitian matrix  M = (1/2i){D, D} with Pauli vector
// ({p2,p3}, {p3,p1}, {p1,p2}).  Brackets follow the convention
// {f,g} = sum_j d_{xi_j}f d_{x_j}g - d_{x_j}f d_{xi_j}g.
Hermitian2 poisson_matrix(const DiracSymbol& sym, const PhasePoint& z);

// Gap-opening rate lambda = (sum_{j<k} {p_j,p_k}^2)^(1/4); equals the square
// root of the spectral radius of poisson_matrix.
double lambda_gap(const DiracSymbol& sym, const PhasePoint& z);

// Unit eigenvector of a traceless Hermitian matrix, phase-fixed so the first
// component of modulus > 1e-12 is real positive.
struct EigenLine {
  Eigen::Vector2cd direction;
  double eigenvalue = 0.0;
};

// Eigenlines of poisson_matrix ordered (minus, plus): M v_- = -lambda^2 v_-,
// M v_+ = +lambda^2 v_+.  The minus line is the traveling polarization, the
// plus line the collapsing one.  Throws numerical_error when lambda^2 falls
// below the degeneracy tolerance 1e-10.
std::pair<EigenLine, EigenLine> eigenlines(const DiracSymbol& sym,
                                           const PhasePoint& z);

// Matrix-valued Hamiltonian field of the symbol: the coefficient 4-vector of
// sum_j (d_{xi_j} D) d_{x_j} - (d_{x_j} D) d_{xi_j}, in coordinate order
// (x1, x2, xi1, xi2):  (d_{xi1}D, d_{xi2}D, -d_{x1}D, -d_{x2}D).
std::array<Hermitian2, 4> hamiltonian_field(const DiracSymbol& sym,
                                            const PhasePoint& z);

// Transport direction of the crossing set:
// V = -Tr(M * H_k) / (2 lambda^2) componentwise.  Tangent to the crossing
// set and annihilated by every d p_j.
Eigen::Vector4d edge_vector_field(const DiracSymbol& sym, const PhasePoint& z);

// Gauss-Newton search for a point of the crossing set p(z) = 0 near `guess`.
// Converged when max_j |p_j| < 1e-11; throws numerical_error after 50 steps.
PhasePoint find_crossing(const DiracSymbol& sym, const PhasePoint& guess);

struct TransversalityReport {
  bool satisfied = false;
  double min_singular_value = 0.0;
};

// Full-rank test of the component jacobian (rows grad p_1..3): smallest
// singular value compared against `tol`.
TransversalityReport check_transversality(const DiracSymbol& sym,
                                          const PhasePoint& z,
                                          double tol = 1e-8);

}  // namespace diracedge
