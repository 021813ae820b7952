#pragma once

#include <Eigen/Dense>

#include "diracedge/common.hpp"

namespace diracedge {

// Phase-space point, coordinate order (x1, x2, xi1, xi2).
using PhasePoint = Eigen::Vector4d;

// Poisson convention: {f, g} = sum_j d_{xi_j} f d_{x_j} g - d_{x_j} f d_{xi_j} g.
// Equivalently {f, g} = (grad f)^T J (grad g) with this matrix.
inline Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
  J(0, 2) = -1.0; J(1, 3) = -1.0;
  J(2, 0) = 1.0;  J(3, 1) = 1.0;
  return J;
}

inline Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd s;
  switch (j) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -iu, iu, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw invalid_input("pauli index must be 0..3");
  }
  return s;
}

// Hermitian 2x2 matrix carried by its Pauli coefficients
// H = p0*Id + p1*sigma1 + p2*sigma2 + p3*sigma3, all pj real.
struct Hermitian2 {
  double p0 = 0.0;
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  Eigen::Matrix2cd matrix() const {
    Eigen::Matrix2cd m;
    m(0, 0) = complex(p0 + p(2), 0.0);
    m(0, 1) = complex(p(0), -p(1));
    m(1, 0) = complex(p(0), p(1));
    m(1, 1) = complex(p0 - p(2), 0.0);
    return m;
  }

  static Hermitian2 from_matrix(const Eigen::Matrix2cd& m,
                                double hermiticity_tol = 1e-10) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
      throw invalid_input("Hermitian2::from_matrix: matrix is not Hermitian");
    Hermitian2 h;
    h.p0 = 0.5 * std::real(m(0, 0) + m(1, 1));
    h.p(0) = std::real(m(1, 0));
    h.p(1) = std::imag(m(1, 0));
    h.p(2) = 0.5 * std::real(m(0, 0) - m(1, 1));
    return h;
  }
};

}  // namespace diracedge
