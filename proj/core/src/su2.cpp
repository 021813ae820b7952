#include "diracedge/su2.hpp"

#include <cmath>

namespace diracedge {

Eigen::Matrix2cd su2_from_so3(const Eigen::Matrix3d& B) {
  require((B.transpose() * B - Eigen::Matrix3d::Identity())
                  .cwiseAbs()
                  .maxCoeff() < 1e-8,
          "su2_from_so3: matrix is not orthogonal");
  require(B.determinant() > 0.0, "su2_from_so3: matrix must have det +1");

  // Shepperd's method: pick the largest of the four quaternion branches.
  double w, x, y, z;
  double tr = B.trace();
  if (tr >= B(0, 0) && tr >= B(1, 1) && tr >= B(2, 2)) {
    double r = std::sqrt(1.0 + tr);
    w = 0.5 * r;
    x = 0.5 * (B(2, 1) - B(1, 2)) / r;
    y = 0.5 * (B(0, 2) - B(2, 0)) / r;
    z = 0.5 * (B(1, 0) - B(0, 1)) / r;
  } else if (B(0, 0) >= B(1, 1) && B(0, 0) >= B(2, 2)) {
    double r = std::sqrt(1.0 + B(0, 0) - B(1, 1) - B(2, 2));
    x = 0.5 * r;
    w = 0.5 * (B(2, 1) - B(1, 2)) / r;
    y = 0.5 * (B(0, 1) + B(1, 0)) / r;
    z = 0.5 * (B(0, 2) + B(2, 0)) / r;
  } else if (B(1, 1) >= B(2, 2)) {
    double r = std::sqrt(1.0 - B(0, 0) + B(1, 1) - B(2, 2));
    y = 0.5 * r;
    w = 0.5 * (B(0, 2) - B(2, 0)) / r;
    x = 0.5 * (B(0, 1) + B(1, 0)) / r;
    z = 0.5 * (B(1, 2) + B(2, 1)) / r;
  } else {
    double r = std::sqrt(1.0 - B(0, 0) - B(1, 1) + B(2, 2));
    z = 0.5 * r;
    w = 0.5 * (B(1, 0) - B(0, 1)) / r;
    x = 0.5 * (B(0, 2) + B(2, 0)) / r;
    y = 0.5 * (B(1, 2) + B(2, 1)) / r;
  }
  double norm = std::sqrt(w * w + x * x + y * y + z * z);
  w /= norm; x /= norm; y /= norm; z /= norm;

  // U = w Id - i (x sigma1 + y sigma2 + z sigma3)
  Eigen::Matrix2cd U;
  U(0, 0) = complex(w, -z);
  U(0, 1) = complex(-y, -x);
  U(1, 0) = complex(y, -x);
  U(1, 1) = complex(w, z);
  return U;
}

Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& U) {
  Eigen::Matrix3d R;
  for (int i = 0; i < 3; ++i) {
    Eigen::Matrix2cd si = pauli(i + 1);
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix2cd sj = pauli(j + 1);
      R(i, j) = 0.5 * (si * U * sj * U.adjoint()).trace().real();
    }
  }
  return R;
}

}  // namespace diracedge
