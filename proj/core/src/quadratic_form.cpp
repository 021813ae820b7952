#include "diracedge/quadratic_form.hpp"

#include <cmath>

namespace diracedge {

Eigen::Matrix4d hamiltonian_matrix(const QuadraticForm4& q) {
  return symplectic_form() * q.Q;
}

namespace {

double omega(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  static const Eigen::Matrix4d J = symplectic_form();
  return a.dot(J * b);
}

}  // namespace

QuadraticReduction reduce_quadratic_form(const QuadraticForm4& q) {
  const Eigen::Matrix4d& Q = q.Q;
  require(Q.allFinite(), "reduce_quadratic_form: Q must be finite");
  require((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + Q.norm()),
          "reduce_quadratic_form: Q must be symmetric");

  double scale = Q.norm();
  require(scale > 0.0, "reduce_quadratic_form: Q must be nonzero");

  // Rank/kernel analysis.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> qes(Q);
  if (qes.info() != Eigen::Success)
    throw numerical_error("reduce_quadratic_form: eigensolver failed on Q");
  Eigen::Vector4d evals = qes.eigenvalues();  // increasing
  require(evals(0) > -1e-10 * scale,
          "reduce_quadratic_form: Q must be positive semidefinite");
  require(evals(1) > 1e-10 * scale,
          "reduce_quadratic_form: Q must have rank 3");
  Eigen::Vector4d kernel = qes.eigenvectors().col(0);
  require(kernel.head<2>().norm() > 1e-8,
          "reduce_quadratic_form: kernel of q must project to x-space");

  Eigen::Matrix4d L = hamiltonian_matrix(q);

  // Elliptic pair: eigenvector of L for the eigenvalue -i mu, mu > 0.
  Eigen::EigenSolver<Eigen::Matrix4d> les(L);
  if (les.info() != Eigen::Success)
    throw numerical_error("reduce_quadratic_form: eigensolver failed on L");
  int idx = -1;
  double mu = 0.0;
  for (int i = 0; i < 4; ++i) {
    double im = les.eigenvalues()(i).imag();
    if (-im > mu) {
      mu = -im;
      idx = i;
    }
  }
  if (idx < 0 || mu <= 1e-10 * scale)
    throw numerical_error("reduce_quadratic_form: no elliptic eigenvalue");
  double lambda = std::sqrt(0.5 * mu);

  Eigen::Vector4cd u = les.eigenvectors().col(idx);
  Eigen::Vector4d u2 = u.real(), u4 = u.imag();
  double s = omega(u4, u2);
  if (s < 0.0) {
    u4 = -u4;  // conjugate eigenvector: L (u2 - i u4) = +i mu (u2 - i u4)
    s = -s;
  }
  if (s <= 1e-14 * scale)
    throw numerical_error("reduce_quadratic_form: degenerate elliptic pair");
  u2 /= std::sqrt(s);
  u4 /= std::sqrt(s);

  // Jordan pair: u3 in ker L^2 transverse to ker L, u1 = -L u3 / (2 lambda^2).
  Eigen::Matrix4d L2 = L * L;
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(L2, Eigen::ComputeFullV);
  Eigen::Vector4d n1 = svd.matrixV().col(2);  // two smallest singular values
  Eigen::Vector4d n2 = svd.matrixV().col(3);
  // Orthogonalize against the kernel direction inside ker L^2.
  Eigen::Vector4d u3 = n1 - kernel * kernel.dot(n1);
  Eigen::Vector4d alt = n2 - kernel * kernel.dot(n2);
  if (alt.norm() > u3.norm()) u3 = alt;
  if (u3.norm() < 1e-10)
    throw numerical_error("reduce_quadratic_form: Jordan block not found");
  Eigen::Vector4d u1 = -L * u3 / (2.0 * lambda * lambda);
  double c = omega(u3, u1);
  if (c <= 1e-14 * scale)
    throw numerical_error("reduce_quadratic_form: Jordan pair not symplectic");
  u3 /= std::sqrt(c);
  u1 = -L * u3 / (2.0 * lambda * lambda);

  Eigen::Matrix4d S;
  S.col(0) = u1;
  S.col(1) = u2;
  S.col(2) = u3;
  S.col(3) = u4;

  // Upper-left block repair: swap the elliptic pair (u2, u4) -> (u4, -u2).
  if (std::abs(S.topLeftCorner<2, 2>().determinant()) < 1e-8) {
    S.col(1) = u4;
    S.col(3) = -u2;
  }

  const Eigen::Matrix4d J = symplectic_form();
  double sympl_resid = (S.transpose() * J * S - J).cwiseAbs().maxCoeff();
  Eigen::Matrix4d target = Eigen::Matrix4d::Zero();
  target(1, 1) = target(2, 2) = target(3, 3) = 2.0 * lambda * lambda;
  double diag_resid =
      (S.transpose() * Q * S - target).cwiseAbs().maxCoeff() / scale;
  if (sympl_resid > 1e-9 || diag_resid > 1e-9)
    throw numerical_error(
        "reduce_quadratic_form: normal-form identities failed (residual " +
        std::to_string(std::max(sympl_resid, diag_resid)) + ")");

  return QuadraticReduction{S, lambda};
}

}  // namespace diracedge
