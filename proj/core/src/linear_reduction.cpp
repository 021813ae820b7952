#include "diracedge/linear_reduction.hpp"

#include <cmath>

#include "diracedge/su2.hpp"

namespace diracedge {

namespace {

// Coefficient rows of the canonical components (x2, xi2, xi1) in coordinate
// order (x1, x2, xi1, xi2).
Eigen::Matrix<double, 3, 4> canonical_rows() {
  Eigen::Matrix<double, 3, 4> T = Eigen::Matrix<double, 3, 4>::Zero();
  T(0, 1) = 1.0;  // x2
  T(1, 3) = 1.0;  // xi2
  T(2, 2) = 1.0;  // xi1
  return T;
}

Eigen::Vector3d bracket_vector(const Eigen::Matrix<double, 3, 4>& C) {
  Eigen::Matrix3d W = C * symplectic_form() * C.transpose();
  return {W(1, 2), W(2, 0), W(0, 1)};
}

}  // namespace

LinearReduction reduce_linear_symbol(const Eigen::Matrix<double, 3, 4>& C) {
  require(C.allFinite(), "reduce_linear_symbol: coefficients must be finite");
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> csvd(C);
  require(csvd.singularValues()(2) > 1e-10,
          "reduce_linear_symbol: component gradients are dependent");

  Eigen::Vector3d m = bracket_vector(C);
  double lam2 = m.norm();
  if (lam2 < 1e-10)
    throw numerical_error(
        "reduce_linear_symbol: Poisson matrix is degenerate (|M| < 1e-10)");
  double lambda = std::sqrt(lam2);

  // SU(2) gauge diagonalizing the Poisson matrix: columns of Utilde are the
  // (-lambda^2, +lambda^2) eigenvectors; U = Utilde^dag.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(
      Hermitian2{0.0, m}.matrix());
  if (es.info() != Eigen::Success)
    throw numerical_error("reduce_linear_symbol: eigensolver failed");
  Eigen::Vector2cd vm = es.eigenvectors().col(0);
  for (int i = 0; i < 2; ++i) {
    if (std::abs(vm(i)) > 1e-12) {
      vm *= std::conj(vm(i)) / std::abs(vm(i));
      vm(i) = complex(std::abs(vm(i)), 0.0);
      break;
    }
  }
  Eigen::Matrix2cd Utilde;
  Utilde.col(0) = vm;
  Utilde.col(1) = Eigen::Vector2cd(-std::conj(vm(1)), std::conj(vm(0)));
  Eigen::Matrix2cd U = Utilde.adjoint();

  // Rotated, rescaled components: {q1,q2} = -1, {q2,q3} = {q3,q1} = 0.
  Eigen::Matrix3d R = so3_from_su2(U);
  Eigen::Matrix<double, 3, 4> Ct = (R * C) / lambda;
  Eigen::Vector3d mt = bracket_vector(Ct);
  if ((mt - Eigen::Vector3d(0, 0, -1)).cwiseAbs().maxCoeff() > 1e-9)
    throw numerical_error(
        "reduce_linear_symbol: bracket normalization failed after gauging");

  // Darboux completion: a fourth functional with {r0, q1} = {r0, q2} = 0,
  // {r0, q3} = -1 plays the role of x1.  {f_a, f_b} = a^T J b for rows a, b.
  Eigen::Matrix<double, 3, 4> A = Ct * symplectic_form();
  Eigen::Vector4d r0 = A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                           .solve(Eigen::Vector3d(0, 0, 1));

  Eigen::Matrix4d C4;
  C4.topRows<3>() = Ct;
  C4.row(3) = r0.transpose();
  Eigen::Matrix4d T4;
  T4.topRows<3>() = canonical_rows();
  T4.row(3) = Eigen::RowVector4d(1, 0, 0, 0);  // x1
  Eigen::Matrix4d S = C4.partialPivLu().solve(T4);

  // Upper-left block repair: rotate in the (x2, xi2) plane, compensated by a
  // diagonal gauge phase, choosing the angle that maximizes |det|.
  if (std::abs(S.topLeftCorner<2, 2>().determinant()) < 1e-8) {
    double d2 = S(0, 0) * S(1, 1) - S(1, 0) * S(0, 1);
    double d4 = S(0, 0) * S(1, 3) - S(1, 0) * S(0, 3);
    if (std::hypot(d2, d4) < 1e-8)
      throw numerical_error(
          "reduce_linear_symbol: upper-left block is irreparably singular");
    double theta = std::atan2(d4, d2);
    Eigen::Matrix4d G = Eigen::Matrix4d::Identity();
    G(1, 1) = std::cos(theta);
    G(1, 3) = -std::sin(theta);
    G(3, 1) = std::sin(theta);
    G(3, 3) = std::cos(theta);
    S = S * G;
    Eigen::Matrix2cd V = Eigen::Matrix2cd::Zero();
    V(0, 0) = std::exp(iu * (theta / 2.0));
    V(1, 1) = std::exp(-iu * (theta / 2.0));
    U = V * U;
  }

  LinearReduction red{S, U, lambda};
  NormalFormReport rep = verify_normal_form(C, red);
  double worst = std::max({rep.symbol_residual, rep.symplectic_residual,
                           rep.det_residual, rep.lambda_residual});
  if (worst > 1e-9)
    throw numerical_error(
        "reduce_linear_symbol: normal-form identities failed (residual " +
        std::to_string(worst) + ")");
  return red;
}

LinearReduction reduce_linear_symbol(const DiracSymbol& sym) {
  return reduce_linear_symbol(sym.linear_coefficients());
}

NormalFormReport verify_normal_form(const Eigen::Matrix<double, 3, 4>& C,
                                    const LinearReduction& red) {
  NormalFormReport rep;
  Eigen::Matrix3d R = so3_from_su2(red.U);
  Eigen::Matrix<double, 3, 4> gauged = R * C * red.S;
  double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
  rep.symbol_residual =
      (gauged - red.lambda * canonical_rows()).cwiseAbs().maxCoeff() / scale;
  const Eigen::Matrix4d J = symplectic_form();
  rep.symplectic_residual =
      (red.S.transpose() * J * red.S - J).cwiseAbs().maxCoeff();
  rep.det_residual = std::abs(red.U.determinant() - 1.0);
  rep.lambda_residual =
      std::abs(red.lambda - std::sqrt(bracket_vector(C).norm()));
  return rep;
}

Eigen::Matrix<double, 3, 4> random_crossing_symbol(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::Matrix<double, 3, 4> C;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) C(r, c) = gauss(rng);
    if (bracket_vector(C).norm() < 0.05) continue;
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(C);
    if (svd.singularValues()(2) < 0.1) continue;
    return C;
  }
  throw numerical_error(
      "random crossing symbol: rejection sampling failed to clear the "
      "admissibility margins after 1000 draws");
}

}  // namespace diracedge
