#include "diracedge/symbol_invariants.hpp"

#include <cmath>

namespace diracedge {

namespace {

constexpr double kGapTol = 1e-10;

// Fixes the overall phase so the first component of modulus > 1e-12 is real
// and positive.
Eigen::Vector2cd phase_fix(Eigen::Vector2cd v) {
  for (int i = 0; i < 2; ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = complex(std::abs(v(i)), 0.0);  // exact: kill rounding residue
      break;
    }
  }
  return v;
}

}  // namespace

Hermitian2 poisson_matrix(const DiracSymbol& sym, const PhasePoint& z) {
  Eigen::Matrix<double, 3, 4> Jp = sym.jacobian(z);
  Eigen::Matrix4d J = symplectic_form();
  Eigen::Matrix3d W = Jp * J * Jp.transpose();  // W(j,k) = {p_j, p_k}
  Hermitian2 M;
  M.p0 = 0.0;
  M.p = Eigen::Vector3d(W(1, 2), W(2, 0), W(0, 1));
  return M;
}

double lambda_gap(const DiracSymbol& sym, const PhasePoint& z) {
  return std::sqrt(poisson_matrix(sym, z).p.norm());
}

std::pair<EigenLine, EigenLine> eigenlines(const DiracSymbol& sym,
                                           const PhasePoint& z) {
  Hermitian2 M = poisson_matrix(sym, z);
  double lam2 = M.p.norm();
  if (lam2 < kGapTol)
    throw numerical_error(
        "eigenlines: Poisson matrix is degenerate (|M| < 1e-10)");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(M.matrix());
  if (es.info() != Eigen::Success)
    throw numerical_error("eigenlines: eigensolver failed");
  // SelfAdjointEigenSolver sorts eigenvalues increasingly.
  EigenLine minus{phase_fix(es.eigenvectors().col(0)), es.eigenvalues()(0)};
  EigenLine plus{phase_fix(es.eigenvectors().col(1)), es.eigenvalues()(1)};
  return {minus, plus};
}

std::array<Hermitian2, 4> hamiltonian_field(const DiracSymbol& sym,
                                            const PhasePoint& z) {
  Eigen::Matrix<double, 3, 4> Jp = sym.jacobian(z);
  std::array<Hermitian2, 4> H;
  H[0] = Hermitian2{0.0, Jp.col(2)};   // d_{xi1} D
  H[1] = Hermitian2{0.0, Jp.col(3)};   // d_{xi2} D
  H[2] = Hermitian2{0.0, -Jp.col(0)};  // -d_{x1} D
  H[3] = Hermitian2{0.0, -Jp.col(1)};  // -d_{x2} D
  return H;
}

Eigen::Vector4d edge_vector_field(const DiracSymbol& sym, const PhasePoint& z) {
  Hermitian2 M = poisson_matrix(sym, z);
  double lam2 = M.p.norm();
  if (lam2 < kGapTol)
    throw numerical_error(
        "edge_vector_field: Poisson matrix is degenerate (|M| < 1e-10)");
  std::array<Hermitian2, 4> H = hamiltonian_field(sym, z);
  Eigen::Vector4d V;
  // Tr(M H_k) = 2 M.p . H_k.p for traceless factors.
  for (int k = 0; k < 4; ++k)
    V(k) = -M.p.dot(H[static_cast<std::size_t>(k)].p) / lam2;
  return V;
}

PhasePoint find_crossing(const DiracSymbol& sym, const PhasePoint& guess) {
  PhasePoint z = guess;
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::Vector3d p = sym.p(z);
    if (p.cwiseAbs().maxCoeff() < 1e-11) return z;
    Eigen::Matrix<double, 3, 4> Jp = sym.jacobian(z);
    Eigen::Matrix3d G = Jp * Jp.transpose();
    Eigen::LDLT<Eigen::Matrix3d> ldlt(G);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      throw numerical_error(
          "find_crossing: component jacobian lost rank during iteration");
    z -= Jp.transpose() * ldlt.solve(p);
    if (!z.allFinite())
      throw numerical_error("find_crossing: iteration diverged");
  }
  throw numerical_error("find_crossing: no convergence within 50 iterations");
}

TransversalityReport check_transversality(const DiracSymbol& sym,
                                          const PhasePoint& z, double tol) {
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(sym.jacobian(z));
  double smin = svd.singularValues()(2);
  return TransversalityReport{smin > tol, smin};
}

}  // namespace diracedge
