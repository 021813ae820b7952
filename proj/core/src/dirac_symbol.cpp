#include "diracedge/dirac_symbol.hpp"

#include <cmath>
#include <utility>

namespace diracedge {

DiracSymbol DiracSymbol::domain_wall(Field2 m, Field2Gradient grad_m) {
  require(static_cast<bool>(m), "domain_wall: mass profile must be callable");
  DiracSymbol s;
  s.kind_ = Kind::domain_wall;
  s.comp_[0] = [](const PhasePoint& z) { return z(2); };
  s.comp_[1] = [](const PhasePoint& z) { return z(3); };
  s.comp_[2] = [m](const PhasePoint& z) { return m(z(0), z(1)); };
  if (grad_m) {
    s.grad_[0] = [](const PhasePoint&) { return Eigen::Vector4d(0, 0, 1, 0); };
    s.grad_[1] = [](const PhasePoint&) { return Eigen::Vector4d(0, 0, 0, 1); };
    s.grad_[2] = [grad_m](const PhasePoint& z) {
      Eigen::Vector2d g = grad_m(z(0), z(1));
      return Eigen::Vector4d(g(0), g(1), 0, 0);
    };
  }
  return s;
}

DiracSymbol DiracSymbol::magnetic(Field2 m, Field2 A1, Field2 A2,
                                  Field2Gradient grad_m, Field2Gradient grad_A1,
                                  Field2Gradient grad_A2) {
  require(m && A1 && A2, "magnetic: m, A1, A2 must all be callable");
  DiracSymbol s;
  s.kind_ = Kind::magnetic;
  s.comp_[0] = [A1](const PhasePoint& z) { return z(2) - A1(z(0), z(1)); };
  s.comp_[1] = [A2](const PhasePoint& z) { return z(3) - A2(z(0), z(1)); };
  s.comp_[2] = [m](const PhasePoint& z) { return m(z(0), z(1)); };
  bool analytic = grad_m && grad_A1 && grad_A2;
  require(analytic || (!grad_m && !grad_A1 && !grad_A2),
          "magnetic: provide all gradients or none");
  if (analytic) {
    s.grad_[0] = [grad_A1](const PhasePoint& z) {
      Eigen::Vector2d g = grad_A1(z(0), z(1));
      return Eigen::Vector4d(-g(0), -g(1), 1, 0);
    };
    s.grad_[1] = [grad_A2](const PhasePoint& z) {
      Eigen::Vector2d g = grad_A2(z(0), z(1));
      return Eigen::Vector4d(-g(0), -g(1), 0, 1);
    };
    s.grad_[2] = [grad_m](const PhasePoint& z) {
      Eigen::Vector2d g = grad_m(z(0), z(1));
      return Eigen::Vector4d(g(0), g(1), 0, 0);
    };
  }
  return s;
}

DiracSymbol DiracSymbol::linear(const Eigen::Matrix<double, 3, 4>& C) {
  require(C.allFinite(), "linear: coefficient matrix must be finite");
  DiracSymbol s;
  s.kind_ = Kind::linear;
  s.C_ = C;
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector4d row = C.row(j).transpose();
    s.comp_[j] = [row](const PhasePoint& z) { return row.dot(z); };
    s.grad_[j] = [row](const PhasePoint&) { return row; };
  }
  return s;
}

DiracSymbol DiracSymbol::custom(std::array<Component, 3> p,
                                std::array<ComponentGradient, 3> grad) {
  require(p[0] && p[1] && p[2], "custom: all three components must be callable");
  bool any = grad[0] || grad[1] || grad[2];
  bool all = grad[0] && grad[1] && grad[2];
  require(!any || all, "custom: provide all gradients or none");
  DiracSymbol s;
  s.kind_ = Kind::custom;
  s.comp_ = std::move(p);
  if (all) s.grad_ = std::move(grad);
  return s;
}

double DiracSymbol::component(int j, const PhasePoint& z) const {
  require(j >= 0 && j < 3, "component index must be 0..2");
  return comp_[static_cast<std::size_t>(j)](z);
}

Eigen::Vector3d DiracSymbol::p(const PhasePoint& z) const {
  return {comp_[0](z), comp_[1](z), comp_[2](z)};
}

Eigen::Matrix<double, 3, 4> DiracSymbol::jacobian(const PhasePoint& z) const {
  Eigen::Matrix<double, 3, 4> J;
  if (has_analytic_jacobian()) {
    for (int j = 0; j < 3; ++j)
      J.row(j) = grad_[static_cast<std::size_t>(j)](z).transpose();
    return J;
  }
  for (int k = 0; k < 4; ++k) {
    double step = 1e-5 * std::max(1.0, std::abs(z(k)));
    PhasePoint zp = z, zm = z;
    zp(k) += step;
    zm(k) -= step;
    Eigen::Vector3d pp = p(zp), pm = p(zm);
    J.col(k) = (pp - pm) / (2.0 * step);
  }
  return J;
}

const Eigen::Matrix<double, 3, 4>& DiracSymbol::linear_coefficients() const {
  require(C_.has_value(), "linear_coefficients: symbol is not linear");
  return *C_;
}

}  // namespace diracedge
