#pragma once

#include <array>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "diracedge/phase_space.hpp"

namespace diracedge {

// Traceless Hermitian 2x2 symbol field  D(x, xi) = sum_j p_j(x, xi) sigma_j,
// carried by its three real component functions p_j and (optionally) their
// analytic phase-space gradients.  When a gradient is not supplied it is
// replaced by second-order central differences with per-coordinate step
// 1e-5 * max(1, |z_k|).
class DiracSymbol {
 public:
  enum class Kind { domain_wall, magnetic, linear, custom };

  using Component = std::function<double(const PhasePoint&)>;
  using ComponentGradient = std::function<Eigen::Vector4d(const PhasePoint&)>;
  using Field2 = std::function<double(double, double)>;
  using Field2Gradient = std::function<Eigen::Vector2d(double, double)>;

  // Mass profile m(x): symbol (xi1, xi2, m(x)).
  static DiracSymbol domain_wall(Field2 m, Field2Gradient grad_m = nullptr);

  // Minimal coupling: symbol (xi1 - A1(x), xi2 - A2(x), m(x)).
  static DiracSymbol magnetic(Field2 m, Field2 A1, Field2 A2,
                              Field2Gradient grad_m = nullptr,
                              Field2Gradient grad_A1 = nullptr,
                              Field2Gradient grad_A2 = nullptr);

  // Linear symbol p_j(z) = (C z)_j.
  static DiracSymbol linear(const Eigen::Matrix<double, 3, 4>& C);

  // Arbitrary components with optional analytic gradients (all or none).
  static DiracSymbol custom(std::array<Component, 3> p,
                            std::array<ComponentGradient, 3> grad = {});

  Kind kind() const { return kind_; }
  bool has_analytic_jacobian() const { return static_cast<bool>(grad_[0]); }

  double component(int j, const PhasePoint& z) const;
  Eigen::Vector3d p(const PhasePoint& z) const;

  // Rows are the phase-space gradients of p_1, p_2, p_3.
  Eigen::Matrix<double, 3, 4> jacobian(const PhasePoint& z) const;

  Hermitian2 matrix(const PhasePoint& z) const {
    return Hermitian2{0.0, p(z)};
  }

  // Only valid for kind() == linear.
  const Eigen::Matrix<double, 3, 4>& linear_coefficients() const;

 private:
  Kind kind_ = Kind::custom;
  std::array<Component, 3> comp_{};
  std::array<ComponentGradient, 3> grad_{};
  std::optional<Eigen::Matrix<double, 3, 4>> C_;
};

inline Hermitian2 eval_symbol(const DiracSymbol& sym, const PhasePoint& z) {
  return sym.matrix(z);
}

}  // namespace diracedge
