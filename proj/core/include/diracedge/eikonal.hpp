#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diracedge/common.hpp"
#include "diracedge/flow.hpp"

namespace diracedge {

// Coefficients of the one-dimensional half-wave model operators: transport
// speed lambda (smooth, strictly positive), dispersive coefficient mu and
// scalar potential s.  mu and s default to zero, which is the setting of most
// scenarios; s only ever enters through its pointwise values.
struct ModelCoefficients {
  Profile1D lambda;
  ScalarField1D mu = zero_field();
  std::function<double(double)> s = {};  // empty means identically zero
};

ModelCoefficients plain_speed(Profile1D lambda);

// Rectangular mesh on which the smooth phase/amplitude fields are tabulated.
// Evaluation points may lie anywhere inside; the mesh must be contained in
// the characteristic table's x0 range shrunk by the maximal transport
// distance, or construction throws.
struct PhaseMesh {
  double x_min = -2.5;
  double x_max = 2.5;
  int nx = 2049;
};

// Tables for the phase phi(t, x, xi) solving the eikonal equation
//   d_t phi + lambda(x) sqrt(1 + (d_x phi)^2) = 0,  phi(0, x, xi) = x xi,
// together with the amplitude data of the associated transport equation.
//
// Everything oscillatory is reconstructed from smooth tabulated fields with
// the xi-dependence factored out exactly:
//   phi      = H xi - rest / <xi>,         <xi> = sqrt(1 + xi^2),
//   d_x phi  = W <xi>,
//   d_xi phi = H            (the backward characteristic map),
//   d_xi^2 phi = dzH cos^2(zeta),          zeta = arctan(xi),
// where H, rest, W, dzH are smooth in (x, zeta) and interpolated by separable
// six-point Lagrange rules on a uniform mesh.  The amplitude of the principal
// WKB symbol is
//   alpha = A0 exp(-i (2 n <xi>^2 gamma + Ssrc)),
// with A0 = |d_x H|^{1/2}, gamma = lambda(H)^2 int_H^x mu / lambda^3, and
// Ssrc the integral of s along the characteristic; their x-derivatives are
// tabulated as separate fields so no finite differencing happens at
// evaluation time.
class PhaseTables {
 public:
  struct FieldPoint {
    double H, dzH, A0, dxA0, W, dxW, rest, gamma, dxgamma, Ssrc, dxSsrc;
  };

  double t() const { return t_; }
  const ModelCoefficients& coefficients() const { return mc_; }
  const PhaseMesh& mesh() const { return mesh_; }
  int nzeta() const { return nzeta_; }

  // Smooth fields at an arbitrary point (clamped stencils at the mesh edge).
  FieldPoint fields(double x, double xi) const;

  // Phase and derivatives reconstructed from the fields.
  double phi(double x, double xi) const;
  double dx_phi(double x, double xi) const;
  double dxi_phi(double x, double xi) const;
  double dxi2_phi(double x, double xi) const;  // strictly negative for t > 0
  double dt_phi(double x, double xi) const;    // = -lambda(x) <d_x phi>

  // Forward light cone I_t = (x_minus, x_plus) swept by the characteristics
  // emitted from the origin.
  double x_plus() const { return x_plus_; }
  double x_minus() const { return x_minus_; }

  // Largest |d_xi phi| over the mesh; bounds the oscillation rate of
  // frequency integrals against e^{i phi / eps}.
  double max_frequency_slope() const { return max_absH_; }

  // Unique root of d_xi phi(x, .) = 0; empty when x lies outside the open
  // cone I_t.  The root is found by bisection in zeta on the strictly
  // decreasing interpolated H field.
  std::optional<double> stationary_xi(double x) const;

  friend std::vector<PhaseTables> make_phase_tables(
      const ModelCoefficients& mc, const std::vector<double>& times,
      const PhaseMesh& mesh, const FlowGrid& flow);

 private:
  double zeta(int c) const;
  double xnode(int i) const;
  // index layout: field[i * nzeta_ + c]
  double t_ = 0.0;
  PhaseMesh mesh_;
  int nzeta_ = 0;
  double x_plus_ = 0.0, x_minus_ = 0.0, max_absH_ = 0.0;
  ModelCoefficients mc_;
  std::vector<double> H_, dzH_, A0_, dxA0_, W_, dxW_, rest_, gamma_, dxgamma_,
      Ssrc_, dxSsrc_;
};

// Builds tables at each of the sorted nonnegative `times`, sharing a single
// characteristic-table integration.  Throws numerical_error if the mesh
// cannot be covered by the characteristic tables or the flow stops being a
// uniform diffeomorphism.
std::vector<PhaseTables> make_phase_tables(const ModelCoefficients& mc,
                                           const std::vector<double>& times,
                                           const PhaseMesh& mesh,
                                           const FlowGrid& flow = {});
PhaseTables make_phase_tables(const ModelCoefficients& mc, double t,
                              const PhaseMesh& mesh,
                              const FlowGrid& flow = {});

}  // namespace diracedge
