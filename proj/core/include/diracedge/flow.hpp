#pragma once

#include <functional>
#include <vector>

#include "diracedge/common.hpp"

namespace diracedge {

// One-dimensional coefficient profile with an analytic derivative.  Profiles
// are assumed smooth; `value` must stay strictly positive when used as a wave
// speed.
struct Profile1D {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
};

Profile1D constant_profile(double c);
// a + b tanh(x)
Profile1D tanh_profile(double a, double b);
// a + b tanh(T(x)) where T is the unit-slope triangle wave of half-period
// half_width: T(x) = x on [-half_width, half_width], reflected beyond.  The
// profile is continuous and periodic with period 4 * half_width, which keeps
// spectral solvers on a periodic box free of wrap-around jumps while agreeing
// with a + b tanh(x) on the core interval.
Profile1D tanh_reflected_profile(double a, double b, double half_width);

// Scalar coefficient with two analytic derivatives (used for dispersive and
// potential terms, where second derivatives enter the operators).
struct ScalarField1D {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> second;
};

ScalarField1D zero_field();
ScalarField1D constant_field(double c);

// Characteristics of the half-wave speed profile lambda:
//   dx/dt = lambda(x) xi / <xi>,   dxi/dt = -lambda'(x) <xi>,
// compactified via the angle zeta = arctan(xi):
//   dx/dt = lambda(x) sin(zeta),   dzeta/dt = -lambda'(x) cos(zeta).
// Tables hold, for a rectangular grid of initial conditions (x0, zeta0) and a
// single final time t:
//   F      : final position
//   G      : final angle
//   r      : the accumulated integral of lambda'(x_s) sin(zeta_s), so that
//            cos(G) = cos(zeta0) exp(r) identically (division-free access to
//            tan(G) near the poles),
//   I      : the accumulated integral of lambda(x_s)^2 (eikonal source),
//   S      : the accumulated integral of an optional scalar source s(x_s)
//            (zero-order phase contribution; identically zero when no source
//            is supplied to the builder),
//   dF     : d F / d x0 along each zeta0-column (finite differences).
// Columns are uniform in zeta0 over [-pi/2, pi/2] inclusive; rows uniform in
// x0.  All per-column lookups interpolate in x0 with cubic Hermite pieces.
struct FlowGrid {
  double x0_min = -4.0;
  double x0_max = 4.0;
  int nx0 = 1601;
  int nzeta = 321;  // odd, so the grid is symmetric and contains zeta = 0
};

class FlowTables {
 public:
  double t() const { return t_; }
  const FlowGrid& grid() const { return grid_; }
  double zeta(int col) const;
  double x0(int i) const;
  int ncols() const { return grid_.nzeta; }
  int nrows() const { return grid_.nx0; }

  // Raw field access, index col * nx0 + i.
  const std::vector<double>& F() const { return F_; }
  const std::vector<double>& G() const { return G_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& I() const { return I_; }
  const std::vector<double>& S() const { return S_; }
  const std::vector<double>& dF() const { return dF_; }

  // Cubic Hermite evaluation of a stored field along one column.
  double eval(const std::vector<double>& field, int col, double x0) const;
  // Same, with the interpolant's derivative.
  double eval_deriv(const std::vector<double>& field, int col, double x0) const;

  // Solves F(t, x0, zeta_col) = x for x0 (binary search on the monotone
  // column, then Newton).  Throws numerical_error if x leaves the table.
  double invert(int col, double x) const;

  // Forward endpoints x_t^{+-} = F(t, 0, +-pi/2); the interval I_t between
  // them is the region swept by the characteristics emitted from the origin.
  double x_plus() const;
  double x_minus() const;

  friend std::vector<FlowTables> build_flow_tables(
      const Profile1D& lambda, const std::vector<double>& times,
      const FlowGrid& grid, std::function<double(double)> source);

 private:
  double t_ = 0.0;
  FlowGrid grid_;
  std::vector<double> F_, G_, r_, I_, S_, dF_;
};

// Integrates the characteristic system by RK4 through the sorted, nonnegative
// `times`, snapshotting tables at each.  Verifies that every column map
// x0 -> F stays a diffeomorphism with slope >= 1/2 and throws numerical_error
// naming that bound otherwise.  `source`, when nonempty, is integrated along
// each characteristic into the S field.
std::vector<FlowTables> build_flow_tables(
    const Profile1D& lambda, const std::vector<double>& times,
    const FlowGrid& grid, std::function<double(double)> source = {});
FlowTables build_flow_tables(const Profile1D& lambda, double t,
                             const FlowGrid& grid,
                             std::function<double(double)> source = {});

// Antiderivative of 1 / lambda from 0 to x (adaptive Simpson) and its
// inverse; the front positions satisfy x_t^{+-} = Lambda^{-1}(+-t).
double lambda_antiderivative(const Profile1D& lambda, double x);
double lambda_antiderivative_inverse(const Profile1D& lambda, double target);

}  // namespace diracedge
