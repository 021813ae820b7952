#pragma once

#include <functional>
#include <vector>

#include "diracedge/dirac_symbol.hpp"

namespace diracedge {

// Sample of a crossing-set transport trajectory together with the model
// coefficients and the accumulated envelope data along it:
//   rho = lambda(t)/lambda(0),  nu = int_0^t mu/rho^2,  phase = int_0^t s.
struct EdgeSample {
  double t = 0.0;
  PhasePoint z = PhasePoint::Zero();
  double lambda = 0.0;
  double mu = 0.0;
  double s = 0.0;
  double rho = 1.0;
  double nu = 0.0;
  double phase = 0.0;
};

struct EdgeTrajectory {
  std::vector<EdgeSample> samples;

  const EdgeSample& at_time(double t) const;  // nearest sample
};

// Coefficient overrides as functions of (t, z).  The subprincipal transport
// coefficient mu and the scalar potential s are not determined by the symbol
// alone; they default to zero and can be supplied by the caller.
struct EdgeCoefficients {
  std::function<double(double, const PhasePoint&)> mu;
  std::function<double(double, const PhasePoint&)> s;
};

// Integrates dz/dt = V(z) (the transport field of the crossing set) with RK4
// and a Gauss-Newton projection back onto {p = 0} after every step (at most
// two iterations; the residual max_j |p_j| must stay below 1e-8 or
// numerical_error is thrown).  The initial point is projected the same way.
// Negative T integrates backward.  Accumulated integrals use the trapezoid
// rule on the step grid.
EdgeTrajectory integrate_edge_ode(const DiracSymbol& sym, const PhasePoint& z0,
                                  double T, double dt,
                                  const EdgeCoefficients& coeffs = {});

// Spatial propagation speed |(V_x1, V_x2)| at a crossing point.
double predicted_speed(const DiracSymbol& sym, const PhasePoint& z);

}  // namespace diracedge
