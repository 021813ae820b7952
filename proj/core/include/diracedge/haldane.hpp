#pragma once

#include <functional>
#include <random>

#include <Eigen/Dense>

#include "diracedge/common.hpp"
#include "diracedge/dirac_symbol.hpp"

namespace diracedge {

// Tight-binding honeycomb lab: Bloch matrices for the nearest-neighbor hopping
// model with anisotropic weights and a time-breaking mass term, Dirac-point
// location and cone extraction, and the emergent (pseudo-)metric and magnetic
// field of the spatially strained effective model together with the resulting
// interface-speed formula.
//
// Momentum convention.  The Bloch phases are written e^{i xi_1}, e^{i xi_2} in
// lattice coordinates: xi_j is the phase picked up across the j-th Bravais
// generator, so the Brillouin zone is [0, 2pi)^2 componentwise.  Under this
// convention the unperturbed off-diagonal sum omega vanishes exactly at
// (2pi/3, -2pi/3); with phases e^{i xi.v_j} against the unit-length Cartesian
// generators the same point is not a zero.  resolve_momentum_convention()
// performs that check numerically; lattice coordinates win and are the frozen
// default everywhere in this module.
//
// Cone embedding scale.  Cone data is additionally reported in Cartesian
// momentum units in which a lattice-coordinate increment delta corresponds to
// physical momentum q via delta_j = q . v_j / 2 - pairing against the HALF
// lattice vectors (embed scale 1/2).  Under that scale the unperturbed cone
// coefficient is sqrt(3)/4 exactly; pairing against the full unit-length
// generators would double it.

// Unit-length Bravais generators of the honeycomb lattice.
inline Eigen::Vector2d honeycomb_v1() {
  return Eigen::Vector2d(-0.5, -0.5 * std::sqrt(3.0));
}
inline Eigen::Vector2d honeycomb_v2() {
  return Eigen::Vector2d(0.5, -0.5 * std::sqrt(3.0));
}

enum class MomentumConvention { lattice_coordinates, cartesian };

// Nearest-neighbor model with hopping weights (1-a1-a2, 1+a1, 1+a2)/3 and a
// next-nearest-neighbor time-breaking mass term of strength m.
struct HoneycombModel {
  Eigen::Vector2d a = Eigen::Vector2d::Zero();  // hopping anisotropy (a1, a2)
  double m = 0.0;                               // mass parameter
  MomentumConvention convention = MomentumConvention::lattice_coordinates;
};

// Off-diagonal hopping sum
//   omega_a(xi) = (1-a1-a2) + (1+a1) e^{i phi_1} + (1+a2) e^{i phi_2},
// where (phi_1, phi_2) are the phase arguments under the model's convention.
complex honeycomb_omega(const HoneycombModel& model, const Eigen::Vector2d& xi);

// (d omega / d xi_1, d omega / d xi_2) with respect to the components of xi.
Eigen::Vector2cd honeycomb_omega_gradient(const HoneycombModel& model,
                                          const Eigen::Vector2d& xi);

// Flux function of the mass term: beta = sin phi_1 - sin phi_2
// - sin(phi_1 - phi_2).  Equals 3 sqrt(3)/2 at the reference Dirac point.
double honeycomb_beta(const HoneycombModel& model, const Eigen::Vector2d& xi);

// Bloch matrix [[2 m beta, omega_a], [conj omega_a, -2 m beta]].
Eigen::Matrix2cd bloch_matrix(const HoneycombModel& model,
                              const Eigen::Vector2d& xi);

// Band energies -E, +E with E = sqrt(|omega|^2 + (2 m beta)^2).
std::pair<double, double> band_energies(const HoneycombModel& model,
                                        const Eigen::Vector2d& xi);

// Degeneracy point of the unperturbed model in lattice coordinates:
// (2pi/3, -2pi/3).
Eigen::Vector2d dirac_point_reference();

// Evaluates |omega_0| at the reference point under both phase conventions and
// returns the one that annihilates it (lattice coordinates).  The residuals
// are written to the out-parameters when non-null.
MomentumConvention resolve_momentum_convention(
    double* residual_lattice = nullptr, double* residual_cartesian = nullptr);

// Newton search for a zero of omega_a starting from `guess` (default: the
// reference point).  Converges quadratically for anisotropies |a| < 0.2;
// throws numerical_error when the iteration leaves the basin.
Eigen::Vector2d find_dirac_point(const HoneycombModel& model);
Eigen::Vector2d find_dirac_point(const HoneycombModel& model,
                                 const Eigen::Vector2d& guess);

// Conical-crossing data at a verified zero of omega_a.
struct ConeData {
  Eigen::Vector2d xi;          // located zero, lattice coordinates
  double omega_abs = 0.0;      // |omega_a(xi)| residual
  Eigen::Vector2cd grad;       // (d1 omega, d2 omega), lattice coordinates
  Eigen::Vector2d alpha1;      // physical frame rows under the half-vector
  Eigen::Vector2d alpha2;      //   embedding: omega ~ (alpha1 + i alpha2) . q
  complex coefficient;         // complex-linear cone coefficient gamma+ in
                               //   omega ~ gamma+ (q1+iq2) + gamma- (q1-iq2)
  complex coefficient_conj;    // conjugate-linear part gamma-
  double mass_coefficient = 0.0;  // 2 m beta at the zero
  double frame_condition = 1.0;   // condition number of [alpha1; alpha2]
};

// Extracts the complex momentum gradient at xi_a by Richardson-extrapolated
// central differences and embeds it in Cartesian momentum units (see the
// header comment for the half-vector scale).  Throws invalid_input when xi_a
// is not a zero of omega_a, numerical_error when the frame is degenerate.
ConeData extract_cone(const HoneycombModel& model, const Eigen::Vector2d& xi_a);

// Spatially varying cone data: frame rows alpha1(x), alpha2(x), cone-center
// covector field xi(x), and mass field m(x), defining the symbol
//   p1 = alpha1(x).(xi - xi(x)),  p2 = alpha2(x).(xi - xi(x)),  p3 = m(x).
// The derivative fields are optional; central differences with step
// 1e-5 * max(1, |x_j|) fill in when they are absent.
struct StrainField {
  std::function<Eigen::Vector2d(double, double)> alpha1;
  std::function<Eigen::Vector2d(double, double)> alpha2;
  std::function<Eigen::Vector2d(double, double)> xi;
  std::function<double(double, double)> m;
  std::function<Eigen::Matrix2d(double, double)> dxi;  // rows: grad xi_1, grad xi_2
  std::function<Eigen::Vector2d(double, double)> grad_m;
};

// Uniform strain built from extracted cone data: constant frame, momentum
// measured from the cone center (xi == 0), mass field supplied by the caller.
StrainField uniform_strain(const ConeData& cone,
                           std::function<double(double, double)> m,
                           std::function<Eigen::Vector2d(double, double)>
                               grad_m = nullptr);

// Emergent geometry of a strain field at a point.
struct PseudoGeometry {
  Eigen::Matrix2d g;        // SPD metric on covectors: |xi|_g^2 = xi^T g xi
  double det_frame = 0.0;   // det [alpha1; alpha2]
  double m_tilde = 0.0;     // m / det_frame
  double B_eff = 0.0;       // (d2 xi_1 - d1 xi_2) / det_frame
  double dxi_norm = 0.0;    // |d2 xi_1 - d1 xi_2|
};

PseudoGeometry pseudo_geometry(const StrainField& strain, double x1, double x2);

// Interface speed of the strained model at a point of the mass interface
// m^{-1}(0): speed = |grad_g m|_g / sqrt(|grad_g m|_g^2 + |d xi|_g^2), which
// is < 1 exactly when the cone-center field has nonzero curl.  `direction` is
// the g-unit velocity direction, the g-rotation by +90 degrees of the
// g-gradient of m (the positive-mass side lies to its right).
struct StrainedSpeed {
  double speed = 1.0;
  Eigen::Vector2d direction = Eigen::Vector2d::Zero();
  double grad_m_norm_g = 0.0;  // |A grad m|
  double dxi_norm = 0.0;       // |d2 xi_1 - d1 xi_2|
};

StrainedSpeed edge_speed_strained(const StrainField& strain, double x1,
                                  double x2);

// Symbol handoff: the strained model as a traceless Hermitian symbol field so
// the reduction / edge-trace / evolution pipelines run on it unchanged.
DiracSymbol strained_symbol(const StrainField& strain);

// Random smooth strain field for sweep tests: identity-dominated frame with
// low-frequency perturbations, a random Fourier cone-center field (generically
// curled), and a tilted-wall mass m(x) = x2 - w(x1) whose interface is easy to
// sample.  All derivative fields are analytic.
struct RandomStrainOptions {
  double frame_amplitude = 0.15;  // frame perturbation size (keeps det > 0.4)
  double xi_amplitude = 0.4;      // cone-center field amplitude
  int modes = 3;                  // Fourier modes per component
  double wall_tilt = 0.3;         // interface tilt amplitude
};

struct RandomStrain {
  StrainField field;
  std::function<double(double)> wall;  // interface height: m(x1, wall(x1)) == 0
};

RandomStrain random_strain_field(std::mt19937_64& rng,
                                 const RandomStrainOptions& options = {});

}  // namespace diracedge
