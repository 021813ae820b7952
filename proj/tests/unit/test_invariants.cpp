#include <cmath>
#include <random>

#include <doctest.h>

#include "diracedge/dirac_symbol.hpp"
#include "diracedge/edge_trajectory.hpp"
#include "diracedge/linear_reduction.hpp"
#include "diracedge/symbol_invariants.hpp"

using namespace diracedge;

namespace {

DiracSymbol wall_symbol() {
  return DiracSymbol::domain_wall(
      [](double, double x2) { return std::tanh(x2); });
}

DiracSymbol landau_symbol(double B) {
  return DiracSymbol::magnetic([](double, double x2) { return x2; },
                               [B](double, double x2) { return -B * x2; },
                               [](double, double) { return 0.0; });
}

}  // namespace

TEST_SUITE("symbol_invariants") {

TEST_CASE("domain wall: bracket matrix, gap rate, and eigenlines") {
  DiracSymbol sym = wall_symbol();
  PhasePoint z(0.3, 0.0, 0.0, 0.0);

  Hermitian2 M = poisson_matrix(sym, z);
  CHECK(M.p(0) == doctest::Approx(1.0).epsilon(1e-9));  // {p2, p3} = m'(0)
  CHECK(std::abs(M.p(1)) < 1e-9);
  CHECK(std::abs(M.p(2)) < 1e-9);
  CHECK(std::abs(M.p0) < 1e-12);
  CHECK(lambda_gap(sym, z) == doctest::Approx(1.0).epsilon(1e-9));

  auto [minus, plus] = eigenlines(sym, z);
  CHECK(minus.eigenvalue == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(plus.eigenvalue == doctest::Approx(1.0).epsilon(1e-8));
  // sigma_1 eigenvectors with the first component phase-fixed positive.
  CHECK(minus.direction(0).real() == doctest::Approx(std::sqrt(0.5)));
  CHECK(minus.direction(1).real() == doctest::Approx(-std::sqrt(0.5)));
  CHECK(plus.direction(1).real() == doctest::Approx(std::sqrt(0.5)));

  Eigen::Vector4d V = edge_vector_field(sym, z);
  CHECK(V(0) == doctest::Approx(-1.0).epsilon(1e-9));  // travels toward -x1
  CHECK(std::abs(V(1)) < 1e-9);
  CHECK(std::abs(V(2)) < 1e-9);
  CHECK(std::abs(V(3)) < 1e-9);
  CHECK(predicted_speed(sym, z) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform field: gap rate and slowed drift speed") {
  for (double B : {1.0, 2.0}) {
    CAPTURE(B);
    DiracSymbol sym = landau_symbol(B);
    PhasePoint z = find_crossing(sym, PhasePoint(0.1, 0.05, 0.0, 0.0));
    CHECK(sym.p(z).cwiseAbs().maxCoeff() < 1e-11);

    double lam = lambda_gap(sym, z);
    CHECK(lam == doctest::Approx(std::pow(1.0 + B * B, 0.25)).epsilon(1e-9));
    CHECK(predicted_speed(sym, z) ==
          doctest::Approx(1.0 / std::sqrt(1.0 + B * B)).epsilon(1e-9));

    // Same sideways drift convention as the wall: toward -x1 for m
    // increasing in x2.
    Eigen::Vector4d V = edge_vector_field(sym, z);
    CHECK(V(0) < 0.0);
    CHECK(std::abs(V(1)) < 1e-10);
  }
}

TEST_CASE("edge field is tangent to the crossing set") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Matrix<double, 3, 4> C = random_crossing_symbol(rng);
    DiracSymbol sym = DiracSymbol::linear(C);
    PhasePoint z = PhasePoint::Zero();
    Eigen::Vector4d V = edge_vector_field(sym, z);
    CHECK((C * V).cwiseAbs().maxCoeff() < 1e-9 * V.norm());
    CHECK(check_transversality(sym, z).satisfied);
  }
}

TEST_CASE("crossing search converges and reports transversality") {
  DiracSymbol sym = wall_symbol();
  PhasePoint z = find_crossing(sym, PhasePoint(-0.4, 0.3, 0.2, -0.1));
  CHECK(sym.p(z).cwiseAbs().maxCoeff() < 1e-11);
  TransversalityReport tr = check_transversality(sym, z);
  CHECK(tr.satisfied);
  CHECK(tr.min_singular_value > 0.5);
}

TEST_CASE("transport ODE stays on the crossing set at constant speed") {
  DiracSymbol sym = landau_symbol(1.0);
  PhasePoint z0 = PhasePoint::Zero();
  double T = 1.0, dt = 1e-3;
  EdgeTrajectory traj = integrate_edge_ode(sym, z0, T, dt);
  REQUIRE(traj.samples.size() > 100);

  double v = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < traj.samples.size(); i += 100) {
    const EdgeSample& s = traj.samples[i];
    CHECK(sym.p(s.z).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(s.lambda == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-8));
    CHECK(s.rho == doctest::Approx(1.0).epsilon(1e-8));
  }
  const EdgeSample& last = traj.samples.back();
  CHECK(last.t == doctest::Approx(T));
  CHECK(last.z(0) == doctest::Approx(-v * T).epsilon(1e-6));
  CHECK(std::abs(last.z(1)) < 1e-8);

  // Supplied coefficient functions accumulate along the trajectory.
  EdgeCoefficients coeffs;
  coeffs.mu = [](double, const PhasePoint&) { return 0.25; };
  coeffs.s = [](double, const PhasePoint&) { return -0.5; };
  EdgeTrajectory traj2 = integrate_edge_ode(sym, z0, T, dt, coeffs);
  CHECK(traj2.samples.back().nu == doctest::Approx(0.25 * T).epsilon(1e-8));
  CHECK(traj2.samples.back().phase ==
        doctest::Approx(-0.5 * T).epsilon(1e-8));

  // Nearest-sample lookup.
  CHECK(traj.at_time(0.5).t == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("degenerate bracket matrix is reported, not silently used") {
  // p = (xi1, xi1, x2): every pairwise bracket vanishes, so the gap rate is
  // zero and the polarization lines are undefined.
  Eigen::Matrix<double, 3, 4> C = Eigen::Matrix<double, 3, 4>::Zero();
  C(0, 2) = 1.0;
  C(1, 2) = 1.0;
  C(2, 1) = 1.0;
  DiracSymbol sym = DiracSymbol::linear(C);
  CHECK_THROWS_AS((void)eigenlines(sym, PhasePoint::Zero()), numerical_error);
}

}  // TEST_SUITE
