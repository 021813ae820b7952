#pragma once

#include <functional>

#include <Eigen/Dense>

#include "diracedge/grid2.hpp"

namespace diracedge {

// Semiclassical wavepacket
//   Psi(x) = h^{-1/2} e^{i s} e^{i xi0.(x - x0)/h} A((x - x0)/sqrt(h)) u
// with ||Psi||_{L2} = ||A||_{L2} ||u|| in the continuum.  The envelope A is
// an arbitrary complex function of the blown-up offset y = (x - x0)/sqrt(h);
// displacements are taken modulo the periodic box.
struct WavepacketSpec {
  double h = 0.0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();      // x0
  Eigen::Vector2d momentum = Eigen::Vector2d::Zero();    // xi0
  std::function<complex(double, double)> envelope;       // A(y1, y2)
  Eigen::Vector2cd orientation = Eigen::Vector2cd::Zero();  // u
  double phase = 0.0;                                    // s
};

SpinorField synthesize_wavepacket(const Grid2& grid, const WavepacketSpec& spec);

}  // namespace diracedge
