#include "diracedge/wavepacket.hpp"

#include <cmath>

namespace diracedge {

SpinorField synthesize_wavepacket(const Grid2& grid,
                                  const WavepacketSpec& spec) {
  require(spec.h > 0.0, "synthesize_wavepacket: h must be positive");
  require(static_cast<bool>(spec.envelope),
          "synthesize_wavepacket: envelope must be callable");
  require(spec.orientation.norm() > 0.0,
          "synthesize_wavepacket: orientation must be nonzero");

  SpinorField psi(grid);
  double amp = 1.0 / std::sqrt(spec.h);
  double sqh = std::sqrt(spec.h);
  complex phase0 = std::exp(complex(0.0, spec.phase));
  for (int i1 = 0; i1 < grid.n1; ++i1) {
    double d1 = Grid2::wrap(grid.x1(i1) - spec.center(0), grid.L1);
    for (int i2 = 0; i2 < grid.n2; ++i2) {
      double d2 = Grid2::wrap(grid.x2(i2) - spec.center(1), grid.L2);
      complex osc = std::exp(
          complex(0.0, (spec.momentum(0) * d1 + spec.momentum(1) * d2) /
                           spec.h));
      complex value =
          amp * phase0 * osc * spec.envelope(d1 / sqh, d2 / sqh);
      std::size_t idx = grid.index(i1, i2);
      psi.c0[idx] = value * spec.orientation(0);
      psi.c1[idx] = value * spec.orientation(1);
    }
  }
  return psi;
}

}  // namespace diracedge
