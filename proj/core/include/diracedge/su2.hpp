#pragma once

#include <Eigen/Dense>

#include "diracedge/phase_space.hpp"

namespace diracedge {

// Lifts a rotation B in SO(3) to U in SU(2) with
//   U sigma_j U^dag = sum_i B_ij sigma_i.
// Quaternion extraction picks the numerically largest of the four trace
// branches; the returned representative is one of the two preimages +-U.
// Throws invalid_input unless B is orthogonal with det +1 (tolerance 1e-8).
Eigen::Matrix2cd su2_from_so3(const Eigen::Matrix3d& B);

// Inverse direction: the rotation realized by a (special) unitary U,
// R_ij = (1/2) Re Tr(sigma_i U sigma_j U^dag).
Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& U);

}  // namespace diracedge
