#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "diracedge/common.hpp"

namespace diracedge {

// L2-normalized Hermite functions g_n and their semiclassically scaled
// variants g_{n,h}(x) = h^{-1/4} g_n(x / sqrt(h)).  The raising/lowering
// operators are a* = x - d/dx and a = x + d/dx with
//   a* g_n = sqrt(2(n+1)) g_{n+1},   a g_n = sqrt(2n) g_{n-1},
// so in scaled form (x - h d/dx) g_{n,h} = sqrt(2h(n+1)) g_{n+1,h} and
// (x + h d/dx) g_{n,h} = sqrt(2hn) g_{n-1,h}.

// g_n(x) via the stable three-term recurrence
//   g_{n+1} = (sqrt(2) x g_n - sqrt(n) g_{n-1}) / sqrt(n+1).
double hermite_function(int n, double x);

// g_0..g_nmax at one point (single recurrence sweep).
std::vector<double> hermite_functions(int nmax, double x);

// g_{n,h}(x) = h^{-1/4} g_n(x / sqrt(h)).
double scaled_hermite(int n, double h, double x);

// Coefficients of the scaled ladder identities above.
double ladder_up_coeff(int n, double h);    // sqrt(2 h (n+1))
double ladder_down_coeff(int n, double h);  // sqrt(2 h n)

// Two-component transverse profile G_{n,h}(x) = (g_{n,h}(x), g_{n-1,h}(x));
// the n = 0 profile has a vanishing second component.
Eigen::Vector2d transverse_profile(int n, double h, double x);

// Componentwise projection of a spinor profile F : R -> C^2 onto G_{n,h}:
//   f_n = ( <F_1, g_{n,h}>, <F_2, g_{n-1,h}> ),
// so that F = sum_n f_n(1) g_{n,h} e_1 + f_n(2) g_{n-1,h} e_2 when F lies in
// the span.  Trapezoid quadrature on [-x_max, x_max]; for smooth rapidly
// decaying F the rule is spectrally accurate.
std::vector<Eigen::Vector2cd> transverse_mode_coefficients(
    const std::function<Eigen::Vector2cd(double)>& F, double h, int nmax,
    double x_max, int npts);

// Envelope of the n-th transverse block extracted from a two-variable
// profile A : R^2 -> C^2 (unscaled transverse variable):
//   a_n(y) = (2n)^{-1/4} ( <A_1(y / sqrt(2n), .), g_n>,
//                          <A_2(y / sqrt(2n), .), g_{n-1}> ),  n >= 1.
Eigen::Vector2cd block_envelope(
    const std::function<Eigen::Vector2cd(double, double)>& A, int n, double y,
    double x_max, int npts);

}  // namespace diracedge
