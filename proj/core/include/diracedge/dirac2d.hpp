#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "diracedge/dirac_symbol.hpp"
#include "diracedge/grid2.hpp"
#include "diracedge/wavepacket.hpp"

namespace diracedge {

struct Observables2D {
  double t = 0.0;
  double mass = 0.0;           // ||Psi||^2
  double linf = 0.0;           // max_x |Psi(x)|
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();  // of |Psi|^2
  double interface_fraction = 0.0;  // mass within 3 sqrt(h) of {m = 0}
  double minus_fraction = 0.0;      // pointwise traveling-line content
  double plus_fraction = 0.0;       // pointwise collapsing-line content
};

struct Evolve2DOptions {
  double dt = 0.0;          // 0: use the admissible bound
  int snapshot_count = 0;   // evenly spaced field snapshots, at most 50
  int observable_stride = 0;  // steps between observable rows; 0: auto (~200 rows)
};

struct Evolution2DResult {
  std::vector<Observables2D> series;
  std::vector<double> snapshot_times;
  std::vector<SpinorField> snapshots;
  SpinorField final_state;
  double dt = 0.0;
  std::size_t steps = 0;
};

struct PredictionComparison {
  double overlap = 0.0;    // |<a, b>| / (||a|| ||b||)
  double l2_error = 0.0;   // ||a - b||
  double rel_l2_error = 0.0;
};

// Pseudospectral evolution of i h d_t Psi = D Psi with
//   D = sigma1 (h D_1 - A_1) + sigma2 (h D_2 - A_2) + m sigma3,
// derivatives by FFT, multiplications pointwise.  The symbol must be of
// minimal-coupling form (components affine in xi with unit coefficient);
// m and A are sampled from it at xi = 0.
class DiracEvolver2D {
 public:
  // Throws numerical_error when the grid violates the resolution bound
  // dx_j <= sqrt(h)/8.
  DiracEvolver2D(const Grid2& grid, double h, const DiracSymbol& sym,
                 unsigned threads = 1);
  ~DiracEvolver2D();

  const Grid2& grid() const { return grid_; }
  double h() const { return h_; }

  // Admissible RK4 step: 0.5 h min(dx) / (pi (1 + max|m| + max|A|)).
  double dt_bound() const;

  SpinorField apply(const SpinorField& psi) const;  // D Psi

  // Throws numerical_error when options.dt exceeds dt_bound() (the message
  // names the bound), when the initial state is not seam-clean (<= 1e-10 at
  // the periodic seam), or when the state stops being finite.
  Evolution2DResult evolve(const SpinorField& psi0, double T,
                           const Evolve2DOptions& options = {}) const;

  Observables2D observables(const SpinorField& psi, double t) const;

 private:
  struct Impl;
  Grid2 grid_;
  double h_ = 0.0;
  unsigned threads_ = 1;
  std::unique_ptr<Impl> impl_;
};

PredictionComparison compare_to_prediction(const SpinorField& state,
                                           const SpinorField& predicted);

}  // namespace diracedge
