// Microbenchmarks for the hot paths: the 2D Dirac operator application, the
// 1D block operator application, the linear normal-form reduction, the
// frequency-superposition quadrature, Hermite evaluation, and the envelope
// dilation step.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "diracedge/block1d.hpp"
#include "diracedge/dirac2d.hpp"
#include "diracedge/eikonal.hpp"
#include "diracedge/envelope.hpp"
#include "diracedge/flow.hpp"
#include "diracedge/hermite.hpp"
#include "diracedge/linear_reduction.hpp"
#include "diracedge/parametrix.hpp"
#include "diracedge/wavepacket.hpp"

using namespace diracedge;

namespace {

void bm_dirac2d_apply(benchmark::State& state) {
  Grid2 grid(4.0, 4.0, 256, 256);
  DiracSymbol sym = DiracSymbol::domain_wall(
      [](double, double x2) { return std::tanh(x2); });
  DiracEvolver2D ev(grid, 0.02, sym);
  WavepacketSpec spec;
  spec.h = 0.02;
  spec.center = Eigen::Vector2d(-0.5, 0.0);
  spec.envelope = [](double y1, double y2) {
    return complex(std::exp(-0.5 * (y1 * y1 + y2 * y2)) / std::sqrt(M_PI));
  };
  spec.orientation = Eigen::Vector2cd(std::sqrt(0.5), -std::sqrt(0.5));
  SpinorField psi = synthesize_wavepacket(grid, spec);
  for (auto _ : state) {
    SpinorField out = ev.apply(psi);
    benchmark::DoNotOptimize(out.c0.data());
  }
}
BENCHMARK(bm_dirac2d_apply)->Unit(benchmark::kMillisecond);

void bm_block1d_apply(benchmark::State& state) {
  Grid1 grid{8.0, 8192};
  ModelCoefficients mc;
  mc.lambda = tanh_reflected_profile(1.0, 0.3, 2.0);
  mc.mu = constant_field(0.1);
  BlockWaveEvolver ev(grid, mc, 3, 0.01);
  SpinorField1 f = concentrated_initial(grid, 0.01, [](double x) {
    double g = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    return Eigen::Vector2cd(0.8 * g, 0.6 * g);
  });
  for (auto _ : state) {
    SpinorField1 out = ev.apply(f);
    benchmark::DoNotOptimize(out.c0.data());
  }
}
BENCHMARK(bm_block1d_apply)->Unit(benchmark::kMicrosecond);

void bm_linear_reduction(benchmark::State& state) {
  std::mt19937_64 rng(7);
  Eigen::Matrix<double, 3, 4> C = random_crossing_symbol(rng);
  for (auto _ : state) {
    LinearReduction red = reduce_linear_symbol(C);
    benchmark::DoNotOptimize(red.S.data());
  }
}
BENCHMARK(bm_linear_reduction)->Unit(benchmark::kMicrosecond);

void bm_superpose_row(benchmark::State& state) {
  ModelCoefficients mc;
  mc.lambda = constant_profile(1.0);
  mc.mu = constant_field(0.1);
  std::vector<PhaseTables> tabs = make_phase_tables(mc, {0.0, 0.4}, PhaseMesh{});
  DispersiveWaveSpec spec;
  spec.n = 1;
  spec.eps = 0.01;
  spec.ahat = [](double xi) {
    double g = std::sqrt(2.0) * std::pow(M_PI, 0.25) * std::exp(-0.5 * xi * xi);
    return Eigen::Vector2cd(0.8 * g, 0.6 * g);
  };
  std::vector<double> xs(16);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -0.3 + 0.04 * double(i);
  for (auto _ : state) {
    auto field = superpose_wkb(tabs[1], tabs[0], spec, xs);
    benchmark::DoNotOptimize(field.data());
  }
}
BENCHMARK(bm_superpose_row)->Unit(benchmark::kMillisecond);

void bm_hermite(benchmark::State& state) {
  for (auto _ : state) {
    std::vector<double> vals = hermite_functions(12, 0.7);
    benchmark::DoNotOptimize(vals.data());
  }
}
BENCHMARK(bm_hermite);

void bm_evolve_envelope(benchmark::State& state) {
  Envelope1D a0;
  a0.length = 16.0;
  a0.a.resize(4096);
  for (std::size_t i = 0; i < a0.a.size(); ++i) {
    double y = -8.0 + 16.0 * double(i) / double(a0.a.size());
    a0.a[i] = std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y);
  }
  for (auto _ : state) {
    Envelope1D at = evolve_envelope(a0, 1.2, 0.3, 0.1);
    benchmark::DoNotOptimize(at.a.data());
  }
}
BENCHMARK(bm_evolve_envelope)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
