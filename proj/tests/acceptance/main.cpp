// Acceptance suite: one self-contained check per shipped claim, each printing
// exactly one PASS/FAIL line with its key measurements.  Heavy criteria are
// full-physics runs; expect the complete suite to take tens of minutes on one
// core.  Diagnostics go to stderr, results to stdout; exit 0 iff every
// selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diracedge/block1d.hpp"
#include "diracedge/dirac2d.hpp"
#include "diracedge/eikonal.hpp"
#include "diracedge/envelope.hpp"
#include "diracedge/flow.hpp"
#include "diracedge/haldane.hpp"
#include "diracedge/linear_reduction.hpp"
#include "diracedge/parametrix.hpp"
#include "diracedge/symbol_invariants.hpp"
#include "diracedge/wavepacket.hpp"

using namespace diracedge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double wall_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point origin = clock::now();
  return std::chrono::duration<double>(clock::now() - origin).count();
}

std::function<complex(double, double)> gaussian_envelope_2d(double w) {
  double norm = 1.0 / (w * std::sqrt(M_PI));
  return [w, norm](double y1, double y2) {
    return complex(norm * std::exp(-(y1 * y1 + y2 * y2) / (2.0 * w * w)));
  };
}

Eigen::Vector2cd spinor_gaussian(double x) {
  double g = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  return Eigen::Vector2cd(0.8 * g, 0.6 * g);
}

Eigen::Vector2cd spinor_gaussian_hat(double xi) {
  double g = std::sqrt(2.0) * std::pow(M_PI, 0.25) * std::exp(-0.5 * xi * xi);
  return Eigen::Vector2cd(0.8 * g, 0.6 * g);
}

// Least-squares centroid slope over an observable series.
Eigen::Vector2d fit_velocity(const std::vector<Observables2D>& series) {
  double n = 0.0, st = 0.0, stt = 0.0;
  Eigen::Vector2d sy = Eigen::Vector2d::Zero(), sty = Eigen::Vector2d::Zero();
  for (const Observables2D& o : series) {
    n += 1.0;
    st += o.t;
    stt += o.t * o.t;
    sy += o.centroid;
    sty += o.t * o.centroid;
  }
  double denom = n * stt - st * st;
  if (denom <= 0.0) return Eigen::Vector2d::Zero();
  return (n * sty - st * sy) / denom;
}

struct PacketRun {
  Eigen::Vector2d velocity;
  double mass_drift = 0.0;
  double transverse_drift = 0.0;  // max |centroid_2 - center_2| over time
  double linf_final = 0.0;
  Evolution2DResult result;
};

PacketRun run_packet(const DiracSymbol& sym, double h, double L, int N,
                     double T, const Eigen::Vector2d& center,
                     bool traveling_line) {
  Grid2 grid(L, L, N, N);
  DiracEvolver2D ev(grid, h, sym);
  PhasePoint z0(center(0), center(1), 0.0, 0.0);
  auto lines = eigenlines(sym, z0);

  WavepacketSpec spec;
  spec.h = h;
  spec.center = center;
  spec.envelope = gaussian_envelope_2d(1.0);
  spec.orientation =
      traveling_line ? lines.first.direction : lines.second.direction;
  SpinorField psi0 = synthesize_wavepacket(grid, spec);

  PacketRun out;
  out.result = ev.evolve(psi0, T);
  out.velocity = fit_velocity(out.result.series);
  const auto& first = out.result.series.front();
  const auto& last = out.result.series.back();
  out.mass_drift = std::abs(last.mass - first.mass) / first.mass;
  for (const Observables2D& o : out.result.series)
    out.transverse_drift =
        std::max(out.transverse_drift, std::abs(o.centroid(1) - center(1)));
  out.linf_final = last.linf;
  return out;
}

DiracSymbol wall_symbol() {
  return DiracSymbol::domain_wall(
      [](double, double x2) { return std::tanh(x2); },
      [](double, double x2) {
        double c = std::cosh(x2);
        return Eigen::Vector2d(0.0, 1.0 / (c * c));
      });
}

// ---------------------------------------------------------------------------
// AC-1: 200 random linear crossing symbols reduce to the exact normal form.

Outcome ac1() {
  std::mt19937_64 rng(20240817ULL);
  double t0 = wall_seconds();
  double symbol = 0.0, symplectic = 0.0, det = 0.0, lambda = 0.0;
  const int count = 200;
  for (int i = 0; i < count; ++i) {
    Eigen::Matrix<double, 3, 4> C = random_crossing_symbol(rng);
    LinearReduction red = reduce_linear_symbol(C);
    NormalFormReport rep = verify_normal_form(C, red);
    symbol = std::max(symbol, rep.symbol_residual);
    symplectic = std::max(symplectic, rep.symplectic_residual);
    det = std::max(det, rep.det_residual);
    lambda = std::max(lambda, rep.lambda_residual);
  }
  double elapsed = wall_seconds() - t0;
  Outcome o;
  o.pass = symbol < 1e-9 && symplectic < 1e-9 && det < 1e-10 &&
           lambda < 1e-9 && elapsed < 5.0;
  o.detail = fmt(
      "%d draws, max residuals: symbol %.2e, symplectic %.2e, det %.2e, "
      "lambda %.2e, %.2f s",
      count, symbol, symplectic, det, lambda, elapsed);
  return o;
}

// ---------------------------------------------------------------------------
// AC-2: a traveling-line packet on the tanh wall moves at unit speed along
// the interface, stays on it, and matches the translated profile.

Outcome ac2() {
  const double h = 0.02, T = 0.5;
  PacketRun run = run_packet(wall_symbol(), h, 4.0, 256, T,
                             Eigen::Vector2d(-0.5, 0.0), true);
  double speed = run.velocity.norm();

  // Overlap with the rigidly translated initial packet (predicted center
  // moves by T at unit speed in the -x1 direction).
  Grid2 grid(4.0, 4.0, 256, 256);
  DiracSymbol sym = wall_symbol();
  auto lines = eigenlines(sym, PhasePoint(-0.5, 0.0, 0.0, 0.0));
  WavepacketSpec spec;
  spec.h = h;
  spec.center = Eigen::Vector2d(-0.5 - T, 0.0);
  spec.envelope = gaussian_envelope_2d(1.0);
  spec.orientation = lines.first.direction;
  SpinorField predicted = synthesize_wavepacket(grid, spec);
  PredictionComparison cmp =
      compare_to_prediction(run.result.final_state, predicted);

  double bound = 2.0 * std::sqrt(h);
  Outcome o;
  o.pass = speed > 0.97 && speed < 1.03 && run.velocity(0) < 0.0 &&
           run.transverse_drift < bound && cmp.overlap > 0.9;
  o.detail = fmt(
      "speed %.4f (want 1 +- 3%%), velocity (%.4f, %.1e), transverse drift "
      "%.3f < %.3f, overlap %.3f, mass drift %.1e",
      speed, run.velocity(0), run.velocity(1), run.transverse_drift, bound,
      cmp.overlap, run.mass_drift);
  return o;
}

// ---------------------------------------------------------------------------
// AC-3: a collapsing-line packet does not travel; its peak grows on the
// h^{-1/4} scale, so linf * h^{1/4} is h-independent.

Outcome ac3() {
  const double T = 0.3;
  PacketRun a = run_packet(wall_symbol(), 0.04, 3.0, 128, T,
                           Eigen::Vector2d(0.0, 0.0), false);
  PacketRun b = run_packet(wall_symbol(), 0.01, 3.0, 256, T,
                           Eigen::Vector2d(0.0, 0.0), false);
  double va = a.linf_final * std::pow(0.04, 0.25);
  double vb = b.linf_final * std::pow(0.01, 0.25);
  double ratio = va / vb;
  Outcome o;
  o.pass = ratio > 0.75 && ratio < 1.25 && a.mass_drift <= 1e-5 &&
           b.mass_drift <= 1e-5;
  o.detail = fmt(
      "linf*h^(1/4): %.4f (h=0.04) vs %.4f (h=0.01), ratio %.3f in [0.75, "
      "1.25], mass drifts %.1e / %.1e, speeds %.3f / %.3f",
      va, vb, ratio, a.mass_drift, b.mass_drift, a.velocity.norm(),
      b.velocity.norm());
  return o;
}

// ---------------------------------------------------------------------------
// AC-4: a gauge field tilts the crossing and slows the interface mode to
// 1/sqrt(1+B^2).

Outcome ac4() {
  const double h = 0.04, T = 0.4;
  std::string detail;
  bool pass = true;
  for (double B : {1.0, 2.0}) {
    DiracSymbol sym = DiracSymbol::magnetic(
        [](double, double x2) { return x2; },
        [B](double, double x2) { return -B * x2; },
        [](double, double) { return 0.0; });
    PacketRun run =
        run_packet(sym, h, 3.0, 128, T, Eigen::Vector2d(0.0, 0.0), true);
    double speed = run.velocity.norm();
    double expected = 1.0 / std::sqrt(1.0 + B * B);
    double rel = speed / expected;
    pass = pass && rel > 0.95 && rel < 1.05;
    if (!detail.empty()) detail += "; ";
    detail += fmt("B=%.0f: speed %.4f vs %.4f (ratio %.3f)", B, speed,
                  expected, rel);
  }
  Outcome o;
  o.pass = pass;
  o.detail = detail + " (want ratios in [0.95, 1.05])";
  return o;
}

// ---------------------------------------------------------------------------
// AC-5: the traveling scalar mode follows the dilated-envelope prediction
// with an O(sqrt(h)) error.

Outcome ac5() {
  Profile1D lam = tanh_profile(1.0, 0.3);
  ModelCoefficients mc = plain_speed(lam);
  Grid1 grid{8.0, 2048};
  const double T = 0.5;
  double xT = lambda_antiderivative_inverse(lam, T);
  double rho = lam.value(xT) / lam.value(0.0);
  auto a0 = [](double y) {
    return complex(std::pow(M_PI, -0.25) * std::exp(-0.5 * y * y));
  };

  auto error_at = [&](double h) {
    ScalarWaveEvolver ev(grid, mc, h);
    std::vector<complex> f0 = traveling_initial(grid, h, a0);
    std::vector<complex> fT = ev.evolve(f0, T);
    double err2 = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      double x = grid.x(i);
      complex pred = std::pow(h, -0.25) / std::sqrt(rho) *
                     a0((x - xT) / (rho * std::sqrt(h)));
      err2 += std::norm(fT[i] - pred);
    }
    return std::sqrt(err2 * grid.dx());
  };

  double e_coarse = error_at(0.02);
  double e_fine = error_at(0.01);
  double ratio = e_coarse / e_fine;
  Outcome o;
  o.pass = ratio > 0.99 && ratio < 1.84;
  o.detail = fmt(
      "front %.4f, dilation %.4f; prediction error %.4f (h=0.02) vs %.4f "
      "(h=0.01), ratio %.3f in [0.99, 1.84]",
      xT, rho, e_coarse, e_fine, ratio);
  return o;
}

// ---------------------------------------------------------------------------
// AC-6: dispersive modes decay like t^{-1/2} uniformly and their mass stays
// inside the enlarged light cone.

Outcome ac6() {
  ModelCoefficients mc;
  mc.lambda = constant_profile(1.0);
  mc.mu = constant_field(0.1);
  const double eps = 0.01;
  std::vector<double> times;
  for (int i = 0; i <= 8; ++i) times.push_back(0.1 * i);  // 0.0 .. 0.8
  PhaseMesh mesh{-2.1, 2.1, 2049};
  std::vector<PhaseTables> tabs = make_phase_tables(mc, times, mesh);

  std::vector<double> xs(1024);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = -2.0 + 4.0 * double(i) / double(xs.size());
  double dx = xs[1] - xs[0];
  double margin = 3.0 * std::sqrt(eps);

  bool pass = true;
  std::string detail;
  double worst_outside = 0.0;
  for (int n : {1, 4}) {
    DispersiveWaveSpec spec;
    spec.n = n;
    spec.eps = eps;
    spec.ahat = spinor_gaussian_hat;
    double lo = 1e300, hi = 0.0;
    for (std::size_t it = 1; it < tabs.size(); ++it) {
      const PhaseTables& att = tabs[it];
      std::vector<Eigen::Vector2cd> field =
          superpose_wkb(att, tabs.front(), spec, xs);
      double sup = 0.0, mass = 0.0, outside = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        double a = field[i].norm();
        sup = std::max(sup, a);
        mass += a * a * dx;
        if (xs[i] < att.x_minus() - margin || xs[i] > att.x_plus() + margin)
          outside += a * a * dx;
      }
      double frac = mass > 0.0 ? outside / mass : 1.0;
      worst_outside = std::max(worst_outside, frac);
      pass = pass && frac < 1e-3;
      double scaled = sup * std::sqrt(att.t());
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
      std::fprintf(stderr, "[AC-6] n=%d t=%.1f sup=%.3f sup*sqrt(t)=%.3f "
                   "outside=%.1e\n", n, att.t(), sup, scaled, frac);
    }
    double ratio = lo > 0.0 ? hi / lo : 1e300;
    pass = pass && ratio <= 2.0;
    if (!detail.empty()) detail += "; ";
    detail += fmt("n=%d: sup*sqrt(t) in [%.3f, %.3f] (ratio %.3f)", n, lo, hi,
                  ratio);
  }
  Outcome o;
  o.pass = pass;
  o.detail =
      detail + fmt("; worst cone leak %.1e (want ratio <= 2, leak < 1e-3)",
                   worst_outside);
  return o;
}

// ---------------------------------------------------------------------------
// AC-7: the frequency-superposition parametrix tracks the directly computed
// block evolution at the leading stationary-phase order, with the error
// halving like sqrt(eps).

Outcome ac7() {
  ModelCoefficients mc;
  mc.lambda = tanh_reflected_profile(1.0, 0.3, 2.0);
  mc.mu = constant_field(0.1);
  const int nmode = 3;
  const double T = 0.4;
  PhaseMesh mesh{-1.4, 1.4, 2049};
  std::vector<PhaseTables> tabs = make_phase_tables(mc, {0.0, T}, mesh);

  struct Errors {
    double lead = 0.0, full = 0.0;
  };
  auto run_eps = [&](double eps, int N) {
    Grid1 grid{8.0, N};
    BlockWaveEvolver ev(grid, mc, nmode, eps);
    SpinorField1 f0 = concentrated_initial(grid, eps, spinor_gaussian);
    SpinorField1 fT = ev.evolve(f0, T);

    std::vector<double> xs;
    std::vector<int> idx;
    for (int i = 0; i < grid.n; ++i) {
      double x = grid.x(i);
      if (std::abs(x) <= 1.25) {
        xs.push_back(x);
        idx.push_back(i);
      }
    }
    DispersiveWaveSpec spec;
    spec.n = nmode;
    spec.eps = eps;
    spec.ahat = spinor_gaussian_hat;
    std::vector<Eigen::Vector2cd> lead =
        stationary_phase_profile(tabs[1], tabs[0], spec, xs);
    std::vector<Eigen::Vector2cd> full =
        superpose_wkb(tabs[1], tabs[0], spec, xs);
    Errors e;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      Eigen::Vector2cd direct(fT.c0[idx[j]], fT.c1[idx[j]]);
      e.lead += (direct - lead[j]).squaredNorm();
      e.full += (direct - full[j]).squaredNorm();
    }
    e.lead = std::sqrt(e.lead * grid.dx());
    e.full = std::sqrt(e.full * grid.dx());
    std::fprintf(stderr, "[AC-7] eps=%.3g: lead error %.4f, full error %.4f\n",
                 eps, e.lead, e.full);
    return e;
  };

  Errors coarse = run_eps(0.01, 8192);
  Errors fine = run_eps(0.005, 16384);
  double ratio_lead = coarse.lead / fine.lead;
  double ratio_full = coarse.full / fine.full;
  Outcome o;
  o.pass = ratio_lead > 0.99 && ratio_lead < 1.84;
  o.detail = fmt(
      "leading-order error %.4f -> %.4f (ratio %.3f, want [0.99, 1.84]); "
      "corrected error %.4f -> %.4f (ratio %.3f, informational)",
      coarse.lead, fine.lead, ratio_lead, coarse.full, fine.full, ratio_full);
  return o;
}

// ---------------------------------------------------------------------------
// AC-8: at constant unit speed the tabulated phase is the free phase
// x xi - t <xi> to tolerance, including its frequency derivative.

Outcome ac8() {
  std::vector<double> times = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::vector<PhaseTables> tabs =
      make_phase_tables(plain_speed(constant_profile(1.0)), times, PhaseMesh{});
  double sup_phi = 0.0, sup_dxi = 0.0;
  for (const PhaseTables& tab : tabs) {
    double t = tab.t();
    for (int i = 0; i <= 40; ++i) {
      double x = -2.0 + 0.1 * i;
      for (int j = 0; j <= 40; ++j) {
        double xi = -10.0 + 0.5 * j;
        double br = std::sqrt(1.0 + xi * xi);
        sup_phi = std::max(sup_phi,
                           std::abs(tab.phi(x, xi) - (x * xi - t * br)));
        sup_dxi = std::max(
            sup_dxi, std::abs(tab.dxi_phi(x, xi) - (x - t * xi / br)));
      }
    }
  }
  Outcome o;
  o.pass = sup_phi < 1e-6 && sup_dxi < 1e-7;
  o.detail = fmt("sup |phi - free| = %.2e (want < 1e-6), sup |d_xi phi - "
                 "free| = %.2e (want < 1e-7)",
                 sup_phi, sup_dxi);
  return o;
}

// ---------------------------------------------------------------------------
// AC-9: honeycomb cone geometry: exact reference values and the strained
// interface speed staying strictly below one whenever the cone-center field
// has curl.

Outcome ac9() {
  HoneycombModel iso;
  Eigen::Vector2d star = dirac_point_reference();
  double omega_res = std::abs(honeycomb_omega(iso, star));
  double beta_res =
      std::abs(honeycomb_beta(iso, star) - 1.5 * std::sqrt(3.0));
  ConeData cone = extract_cone(iso, star);
  double coeff_res =
      std::abs(std::abs(cone.coefficient) - std::sqrt(3.0) / 4.0);

  std::mt19937_64 rng(987);
  std::uniform_real_distribution<double> xdist(-2.0, 2.0);
  const int count = 100;
  int curled = 0;
  bool subluminal = true;
  double max_speed_curled = 0.0;
  for (int i = 0; i < count; ++i) {
    RandomStrain rs = random_strain_field(rng);
    double x1 = xdist(rng);
    double x2 = rs.wall(x1);
    StrainedSpeed sp = edge_speed_strained(rs.field, x1, x2);
    if (sp.speed > 1.0 + 1e-15 || sp.speed <= 0.0) subluminal = false;
    if (sp.dxi_norm > 1e-6) {
      ++curled;
      max_speed_curled = std::max(max_speed_curled, sp.speed);
      if (!(sp.speed < 1.0)) subluminal = false;
    }
  }
  Outcome o;
  o.pass = omega_res < 1e-12 && beta_res < 1e-9 && coeff_res < 1e-6 &&
           subluminal && curled > 0;
  o.detail = fmt(
      "|omega*| = %.1e, |beta* - 3sqrt(3)/2| = %.1e, cone coefficient off by "
      "%.1e; %d/%d curled samples all subluminal (max speed %.6f)",
      omega_res, beta_res, coeff_res, curled, count, max_speed_curled);
  return o;
}

struct Criterion {
  const char* key;
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {"AC-1", "linear normal-form suite", &ac1},
    {"AC-2", "edge packet transport", &ac2},
    {"AC-3", "transverse collapse scaling", &ac3},
    {"AC-4", "magnetic edge speed", &ac4},
    {"AC-5", "traveling envelope accuracy", &ac5},
    {"AC-6", "dispersive mode decay", &ac6},
    {"AC-7", "parametrix consistency", &ac7},
    {"AC-8", "eikonal closed form", &ac8},
    {"AC-9", "honeycomb cone geometry", &ac9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<const Criterion*> selected;
  if (argc <= 1) {
    for (const Criterion& c : kCriteria) selected.push_back(&c);
  } else {
    for (int i = 1; i < argc; ++i) {
      const Criterion* found = nullptr;
      for (const Criterion& c : kCriteria)
        if (std::strcmp(c.key, argv[i]) == 0) found = &c;
      if (!found) {
        std::fprintf(stderr, "unknown criterion '%s' (use AC-1 .. AC-9)\n",
                     argv[i]);
        return 2;
      }
      selected.push_back(found);
    }
  }

  bool all_pass = true;
  for (const Criterion* c : selected) {
    Outcome o;
    try {
      o = c->fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s (%s)\n", c->key, c->name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
