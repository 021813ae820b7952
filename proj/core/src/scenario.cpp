#include "diracedge/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "diracedge/block1d.hpp"
#include "diracedge/dirac2d.hpp"
#include "diracedge/edge_trajectory.hpp"
#include "diracedge/eikonal.hpp"
#include "diracedge/envelope.hpp"
#include "diracedge/expression.hpp"
#include "diracedge/haldane.hpp"
#include "diracedge/io.hpp"
#include "diracedge/linear_reduction.hpp"
#include "diracedge/parametrix.hpp"
#include "diracedge/symbol_invariants.hpp"
#include "diracedge/wavepacket.hpp"

namespace diracedge {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Schema helpers.  Every message carries a JSON-pointer-style path so schema
// failures are actionable without opening the code.

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw invalid_input("scenario schema: " + where + ": " + what);
}

const json& as_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  return j;
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require_member(const json& obj, const std::string& where,
                           const char* key) {
  const json* p = find(obj, key);
  if (!p) fail(where + "/" + key, "required member is missing");
  return *p;
}

double req_number(const json& obj, const std::string& where, const char* key) {
  return as_number(require_member(obj, where, key), where + "/" + key);
}

double opt_number(const json& obj, const std::string& where, const char* key,
                  double fallback) {
  const json* p = find(obj, key);
  return p ? as_number(*p, where + "/" + key) : fallback;
}

int opt_int(const json& obj, const std::string& where, const char* key,
            int fallback) {
  const json* p = find(obj, key);
  return p ? as_int(*p, where + "/" + key) : fallback;
}

std::string req_string(const json& obj, const std::string& where,
                       const char* key) {
  return as_string(require_member(obj, where, key), where + "/" + key);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(where + "/" + it.key(), "unknown member");
  }
}

std::vector<double> number_list(const json& j, const std::string& where) {
  const json& arr = as_array(j, where);
  if (arr.empty()) fail(where, "list must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(as_number(arr[i], where + "/" + std::to_string(i)));
  return out;
}

Eigen::Vector2d vector2(const json& j, const std::string& where) {
  const json& arr = as_array(j, where);
  if (arr.size() != 2) fail(where, "expected exactly two numbers");
  return Eigen::Vector2d(as_number(arr[0], where + "/0"),
                         as_number(arr[1], where + "/1"));
}

PhasePoint phase_point(const json& j, const std::string& where) {
  const json& arr = as_array(j, where);
  if (arr.size() != 4)
    fail(where, "expected four numbers (x1, x2, xi1, xi2)");
  PhasePoint z;
  for (int i = 0; i < 4; ++i)
    z[i] = as_number(arr[static_cast<std::size_t>(i)],
                     where + "/" + std::to_string(i));
  return z;
}

Expression parse_expression(const json& j, const std::string& where) {
  std::string text = as_string(j, where);
  try {
    return Expression::parse(text);
  } catch (const invalid_input& e) {
    fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Model and coefficient construction.

DiracSymbol build_symbol(const json& model, const std::string& where) {
  as_object(model, where);
  std::string kind = req_string(model, where, "kind");
  if (kind == "domain_wall") {
    check_keys(model, where, {"kind", "m"});
    Expression m = parse_expression(require_member(model, where, "m"),
                                    where + "/m");
    return DiracSymbol::domain_wall(
        [m](double x1, double x2) { return m(x1, x2); });
  }
  if (kind == "magnetic") {
    check_keys(model, where, {"kind", "m", "A1", "A2"});
    Expression m = parse_expression(require_member(model, where, "m"),
                                    where + "/m");
    Expression A1 = parse_expression(require_member(model, where, "A1"),
                                     where + "/A1");
    Expression A2 = parse_expression(require_member(model, where, "A2"),
                                     where + "/A2");
    return DiracSymbol::magnetic(
        [m](double x1, double x2) { return m(x1, x2); },
        [A1](double x1, double x2) { return A1(x1, x2); },
        [A2](double x1, double x2) { return A2(x1, x2); });
  }
  if (kind == "linear") {
    check_keys(model, where, {"kind", "C"});
    const json& rows = as_array(require_member(model, where, "C"),
                                where + "/C");
    if (rows.size() != 3) fail(where + "/C", "expected three rows");
    Eigen::Matrix<double, 3, 4> C;
    for (std::size_t r = 0; r < 3; ++r) {
      std::string rw = where + "/C/" + std::to_string(r);
      const json& row = as_array(rows[r], rw);
      if (row.size() != 4) fail(rw, "expected four coefficients");
      for (std::size_t c = 0; c < 4; ++c)
        C(static_cast<int>(r), static_cast<int>(c)) =
            as_number(row[c], rw + "/" + std::to_string(c));
    }
    return DiracSymbol::linear(C);
  }
  if (kind == "strained") {
    check_keys(model, where, {"kind", "anisotropy", "haldane_m", "m"});
    HoneycombModel hm;
    if (const json* a = find(model, "anisotropy"))
      hm.a = vector2(*a, where + "/anisotropy");
    hm.m = opt_number(model, where, "haldane_m", 0.0);
    Expression m = parse_expression(require_member(model, where, "m"),
                                    where + "/m");
    ConeData cone = extract_cone(hm, find_dirac_point(hm));
    StrainField strain = uniform_strain(
        cone, [m](double x1, double x2) { return m(x1, x2); });
    return strained_symbol(strain);
  }
  fail(where + "/kind",
       "unknown model kind '" + kind +
           "' (expected domain_wall, magnetic, linear, or strained)");
}

Profile1D build_profile(const json& j, const std::string& where) {
  as_object(j, where);
  std::string kind = req_string(j, where, "kind");
  if (kind == "constant") {
    check_keys(j, where, {"kind", "c"});
    double c = req_number(j, where, "c");
    if (c <= 0.0) fail(where + "/c", "speed profiles must be positive");
    return constant_profile(c);
  }
  if (kind == "tanh") {
    check_keys(j, where, {"kind", "a", "b"});
    double a = req_number(j, where, "a"), b = req_number(j, where, "b");
    if (a - std::abs(b) <= 0.0)
      fail(where, "tanh profile must stay positive (need a > |b|)");
    return tanh_profile(a, b);
  }
  if (kind == "tanh_reflected") {
    check_keys(j, where, {"kind", "a", "b", "half_width"});
    double a = req_number(j, where, "a"), b = req_number(j, where, "b");
    double w = req_number(j, where, "half_width");
    if (a - std::abs(b) <= 0.0)
      fail(where, "tanh profile must stay positive (need a > |b|)");
    if (w <= 0.0) fail(where + "/half_width", "must be positive");
    return tanh_reflected_profile(a, b, w);
  }
  fail(where + "/kind", "unknown profile kind '" + kind +
                            "' (expected constant, tanh, tanh_reflected)");
}

ScalarField1D build_scalar_field(const json& j, const std::string& where) {
  as_object(j, where);
  std::string kind = req_string(j, where, "kind");
  if (kind == "zero") {
    check_keys(j, where, {"kind"});
    return zero_field();
  }
  if (kind == "constant") {
    check_keys(j, where, {"kind", "c"});
    return constant_field(req_number(j, where, "c"));
  }
  fail(where + "/kind",
       "unknown field kind '" + kind + "' (expected zero, constant)");
}

ModelCoefficients build_coefficients(const json& j, const std::string& where) {
  as_object(j, where);
  check_keys(j, where, {"lambda", "mu", "s"});
  ModelCoefficients mc;
  mc.lambda = build_profile(require_member(j, where, "lambda"),
                            where + "/lambda");
  if (const json* mu = find(j, "mu"))
    mc.mu = build_scalar_field(*mu, where + "/mu");
  if (const json* s = find(j, "s")) {
    ScalarField1D f = build_scalar_field(*s, where + "/s");
    mc.s = f.value;
  }
  return mc;
}

// ---------------------------------------------------------------------------
// Numerical block.

struct NumericalBlock {
  std::vector<double> h{0.02};
  double L1 = 4.0, L2 = 4.0;
  int n1 = 256, n2 = 256;
  double dt = 0.0;
  double T = 0.5;
  int snapshots = 0;
  std::vector<int> n_modes{1};
  std::vector<double> times;
};

NumericalBlock parse_numerical(const json* j, const std::string& where) {
  NumericalBlock nb;
  if (!j) return nb;
  as_object(*j, where);
  check_keys(*j, where, {"h", "grid", "dt", "T", "snapshots", "n", "times"});
  if (const json* h = find(*j, "h")) {
    nb.h = number_list(*h, where + "/h");
    for (double v : nb.h)
      if (!(v > 0.0 && v < 1.0))
        fail(where + "/h", "entries must lie in (0, 1)");
  }
  if (const json* g = find(*j, "grid")) {
    std::string gw = where + "/grid";
    as_object(*g, gw);
    check_keys(*g, gw, {"L1", "L2", "n1", "n2"});
    nb.L1 = opt_number(*g, gw, "L1", nb.L1);
    nb.L2 = opt_number(*g, gw, "L2", nb.L2);
    nb.n1 = opt_int(*g, gw, "n1", nb.n1);
    nb.n2 = opt_int(*g, gw, "n2", nb.n2);
    if (nb.L1 <= 0.0 || nb.L2 <= 0.0) fail(gw, "box lengths must be positive");
    auto pow2 = [](int n) { return n > 0 && (n & (n - 1)) == 0; };
    if (!pow2(nb.n1) || !pow2(nb.n2))
      fail(gw, "point counts must be powers of two");
  }
  nb.dt = opt_number(*j, where, "dt", 0.0);
  if (nb.dt < 0.0) fail(where + "/dt", "time step must be nonnegative");
  nb.T = opt_number(*j, where, "T", nb.T);
  if (nb.T < 0.0) fail(where + "/T", "final time must be nonnegative");
  nb.snapshots = opt_int(*j, where, "snapshots", 0);
  if (nb.snapshots < 0 || nb.snapshots > 50)
    fail(where + "/snapshots", "snapshot count must lie in [0, 50]");
  if (const json* n = find(*j, "n")) {
    const json& arr = as_array(*n, where + "/n");
    nb.n_modes.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      int v = as_int(arr[i], where + "/n/" + std::to_string(i));
      if (v < 1) fail(where + "/n", "mode indices must be >= 1");
      nb.n_modes.push_back(v);
    }
    if (nb.n_modes.empty()) fail(where + "/n", "list must not be empty");
  }
  if (const json* t = find(*j, "times")) {
    nb.times = number_list(*t, where + "/times");
    for (double v : nb.times)
      if (v <= 0.0) fail(where + "/times", "entries must be positive");
    if (!std::is_sorted(nb.times.begin(), nb.times.end()))
      fail(where + "/times", "entries must be sorted ascending");
  }
  return nb;
}

// ---------------------------------------------------------------------------
// Packet block.

struct PacketBlock {
  Eigen::Vector2d center = Eigen::Vector2d(-0.5, 0.0);
  Eigen::Vector2d momentum = Eigen::Vector2d::Zero();
  std::string line = "minus";
  double width = 1.0;
  Eigen::Vector2d components = Eigen::Vector2d(1.0, 0.0);
};

PacketBlock parse_packet(const json* j, const std::string& where) {
  PacketBlock pb;
  if (!j) return pb;
  as_object(*j, where);
  check_keys(*j, where, {"center", "momentum", "line", "width", "components"});
  if (const json* c = find(*j, "center"))
    pb.center = vector2(*c, where + "/center");
  if (const json* m = find(*j, "momentum"))
    pb.momentum = vector2(*m, where + "/momentum");
  if (const json* l = find(*j, "line")) {
    pb.line = as_string(*l, where + "/line");
    if (pb.line != "minus" && pb.line != "plus")
      fail(where + "/line", "expected 'minus' or 'plus'");
  }
  pb.width = opt_number(*j, where, "width", 1.0);
  if (pb.width <= 0.0) fail(where + "/width", "width must be positive");
  if (const json* c = find(*j, "components"))
    pb.components = vector2(*c, where + "/components");
  if (pb.components.norm() == 0.0)
    fail(where + "/components", "component vector must be nonzero");
  return pb;
}

// ---------------------------------------------------------------------------
// Small shared pieces.

std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

json vec2_json(const Eigen::Vector2d& v) { return json::array({v[0], v[1]}); }

json complex_json(const complex& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

void write_json_artifact(const fs::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

// Least-squares slope of y against t.
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

// ---------------------------------------------------------------------------
// Task runners.  Each returns the artifact list (relative to out_dir).

struct TaskContext {
  const json& scenario;
  NumericalBlock numerical;
  fs::path out_dir;
  std::string prefix;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool verbose = false;

  fs::path artifact(const std::string& suffix) const {
    return out_dir / (prefix + suffix);
  }
  void note(const std::string& line) const {
    if (verbose) std::fprintf(stderr, "[dirac-edge] %s\n", line.c_str());
  }
};

std::vector<fs::path> run_analyze(const TaskContext& ctx) {
  DiracSymbol sym = build_symbol(
      require_member(ctx.scenario, "", "model"), "/model");
  PhasePoint guess = phase_point(
      require_member(ctx.scenario, "", "point"), "/point");
  PhasePoint z = find_crossing(sym, guess);
  auto lines = eigenlines(sym, z);
  Eigen::Vector4d V = edge_vector_field(sym, z);
  TransversalityReport tr = check_transversality(sym, z);

  json report;
  report["units"] = "dimensionless model units";
  report["crossing_point"] = json::array({z[0], z[1], z[2], z[3]});
  Eigen::Vector3d p = sym.p(z);
  report["component_residual"] = p.cwiseAbs().maxCoeff();
  report["lambda"] = lambda_gap(sym, z);
  report["transversal"] = tr.satisfied;
  report["jacobian_min_singular_value"] = tr.min_singular_value;
  report["edge_field"] = json::array({V[0], V[1], V[2], V[3]});
  report["speed"] = predicted_speed(sym, z);
  report["line_minus"] = json::array({complex_json(lines.first.direction[0]),
                                      complex_json(lines.first.direction[1])});
  report["line_plus"] = json::array({complex_json(lines.second.direction[0]),
                                     complex_json(lines.second.direction[1])});
  fs::path out = ctx.artifact("-analysis.json");
  write_json_artifact(out, report);
  return {out};
}

std::vector<fs::path> run_reduce(const TaskContext& ctx) {
  int count = 1;
  bool suite = false;
  if (const json* s = find(ctx.scenario, "suite")) {
    as_object(*s, "/suite");
    check_keys(*s, "/suite", {"count"});
    count = opt_int(*s, "/suite", "count", 200);
    if (count < 1) fail("/suite/count", "must be >= 1");
    suite = true;
  }
  if (!suite && !find(ctx.scenario, "model"))
    fail("/model", "reduce needs either a linear model or a suite block");

  std::mt19937_64 rng(ctx.seed);
  CsvWriter csv(ctx.artifact("-residuals.csv"),
                {"index", "lambda", "symbol_residual", "symplectic_residual",
                 "det_residual", "lambda_residual"});
  NormalFormReport worst;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < count; ++i) {
    Eigen::Matrix<double, 3, 4> C;
    if (suite) {
      C = random_crossing_symbol(rng);
    } else {
      DiracSymbol sym = build_symbol(
          require_member(ctx.scenario, "", "model"), "/model");
      if (sym.kind() != DiracSymbol::Kind::linear)
        fail("/model/kind", "reduce requires a linear model");
      C = sym.linear_coefficients();
    }
    LinearReduction red = reduce_linear_symbol(C);
    NormalFormReport rep = verify_normal_form(C, red);
    csv.row({double(i), red.lambda, rep.symbol_residual,
             rep.symplectic_residual, rep.det_residual, rep.lambda_residual});
    worst.symbol_residual = std::max(worst.symbol_residual, rep.symbol_residual);
    worst.symplectic_residual =
        std::max(worst.symplectic_residual, rep.symplectic_residual);
    worst.det_residual = std::max(worst.det_residual, rep.det_residual);
    worst.lambda_residual =
        std::max(worst.lambda_residual, rep.lambda_residual);
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  json summary;
  summary["units"] = "dimensionless model units";
  summary["count"] = count;
  summary["max_symbol_residual"] = worst.symbol_residual;
  summary["max_symplectic_residual"] = worst.symplectic_residual;
  summary["max_det_residual"] = worst.det_residual;
  summary["max_lambda_residual"] = worst.lambda_residual;
  summary["elapsed_ms"] = ms;
  fs::path sp = ctx.artifact("-summary.json");
  write_json_artifact(sp, summary);
  return {ctx.artifact("-residuals.csv"), sp};
}

std::vector<fs::path> run_edge_trace(const TaskContext& ctx) {
  DiracSymbol sym = build_symbol(
      require_member(ctx.scenario, "", "model"), "/model");
  PhasePoint z0 = phase_point(
      require_member(ctx.scenario, "", "point"), "/point");
  double T = ctx.numerical.T;
  double dt = ctx.numerical.dt > 0.0 ? ctx.numerical.dt : T / 2000.0;
  EdgeTrajectory traj = integrate_edge_ode(sym, z0, T, dt);

  CsvWriter csv(ctx.artifact("-trajectory.csv"),
                {"t", "x1", "x2", "xi1", "xi2", "lambda", "rho", "nu",
                 "phase"});
  std::size_t stride =
      std::max<std::size_t>(1, traj.samples.size() / 2000);
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.samples.size()) continue;
    const EdgeSample& s = traj.samples[i];
    csv.row({s.t, s.z[0], s.z[1], s.z[2], s.z[3], s.lambda, s.rho, s.nu,
             s.phase});
  }

  const EdgeSample& last = traj.samples.back();
  json summary;
  summary["units"] = "dimensionless model units";
  summary["initial_speed"] = predicted_speed(sym, traj.samples.front().z);
  summary["final_point"] =
      json::array({last.z[0], last.z[1], last.z[2], last.z[3]});
  summary["final_rho"] = last.rho;
  summary["final_nu"] = last.nu;
  summary["final_phase"] = last.phase;
  fs::path sp = ctx.artifact("-summary.json");
  write_json_artifact(sp, summary);
  return {ctx.artifact("-trajectory.csv"), sp};
}

std::vector<fs::path> run_envelope(const TaskContext& ctx) {
  ModelCoefficients mc = build_coefficients(
      require_member(ctx.scenario, "", "coefficients"), "/coefficients");
  double T = ctx.numerical.T;
  double lam0 = mc.lambda.value(0.0);

  // Front trajectory dx/dt = lambda(x) from the origin, accumulating the
  // envelope data nu = int mu/rho^2 and phase = int s with rho = lambda/lam0.
  double x = 0.0, nu = 0.0, phase = 0.0;
  int steps = 2000;
  double dt = T / steps;
  auto rhs = [&](double xa, double& dx, double& dnu, double& dph) {
    double lam = mc.lambda.value(xa);
    double rho = lam / lam0;
    dx = lam;
    dnu = mc.mu.value ? mc.mu.value(xa) / (rho * rho) : 0.0;
    dph = mc.s ? mc.s(xa) : 0.0;
  };
  for (int i = 0; i < steps; ++i) {
    double k1x, k1n, k1p, k2x, k2n, k2p, k3x, k3n, k3p, k4x, k4n, k4p;
    rhs(x, k1x, k1n, k1p);
    rhs(x + 0.5 * dt * k1x, k2x, k2n, k2p);
    rhs(x + 0.5 * dt * k2x, k3x, k3n, k3p);
    rhs(x + dt * k3x, k4x, k4n, k4p);
    x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    nu += dt / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
    phase += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
  }
  double rho = mc.lambda.value(x) / lam0;

  // Gaussian initial envelope, evolved by the exact frequency-space update.
  PacketBlock pb = parse_packet(find(ctx.scenario, "packet"), "/packet");
  Envelope1D a0;
  a0.length = ctx.numerical.L1;
  a0.a.resize(static_cast<std::size_t>(ctx.numerical.n1));
  double w = pb.width;
  for (std::size_t j = 0; j < a0.a.size(); ++j) {
    double y = a0.x(j);
    a0.a[j] = std::pow(pi, -0.25) / std::sqrt(w) *
              std::exp(-y * y / (2.0 * w * w));
  }
  Envelope1D at = evolve_envelope(a0, rho, nu, phase);

  CsvWriter csv(ctx.artifact("-envelope.csv"), {"y", "re", "im", "abs"});
  for (std::size_t j = 0; j < at.a.size(); ++j)
    csv.row({at.x(j), at.a[j].real(), at.a[j].imag(), std::abs(at.a[j])});

  json summary;
  summary["units"] = "dimensionless model units";
  summary["T"] = T;
  summary["front_position"] = x;
  summary["front_position_closed_form"] =
      lambda_antiderivative_inverse(mc.lambda, T);
  summary["rho"] = rho;
  summary["nu"] = nu;
  summary["phase"] = phase;
  summary["norm_initial"] = std::sqrt(a0.squared_norm());
  summary["norm_final"] = std::sqrt(at.squared_norm());
  fs::path sp = ctx.artifact("-summary.json");
  write_json_artifact(sp, summary);
  return {ctx.artifact("-envelope.csv"), sp};
}

std::vector<fs::path> run_evolve(const TaskContext& ctx) {
  DiracSymbol sym = build_symbol(
      require_member(ctx.scenario, "", "model"), "/model");
  PacketBlock pb = parse_packet(find(ctx.scenario, "packet"), "/packet");
  const NumericalBlock& nb = ctx.numerical;
  Grid2 grid(nb.L1, nb.L2, nb.n1, nb.n2);

  std::vector<fs::path> artifacts;
  CsvWriter speed_csv(ctx.artifact("-speed.csv"),
                      {"h", "v1", "v2", "speed"});
  json summary;
  summary["units"] = "dimensionless model units";
  json runs = json::array();

  for (std::size_t ih = 0; ih < nb.h.size(); ++ih) {
    double h = nb.h[ih];
    std::string tag = "-h" + std::to_string(ih);
    ctx.note("evolve: h = " + format_double(h));

    PhasePoint z0;
    z0 << pb.center[0], pb.center[1], pb.momentum[0], pb.momentum[1];
    auto lines = eigenlines(sym, z0);
    WavepacketSpec spec;
    spec.h = h;
    spec.center = pb.center;
    spec.momentum = pb.momentum;
    spec.orientation =
        (pb.line == "minus") ? lines.first.direction : lines.second.direction;
    double w = pb.width;
    spec.envelope = [w](double y1, double y2) {
      return complex(std::exp(-(y1 * y1 + y2 * y2) / (2.0 * w * w)) /
                         (w * std::sqrt(pi)),
                     0.0);
    };

    DiracEvolver2D evolver(grid, h, sym, ctx.threads);
    SpinorField psi0 = synthesize_wavepacket(grid, spec);
    Evolve2DOptions opt;
    opt.dt = nb.dt;
    opt.snapshot_count = nb.snapshots;
    Evolution2DResult res = evolver.evolve(psi0, nb.T, opt);

    fs::path obs_path = ctx.artifact(tag + "-observables.csv");
    CsvWriter obs(obs_path,
                  {"t", "mass", "linf", "centroid1", "centroid2",
                   "interface_fraction", "minus_fraction", "plus_fraction"});
    for (const Observables2D& o : res.series)
      obs.row({o.t, o.mass, o.linf, o.centroid[0], o.centroid[1],
               o.interface_fraction, o.minus_fraction, o.plus_fraction});
    artifacts.push_back(obs_path);

    for (std::size_t k = 0; k < res.snapshots.size(); ++k) {
      fs::path snap = ctx.artifact(tag + "-snap" + std::to_string(k) +
                                   ".deb1");
      write_spinor_dump(snap, res.snapshots[k], h, res.snapshot_times[k]);
      artifacts.push_back(snap);
    }

    Eigen::Vector2d v = fit_velocity(res.series);
    speed_csv.row({h, v[0], v[1], v.norm()});

    json run;
    run["h"] = h;
    run["dt"] = res.dt;
    run["steps"] = res.steps;
    run["speed"] = v.norm();
    run["velocity"] = vec2_json(v);
    run["mass_initial"] = res.series.front().mass;
    run["mass_final"] = res.series.back().mass;
    run["mass_drift"] = std::abs(res.series.back().mass -
                                 res.series.front().mass) /
                        res.series.front().mass;
    run["linf_final"] = res.series.back().linf;
    runs.push_back(run);
  }
  summary["runs"] = runs;
  fs::path sp = ctx.artifact("-summary.json");
  write_json_artifact(sp, summary);
  artifacts.insert(artifacts.begin(), ctx.artifact("-speed.csv"));
  artifacts.push_back(sp);
  return artifacts;
}

std::vector<fs::path> run_model_dispersion(const TaskContext& ctx) {
  ModelCoefficients mc = build_coefficients(
      require_member(ctx.scenario, "", "coefficients"), "/coefficients");
  const NumericalBlock& nb = ctx.numerical;
  if (nb.h.size() != 1)
    fail("/numerical/h", "model-dispersion expects exactly one value (eps)");
  double eps = nb.h[0];
  std::vector<double> times = nb.times;
  if (times.empty())
    times = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};

  double half = 0.5 * nb.L1;
  if (half > 2.9)
    fail("/numerical/grid/L1",
         "dispersion scans are tabulated on [-L1/2, L1/2]; L1 must be <= 5.8 "
         "so the characteristic tables cover the mesh");
  PhaseMesh mesh;
  mesh.x_min = -half - 0.1;
  mesh.x_max = half + 0.1;
  PacketBlock pb = parse_packet(find(ctx.scenario, "packet"), "/packet");
  Eigen::Vector2d dir = pb.components.normalized();
  double w = pb.width;
  auto ahat = [dir, w](double xi) -> Eigen::Vector2cd {
    double g = std::sqrt(2.0) * std::pow(pi, 0.25) * std::sqrt(w) *
               std::exp(-0.5 * w * w * xi * xi);
    return Eigen::Vector2cd(complex(g * dir[0], 0.0),
                            complex(g * dir[1], 0.0));
  };

  ctx.note("model-dispersion: building phase tables for " +
           std::to_string(times.size()) + " times");
  std::vector<double> all_times = times;
  all_times.insert(all_times.begin(), 0.0);
  std::vector<PhaseTables> tables = make_phase_tables(mc, all_times, mesh);
  const PhaseTables& at0 = tables.front();

  std::vector<double> xs(static_cast<std::size_t>(nb.n1));
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = -half + (2.0 * half) * double(i) / double(xs.size());

  CsvWriter csv(ctx.artifact("-dispersion.csv"),
                {"n", "t", "sup_abs", "sup_abs_sqrt_t", "mass",
                 "mass_outside_cone"});
  json summary;
  summary["units"] = "dimensionless model units";
  json per_n = json::array();
  for (int n : nb.n_modes) {
    double lo = 1e300, hi = 0.0;
    for (std::size_t it = 0; it < times.size(); ++it) {
      const PhaseTables& att = tables[it + 1];
      DispersiveWaveSpec spec;
      spec.n = n;
      spec.eps = eps;
      spec.ahat = ahat;
      std::vector<Eigen::Vector2cd> field =
          superpose_wkb(att, at0, spec, xs, ctx.threads);
      double sup = 0.0, mass = 0.0, outside = 0.0;
      double margin = 3.0 * std::sqrt(eps);
      double dx = xs[1] - xs[0];
      for (std::size_t i = 0; i < xs.size(); ++i) {
        double a = field[i].norm();
        sup = std::max(sup, a);
        mass += a * a * dx;
        if (xs[i] < att.x_minus() - margin || xs[i] > att.x_plus() + margin)
          outside += a * a * dx;
      }
      double scaled = sup * std::sqrt(times[it]);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
      csv.row({double(n), times[it], sup, scaled, mass,
               mass > 0.0 ? outside / mass : 0.0});
    }
    json jn;
    jn["n"] = n;
    jn["sup_sqrt_t_min"] = lo;
    jn["sup_sqrt_t_max"] = hi;
    jn["sup_sqrt_t_ratio"] = lo > 0.0 ? hi / lo : 0.0;
    per_n.push_back(jn);
  }
  summary["eps"] = eps;
  summary["per_n"] = per_n;
  fs::path sp = ctx.artifact("-summary.json");
  write_json_artifact(sp, summary);
  return {ctx.artifact("-dispersion.csv"), sp};
}

std::vector<fs::path> run_haldane(const TaskContext& ctx) {
  const json* hb = find(ctx.scenario, "haldane");
  std::string hw = "/haldane";
  HoneycombModel model;
  int resolution = 64;
  int sweep_count = 100;
  if (hb) {
    as_object(*hb, hw);
    check_keys(*hb, hw, {"anisotropy", "m", "band_resolution", "sweep"});
    if (const json* a = find(*hb, "anisotropy"))
      model.a = vector2(*a, hw + "/anisotropy");
    model.m = opt_number(*hb, hw, "m", 0.0);
    resolution = opt_int(*hb, hw, "band_resolution", 64);
    if (resolution < 2 || resolution > 2048)
      fail(hw + "/band_resolution", "must lie in [2, 2048]");
    if (const json* s = find(*hb, "sweep")) {
      as_object(*s, hw + "/sweep");
      check_keys(*s, hw + "/sweep", {"count"});
      sweep_count = opt_int(*s, hw + "/sweep", "count", 100);
      if (sweep_count < 0) fail(hw + "/sweep/count", "must be >= 0");
    }
  }

  double res_lattice = 0.0, res_cartesian = 0.0;
  MomentumConvention conv =
      resolve_momentum_convention(&res_lattice, &res_cartesian);
  Eigen::Vector2d xi_a = find_dirac_point(model);
  ConeData cone = extract_cone(model, xi_a);

  json report;
  report["units"] = "lattice momentum (phase per generator); Cartesian cone "
                    "frame under the half-vector embedding";
  report["convention"] = conv == MomentumConvention::lattice_coordinates
                             ? "lattice_coordinates"
                             : "cartesian";
  report["convention_residual_lattice"] = res_lattice;
  report["convention_residual_cartesian"] = res_cartesian;
  report["dirac_point"] = vec2_json(cone.xi);
  report["omega_abs"] = cone.omega_abs;
  report["beta_at_reference"] =
      honeycomb_beta(model, dirac_point_reference());
  report["grad"] = json::array(
      {complex_json(cone.grad[0]), complex_json(cone.grad[1])});
  report["alpha1"] = vec2_json(cone.alpha1);
  report["alpha2"] = vec2_json(cone.alpha2);
  report["cone_coefficient"] = complex_json(cone.coefficient);
  report["cone_coefficient_conj"] = complex_json(cone.coefficient_conj);
  report["mass_coefficient"] = cone.mass_coefficient;
  report["frame_condition"] = cone.frame_condition;

  CsvWriter bands(ctx.artifact("-bands.csv"),
                  {"xi1", "xi2", "e_minus", "e_plus"});
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      Eigen::Vector2d xi(2.0 * pi * i / resolution,
                         2.0 * pi * j / resolution);
      auto [lo, hi] = band_energies(model, xi);
      bands.row({xi[0], xi[1], lo, hi});
    }

  std::vector<fs::path> artifacts{ctx.artifact("-bands.csv")};
  if (sweep_count > 0) {
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0);
    CsvWriter sweep(ctx.artifact("-sweep.csv"),
                    {"index", "x1", "x2", "dxi_norm", "speed"});
    int below = 0;
    double min_speed = 1.0, max_speed = 0.0;
    for (int i = 0; i < sweep_count; ++i) {
      RandomStrain rs = random_strain_field(rng);
      double x1 = xdist(rng);
      double x2 = rs.wall(x1);
      StrainedSpeed sp = edge_speed_strained(rs.field, x1, x2);
      sweep.row({double(i), x1, x2, sp.dxi_norm, sp.speed});
      if (sp.speed < 1.0) ++below;
      min_speed = std::min(min_speed, sp.speed);
      max_speed = std::max(max_speed, sp.speed);
    }
    report["sweep"] = json{{"count", sweep_count},
                           {"below_one", below},
                           {"min_speed", min_speed},
                           {"max_speed", max_speed}};
    artifacts.push_back(ctx.artifact("-sweep.csv"));
  }

  fs::path cp = ctx.artifact("-cone.json");
  write_json_artifact(cp, report);
  artifacts.push_back(cp);
  return artifacts;
}

}  // namespace

const char* version_string() { return "0.1.0"; }

RunResult run_scenario(const RunOptions& options) {
  std::string text = read_text_file(options.scenario_path);
  json scenario;
  try {
    scenario = json::parse(text);
  } catch (const json::parse_error& e) {
    // Convert the byte offset to line:column for the diagnostic.
    std::size_t line = 1, col = 1;
    std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 <= limit && i < text.size(); ++i) {
      if (i + 1 == limit) break;
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw invalid_input("scenario parse: " + options.scenario_path.string() +
                        ":" + std::to_string(line) + ":" +
                        std::to_string(col) + ": " + e.what());
  }

  as_object(scenario, "");
  check_keys(scenario, "",
             {"name", "task", "seed", "model", "coefficients", "numerical",
              "packet", "suite", "point", "haldane", "output"});
  std::string name = req_string(scenario, "", "name");
  if (name.empty() ||
      name.find_first_not_of("abcdefghijklmnopqrstuvwxyz"
                             "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-") !=
          std::string::npos)
    fail("/name", "must be nonempty [A-Za-z0-9_-]+ (it names the artifacts)");
  std::string task = req_string(scenario, "", "task");
  if (!options.expected_task.empty() && task != options.expected_task)
    fail("/task", "scenario declares task '" + task +
                      "' but the command line requested '" +
                      options.expected_task + "'");

  TaskContext ctx{scenario,
                  parse_numerical(find(scenario, "numerical"), "/numerical"),
                  options.out_dir,
                  name,
                  0,
                  options.threads == 0 ? 1 : options.threads,
                  options.verbose};
  if (const json* s = find(scenario, "seed")) {
    if (!s->is_number_unsigned()) fail("/seed", "expected a nonnegative integer");
    ctx.seed = s->get<std::uint64_t>();
  }
  if (const json* o = find(scenario, "output")) {
    as_object(*o, "/output");
    check_keys(*o, "/output", {"prefix"});
    ctx.prefix = req_string(*o, "/output", "prefix");
    if (ctx.prefix.empty()) fail("/output/prefix", "must be nonempty");
  }

  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec)
    throw invalid_input("cannot create output directory '" +
                        options.out_dir.string() + "': " + ec.message());

  auto t0 = std::chrono::steady_clock::now();
  std::vector<fs::path> artifacts;
  if (task == "analyze")
    artifacts = run_analyze(ctx);
  else if (task == "reduce")
    artifacts = run_reduce(ctx);
  else if (task == "edge-trace")
    artifacts = run_edge_trace(ctx);
  else if (task == "envelope")
    artifacts = run_envelope(ctx);
  else if (task == "evolve")
    artifacts = run_evolve(ctx);
  else if (task == "model-dispersion")
    artifacts = run_model_dispersion(ctx);
  else if (task == "haldane")
    artifacts = run_haldane(ctx);
  else
    fail("/task", "unknown task '" + task +
                      "' (expected analyze, reduce, edge-trace, envelope, "
                      "evolve, model-dispersion, haldane)");
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  json manifest;
  manifest["tool"] = "dirac-edge";
  manifest["version"] = version_string();
  manifest["scenario"] = name;
  manifest["task"] = task;
  manifest["scenario_hash"] = hash_string(fnv1a64(text));
  manifest["seed"] = ctx.seed;
  manifest["threads"] = ctx.threads;
  manifest["wall_time_ms"] = ms;
  json names = json::array();
  for (const fs::path& a : artifacts) names.push_back(a.filename().string());
  manifest["artifacts"] = names;
  fs::path mp = ctx.artifact("-manifest.json");
  write_json_artifact(mp, manifest);
  artifacts.push_back(mp);

  RunResult result;
  result.name = name;
  result.task = task;
  result.artifacts = std::move(artifacts);
  return result;
}

}  // namespace diracedge
