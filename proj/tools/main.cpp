// dirac-edge: command line driver for the edge-transport analysis library.
//
// Each subcommand runs one scenario task and writes its artifacts (CSV, JSON,
// binary field dumps, and a run manifest) into the output directory.  Exit
// codes: 0 success, 2 malformed scenario or command line, 3 numerical
// failure.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "diracedge/common.hpp"
#include "diracedge/scenario.hpp"

namespace {

unsigned resolve_threads(int from_cli) {
  if (from_cli > 0) return static_cast<unsigned>(from_cli);
  if (const char* env = std::getenv("DIRAC_EDGE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
    std::fprintf(stderr,
                 "warning: ignoring DIRAC_EDGE_THREADS='%s' (expected an "
                 "integer in [1, 1024])\n",
                 env);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dirac-edge: geometric analysis and numerical experiments for "
      "two-band crossing models"};
  app.set_version_flag("--version",
                       std::string("dirac-edge ") + diracedge::version_string());
  app.require_subcommand(1);

  struct SubSpec {
    const char* name;
    const char* help;
  };
  const SubSpec subs[] = {
      {"analyze", "Locate a symbol crossing and report its invariants"},
      {"reduce", "Run linear normal-form reductions and report residuals"},
      {"edge-trace", "Integrate the edge transport system along a crossing"},
      {"envelope", "Evolve a traveling-mode envelope along a front"},
      {"evolve", "Direct two-dimensional wavepacket evolution"},
      {"model-dispersion", "Dispersive decay scan for the model operators"},
      {"haldane", "Tight-binding honeycomb lab: cones, bands, strain sweeps"},
  };

  std::string scenario;
  std::string out_dir = ".";
  int threads = 0;
  bool verbose = false;
  std::string chosen;

  for (const SubSpec& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--scenario", scenario, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir,
                    "Output directory (created if missing; default '.')");
    sub->add_option("--threads", threads,
                    "Worker threads (default: DIRAC_EDGE_THREADS, else 1)")
        ->check(CLI::Range(1, 1024));
    sub->add_flag("--verbose", verbose, "Progress notes on stderr");
    sub->callback([&chosen, name = std::string(s.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0, usage errors exit 2
  }

  diracedge::RunOptions options;
  options.scenario_path = scenario;
  options.out_dir = out_dir;
  options.threads = resolve_threads(threads);
  options.verbose = verbose;
  options.expected_task = chosen;

  try {
    diracedge::RunResult result = diracedge::run_scenario(options);
    for (const auto& a : result.artifacts)
      std::printf("wrote %s\n", a.string().c_str());
    return 0;
  } catch (const diracedge::invalid_input& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const diracedge::numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
}
