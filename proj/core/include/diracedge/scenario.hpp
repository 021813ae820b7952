#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace diracedge {

// Scenario execution: loads a JSON scenario file, validates it, runs the
// requested task, and writes CSV / JSON / binary artifacts plus a run
// manifest into the output directory.  The schema is documented in the
// top-level README next to the bundled scenario files.
//
// Error contract: malformed JSON and schema violations throw invalid_input
// (parse errors carry file:line:column, semantic errors a JSON-pointer-style
// path); numerical failures propagate as numerical_error.  The command line
// tool maps the two classes to exit codes 2 and 3.
//
// Determinism: with a fixed scenario file (including its seed) and thread
// count, all numeric artifacts (CSV and binary dumps) are reproduced
// bit-for-bit on the same platform; the manifest additionally records wall
// time and is exempt.
struct RunOptions {
  std::filesystem::path scenario_path;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  bool verbose = false;
  // When nonempty, the scenario's declared task must match (the CLI sets this
  // to the subcommand name); a mismatch is a schema error.
  std::string expected_task;
};

struct RunResult {
  std::string name;
  std::string task;
  std::vector<std::filesystem::path> artifacts;  // manifest last
};

RunResult run_scenario(const RunOptions& options);

// Version reported in run manifests and --version.
const char* version_string();

}  // namespace diracedge
