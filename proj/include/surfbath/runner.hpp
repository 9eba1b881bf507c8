#pragma once

#include <string>

namespace surfbath {

// Shared options of every subcommand.  An empty out_path writes the primary
// output to stdout and skips the manifest; otherwise the output goes to
// out_path and a run manifest (configuration echo, conventions, checksums,
// timings) is written next to it as <out_path>.manifest.json.  seedless
// removes run-varying manifest fields (timings) so that reruns are
// byte-identical.
struct RunnerOptions {
  std::string config_path;  // empty: built-in defaults
  std::string out_path;
  std::string format = "csv";  // "csv" or "json"
  int workers = 1;
  bool seedless = false;
};

// Each runner returns a process exit code and reports errors on stderr.
int run_fidelity(const RunnerOptions& opt);
int run_cam(const RunnerOptions& opt);
int run_correlators(const RunnerOptions& opt);
int run_pmap(const RunnerOptions& opt);
int run_estimate(const RunnerOptions& opt, double mu, int coordination);
// Built-in cross-check suite; prints one line per check and returns nonzero
// if any check fails.
int run_validate(const RunnerOptions& opt);

}  // namespace surfbath
