#include <string>

#include "CLI11.hpp"
#include "surfbath/runner.hpp"
#include "surfbath/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"surface-layout fidelity and critical-point toolkit"};
  app.set_version_flag("--version", std::string(surfbath::kVersion));
  app.require_subcommand(1);

  surfbath::RunnerOptions opt;
  double mu = 2.64;
  int coordination = 4;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out_path,
                    "output file (default: stdout); a run manifest is written "
                    "next to it");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--seedless", opt.seedless,
                  "omit run-varying fields from the manifest");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", opt.workers, "worker threads")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* fidelity = app.add_subcommand(
      "fidelity",
      "class sums and fidelity over an inverse-temperature sweep");
  add_config(fidelity);
  add_output(fidelity);
  add_workers(fidelity);

  CLI::App* cam = app.add_subcommand(
      "cam",
      "finite-cluster critical points with infinite-size extrapolation");
  add_config(cam);
  add_output(cam);
  add_workers(cam);

  CLI::App* correlators = app.add_subcommand(
      "correlators",
      "bath correlator kernels and couplings over a separation grid");
  add_config(correlators);
  add_output(correlators);

  CLI::App* pmap = app.add_subcommand(
      "pmap", "single-qubit flip probability over an inverse-temperature "
              "sweep");
  add_config(pmap);
  add_output(pmap);

  CLI::App* estimate = app.add_subcommand(
      "estimate", "closed-form critical estimates from excitation counting");
  add_output(estimate);
  estimate->add_option("--mu", mu, "effective branching number");
  estimate->add_option("--coordination", coordination,
                       "lattice coordination number")
      ->check(CLI::PositiveNumber);

  CLI::App* validate =
      app.add_subcommand("validate", "run the built-in cross-check suite");
  add_workers(validate);

  CLI11_PARSE(app, argc, argv);

  if (fidelity->parsed()) return surfbath::run_fidelity(opt);
  if (cam->parsed()) return surfbath::run_cam(opt);
  if (correlators->parsed()) return surfbath::run_correlators(opt);
  if (pmap->parsed()) return surfbath::run_pmap(opt);
  if (estimate->parsed()) return surfbath::run_estimate(opt, mu, coordination);
  if (validate->parsed()) return surfbath::run_validate(opt);
  return 1;
}
